"""Population generators for validation and the convergence benchmark."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import Landscape, MeasureSpec, Population, make_population, uniform_population
from .measures import DiversitySeries, evaluate, nmdf

CASES_LANDSCAPE = Landscape.cube(-1.0, 1.0, 2)
BENCH_LANDSCAPE = Landscape.cube(0.0, 1.0, 2)
CLUSTER_CASES = (2, 3, 4, 5)


@dataclass(frozen=True)
class FrozenCaseSpec:
    case_id: int
    optima_count: int = 2
    N: int = 100
    landscape: Landscape = CASES_LANDSCAPE

    def __post_init__(self):
        if self.case_id not in range(1, 8):
            raise ValueError(f"case must be in 1..7, got {self.case_id}")
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.case_id in CLUSTER_CASES:
            if self.optima_count not in (2, 4):
                raise ValueError(f"cases 2-5 take 2 or 4 optima, got {self.optima_count}")
            if self.optima_count == 4 and self.landscape.n != 2:
                raise ValueError("the 4-optima layout is defined on a 2-D landscape only")


def _case_optima(spec: FrozenCaseSpec) -> np.ndarray:
    land = spec.landscape
    c = land.center
    reach = land.widths / 2.0
    if spec.case_id in (2, 3):
        reach = reach / 2.0
    if spec.optima_count == 2:
        signs = np.array([[-1.0] * land.n, [1.0] * land.n])
    else:
        signs = np.array([[-1.0, -1.0], [1.0, -1.0], [-1.0, 1.0], [1.0, 1.0]])
    return c + signs * reach


def _case_counts(spec: FrozenCaseSpec) -> list[int]:
    N, k = spec.N, spec.optima_count
    if spec.case_id in (2, 4):
        if N % k:
            raise ValueError(f"N={N} cannot be split equally over {k} optima")
        return [N // k] * k
    if (7 * N) % 10:
        raise ValueError(f"70% of N={N} is not an integer")
    major = 7 * N // 10
    rest = N - major
    if rest % (k - 1):
        raise ValueError(f"the remaining {rest} individuals cannot be split over {k - 1} optima")
    return [major] + [rest // (k - 1)] * (k - 1)


def frozen_case(spec: FrozenCaseSpec) -> Population:
    """Deterministic population for one of the seven frozen diversity cases.

    Cases 2-5 put individuals on optima at the half-way points between the
    centre and the corners (2, 3) or on the corners themselves (4, 5); even
    cases split N equally, odd ones give 70% to the most negative optimum.
    """
    land = spec.landscape
    N = spec.N
    if spec.case_id == 1:
        return Population(np.tile(land.center, (N, 1)), land)
    if spec.case_id in CLUSTER_CASES:
        optima = _case_optima(spec)
        counts = _case_counts(spec)
        return Population(np.repeat(optima, counts, axis=0), land)
    if spec.case_id == 6:
        if N == 1:
            return Population(land.lower[None, :], land)
        steps = [np.linspace(lo, hi, N) for lo, hi in land.bounds]
        return Population(np.stack(steps, axis=1), land)
    return uniform_population(land, N)


REDUCED_LANDSCAPE = Landscape.cube(0.0, 1.0, 2)
REDUCED_CORNERS = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))


def reduced_arrangement(x5_hat: float) -> tuple[Population, Population]:
    """Return ``(P5, P4)``: four unit-square corners, plus a fifth individual at ``(t, t)``."""
    if not 0.0 <= x5_hat <= 1.0:
        raise ValueError(f"x5_hat must lie in [0, 1], got {x5_hat}")
    p4 = make_population(REDUCED_CORNERS, REDUCED_LANDSCAPE)
    p5 = make_population(REDUCED_CORNERS + ((x5_hat, x5_hat),), REDUCED_LANDSCAPE)
    return p5, p4


@dataclass(frozen=True)
class BenchmarkConfig:
    optima_count: int = 1
    N: int = 100
    landscape: Landscape = BENCH_LANDSCAPE
    iterations: int = 51
    repetitions: int = 50
    seed: int = 0

    def __post_init__(self):
        if self.optima_count < 1:
            raise ValueError("optima_count must be positive")
        if self.N < 1 or self.N % self.optima_count:
            raise ValueError(f"N={self.N} must be a positive multiple of optima_count={self.optima_count}")
        if self.iterations < 2:
            raise ValueError("need at least two iterations")
        if self.repetitions < 1:
            raise ValueError("need at least one repetition")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


def repetition_seed(seed: int, repetition: int) -> int:
    """Derive a 64-bit seed for one repetition from the run seed."""
    ss = np.random.SeedSequence([seed, repetition])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _draw_optima(rng: np.random.Generator, config: BenchmarkConfig) -> np.ndarray:
    land = config.landscape
    return land.lower + rng.random((config.optima_count, land.n)) * land.widths


def sample_optima(config: BenchmarkConfig, rep_seed: int) -> np.ndarray:
    """Optima positions drawn uniformly over the landscape, shape (optima_count, n)."""
    return _draw_optima(np.random.default_rng(rep_seed), config)


def hyperspace_bounds(optimum, landscape: Landscape, t: int, T: int) -> np.ndarray:
    """Box around ``optimum`` shrunk linearly from the landscape (t=0) to the point itself (t=T-1).

    Returns an ``(n, 2)`` array of ``[lower, upper]`` rows; the final box is
    degenerate and therefore not a valid :class:`Landscape`.
    """
    if not 0 <= t <= T - 1:
        raise ValueError(f"iteration {t} outside 0..{T - 1}")
    o = np.asarray(optimum, dtype=float)
    lo, hi = _shrink(o, landscape, t / (T - 1))
    return np.stack([lo, hi], axis=-1)


def _shrink(o: np.ndarray, landscape: Landscape, s: float) -> tuple[np.ndarray, np.ndarray]:
    keep = 1.0 - s
    return o + keep * (landscape.lower - o), o + keep * (landscape.upper - o)


@dataclass
class RepetitionTrace:
    repetition: int
    optima: np.ndarray
    series: dict[MeasureSpec, DiversitySeries]


@dataclass
class BenchmarkResult:
    config: BenchmarkConfig
    measures: tuple[MeasureSpec, ...]
    repetitions: list[RepetitionTrace]
    mean: dict[MeasureSpec, np.ndarray] = field(default_factory=dict)
    std: dict[MeasureSpec, np.ndarray] = field(default_factory=dict)

    def final_mean(self, spec: MeasureSpec) -> float:
        return float(self.mean[spec][-1])


def run_repetition(config: BenchmarkConfig, measures: Sequence[MeasureSpec], r: int) -> RepetitionTrace:
    rng = np.random.default_rng(repetition_seed(config.seed, r))
    optima = _draw_optima(rng, config)
    owner = optima[np.repeat(np.arange(config.optima_count), config.N // config.optima_count)]
    land = config.landscape
    T = config.iterations
    raw = {m: np.empty(T) for m in measures}
    for t in range(T):
        lo, hi = _shrink(owner, land, t / (T - 1))
        x = lo + rng.random(owner.shape) * (hi - lo)
        # guard against rounding pushing a draw past its box
        x = np.clip(x, lo, hi)
        pop = Population(x, land)
        for m in measures:
            raw[m][t] = evaluate(m, pop)
    return RepetitionTrace(r, optima, {m: nmdf(raw[m]) for m in measures})


def benchmark_run(config: BenchmarkConfig, measures: Sequence[MeasureSpec], workers: int = 1) -> BenchmarkResult:
    """Simulate single- or multi-site convergence and record each measure per iteration.

    Individuals are split equally over randomly placed optima and redrawn
    every iteration inside their optimum's shrinking box. Each repetition
    has a private generator, so results do not depend on ``workers``.
    """
    measures = tuple(measures)
    reps = range(config.repetitions)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            traces = list(pool.map(lambda r: run_repetition(config, measures, r), reps))
    else:
        traces = [run_repetition(config, measures, r) for r in reps]
    result = BenchmarkResult(config, measures, traces)
    for m in measures:
        stack = np.stack([tr.series[m].normalized for tr in traces])
        result.mean[m] = stack.mean(axis=0)
        result.std[m] = stack.std(axis=0, ddof=1) if len(traces) > 1 else np.zeros(stack.shape[1])
    return result
