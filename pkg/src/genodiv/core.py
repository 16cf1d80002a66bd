"""Landscapes, populations and the population CSV format."""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

BOUND_TOL = 1e-12


class MeasureKind(str, Enum):
    DPW = "dpw"
    GFS = "gfs"
    DL = "dl"
    DMST = "dmst"


@dataclass(frozen=True)
class Landscape:
    """Axis-aligned search box, one ``(lower, upper)`` pair per gene."""

    bounds: tuple[tuple[float, float], ...]

    def __post_init__(self):
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        if not bounds:
            raise ValueError("landscape needs at least one gene")
        for k, (lo, hi) in enumerate(bounds):
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError(f"gene {k + 1}: bounds must be finite")
            if not lo < hi:
                raise ValueError(f"gene {k + 1}: lower bound {lo} must be below upper bound {hi}")
        object.__setattr__(self, "bounds", bounds)
        if not (0.0 < self.volume < math.inf):
            raise ValueError("landscape volume must be finite and positive")

    @classmethod
    def cube(cls, lo: float, hi: float, n: int) -> "Landscape":
        return cls(((lo, hi),) * n)

    @property
    def n(self) -> int:
        return len(self.bounds)

    @property
    def lower(self) -> np.ndarray:
        return np.array([b[0] for b in self.bounds])

    @property
    def upper(self) -> np.ndarray:
        return np.array([b[1] for b in self.bounds])

    @property
    def widths(self) -> np.ndarray:
        return self.upper - self.lower

    @property
    def center(self) -> np.ndarray:
        return (self.lower + self.upper) / 2.0

    @property
    def volume(self) -> float:
        return float(np.prod([hi - lo for lo, hi in self.bounds]))


@dataclass(frozen=True, eq=False)
class Population:
    """An immutable N x n matrix of individual locations inside a landscape.

    Use :func:`make_population` to build one from plain rows.
    """

    locations: np.ndarray
    landscape: Landscape

    def __post_init__(self):
        x = np.array(self.locations, dtype=float)
        if x.ndim != 2:
            raise ValueError("locations must be a 2-D matrix")
        if x.shape[0] < 1:
            raise ValueError("population must contain at least one individual")
        if x.shape[1] != self.landscape.n:
            raise ValueError(
                f"dimensionality mismatch: rows have {x.shape[1]} genes, landscape has {self.landscape.n}"
            )
        if not np.all(np.isfinite(x)):
            raise ValueError("gene values must be finite")
        lo, hi = self.landscape.lower, self.landscape.upper
        bad = (x < lo - BOUND_TOL) | (x > hi + BOUND_TOL)
        if bad.any():
            i, k = (int(v) for v in np.argwhere(bad)[0])
            raise ValueError(
                f"individual {i} gene {k + 1} value {float(x[i, k])!r} outside [{lo[k]}, {hi[k]}]"
            )
        x.setflags(write=False)
        object.__setattr__(self, "locations", x)

    @property
    def size(self) -> int:
        return self.locations.shape[0]

    @property
    def n(self) -> int:
        return self.locations.shape[1]

    def __len__(self):
        return self.size


@dataclass(frozen=True)
class MeasureSpec:
    """Selects a diversity measure; ``bins`` is required for GF_S only."""

    kind: MeasureKind
    bins: int | None = None

    def __post_init__(self):
        kind = MeasureKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is MeasureKind.GFS:
            if self.bins is None:
                raise ValueError("GF_S needs a bin count")
            if int(self.bins) != self.bins or self.bins < 1:
                raise ValueError(f"bin count must be a positive integer, got {self.bins}")
            object.__setattr__(self, "bins", int(self.bins))
        elif self.bins is not None:
            raise ValueError(f"{kind.value} takes no bin count")

    @property
    def label(self) -> str:
        return self.kind.value

    @property
    def params(self) -> dict:
        return {"bins": self.bins} if self.bins is not None else {}

    def with_bins(self, bins: int) -> "MeasureSpec":
        """Return the same spec with ``bins`` substituted when it is GF_S."""
        if self.kind is MeasureKind.GFS:
            return MeasureSpec(self.kind, bins)
        return self


def make_population(rows: Iterable[Sequence[float]], landscape: Landscape) -> Population:
    rows = [list(r) for r in rows]
    for i, r in enumerate(rows):
        if len(r) != landscape.n:
            raise ValueError(
                f"dimensionality mismatch: row {i} has {len(r)} genes, landscape has {landscape.n}"
            )
    x = np.array(rows, dtype=float).reshape(len(rows), landscape.n)
    return Population(x, landscape)


def grid_side(N: int, n: int) -> int:
    """Return g with g**n == N, or raise if N is not a perfect n-th power."""
    g = int(round(N ** (1.0 / n)))
    for cand in (g - 1, g, g + 1):
        if cand >= 1 and cand**n == N:
            return cand
    raise ValueError(f"N={N} is not a perfect {n}-th power")


def uniform_population(landscape: Landscape, N: int) -> Population:
    """Full grid with g = N**(1/n) equally spaced values per axis, bounds included.

    Rows are in lexicographic order, first gene varying slowest.
    """
    g = grid_side(N, landscape.n)
    if g < 2:
        raise ValueError("a uniform grid needs at least two points per axis")
    axes = [np.linspace(lo, hi, g) for lo, hi in landscape.bounds]
    rows = np.array(list(itertools.product(*axes)), dtype=float)
    return Population(rows, landscape)


def save_population(pop: Population, path) -> None:
    """Write ``pop`` as CSV with a ``x1,...,xn`` header and 17 significant digits."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        fh.write(format_population(pop))


def format_population(pop: Population) -> str:
    lines = [",".join(f"x{k + 1}" for k in range(pop.n))]
    lines.extend(",".join(f"{v:.17g}" for v in row) for row in pop.locations)
    return "\n".join(lines) + "\n"


def load_population(path, landscape: Landscape) -> Population:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: missing header") from None
        header = [h.strip() for h in header]
        expected = [f"x{k + 1}" for k in range(landscape.n)]
        if len(header) != landscape.n:
            raise ValueError(
                f"{path}: header has {len(header)} columns, landscape has {landscape.n} genes"
            )
        if header != expected:
            raise ValueError(f"{path}: header must be {','.join(expected)}, got {','.join(header)}")
        rows = []
        for row in reader:
            if not row or all(not c.strip() for c in row):
                continue
            line = reader.line_num
            if len(row) != landscape.n:
                raise ValueError(f"{path}: line {line}: expected {landscape.n} values, got {len(row)}")
            try:
                rows.append([float(c) for c in row])
            except ValueError:
                raise ValueError(f"{path}: line {line}: cannot parse {row!r} as reals") from None
    if not rows:
        raise ValueError("population must contain at least one individual")
    return make_population(rows, landscape)
