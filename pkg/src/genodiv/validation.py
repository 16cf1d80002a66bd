"""Diversity-requirement checks over the two validation frameworks.

Framework A sweeps a fifth individual along the diagonal of four fixed
corner individuals. Framework B compares a measure across the seven frozen
cases. Three requirements are checked in both: monotonicity in individual
varieties (1), twinning (2) and monotonicity in distance (3).

Each check records its inputs as ``(label, value)`` evidence pairs and the
verdict is a pure function of that evidence (see :func:`recheck`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .core import MeasureSpec
from .measures import DISPLAY_NAMES, evaluate
from .scenarios import CLUSTER_CASES, FrozenCaseSpec, frozen_case, reduced_arrangement

DEFAULT_TOL = 1e-9
DEFAULT_RESOLUTION = 201
SWEEP_BINS = 10
CASE_BINS = 100
VARIANTS = (2, 4)
REQUIREMENTS = {
    1: "monotonicity in individual varieties",
    2: "twinning",
    3: "monotonicity in distance",
}

Evidence = list[tuple[str, float]]


@dataclass(frozen=True)
class SweepCurve:
    measure: MeasureSpec
    x5_hat: np.ndarray
    d_p5: np.ndarray
    d_p4: float

    def at(self, t: float) -> float:
        idx = np.flatnonzero(self.x5_hat == t)
        if idx.size == 0:
            raise KeyError(f"x5_hat={t} is not on the sweep grid")
        return float(self.d_p5[idx[0]])


@dataclass(frozen=True)
class CaseValueGrid:
    """Table of frozen-case values for one measure.

    Cases 1, 6 and 7 do not depend on the optima count and are stored once.
    """

    measure: MeasureSpec
    shared: dict[int, float]
    clustered: dict[tuple[int, int], float]

    def value(self, variant: int, case: int) -> float:
        if case in CLUSTER_CASES:
            return self.clustered[(variant, case)]
        return self.shared[case]

    def row(self, variant: int) -> list[float | None]:
        """One Table-5 style row; the 4-optima row leaves cases 1, 6, 7 empty."""
        out = []
        for c in range(1, 8):
            if c in CLUSTER_CASES or variant == VARIANTS[0]:
                out.append(self.value(variant, c))
            else:
                out.append(None)
        return out


@dataclass(frozen=True)
class Check:
    passed: bool
    evidence: Evidence

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class RequirementVerdict:
    requirement: int
    framework_a_pass: bool
    framework_b_pass: bool
    evidence: Evidence

    @property
    def failed_frameworks(self) -> list[str]:
        return [name for name, ok in (("A", self.framework_a_pass), ("B", self.framework_b_pass)) if not ok]

    @property
    def overall(self) -> str:
        return "NO" if self.failed_frameworks else "YES"

    @property
    def annotation(self) -> str:
        failed = self.failed_frameworks
        return f"NO^{','.join(failed)}" if failed else "YES"


@dataclass
class MeasureReport:
    measure: MeasureSpec
    curve: SweepCurve
    grid: CaseValueGrid
    verdicts: list[RequirementVerdict]


@dataclass
class ValidationReport:
    tol: float
    resolution: int
    measures: list[MeasureReport] = field(default_factory=list)

    def __len__(self):
        return len(self.measures)

    def pattern(self) -> dict[str, list[str]]:
        return {measure_name(r.measure): [v.annotation for v in r.verdicts] for r in self.measures}


def measure_name(spec: MeasureSpec) -> str:
    return DISPLAY_NAMES[spec.kind]


# ---------------------------------------------------------------- framework A

def sweep_reduced(measure: MeasureSpec, resolution: int = DEFAULT_RESOLUTION) -> SweepCurve:
    """Evaluate the measure on P5 along an even grid of x5_hat in [0, 1], plus on P4.

    GF_S is evaluated with 10 bins regardless of ``measure.bins``.
    """
    if resolution < 3 or resolution % 2 == 0:
        raise ValueError("resolution must be odd and at least 3 so 0.5 is on the grid")
    spec = measure.with_bins(SWEEP_BINS)
    grid = np.linspace(0.0, 1.0, resolution)
    values = np.empty(resolution)
    p4 = None
    for i, t in enumerate(grid):
        p5, p4 = reduced_arrangement(float(t))
        values[i] = evaluate(spec, p5)
    return SweepCurve(spec, grid, values, evaluate(spec, p4))


def _rule_a1(ev: Mapping[str, float], tol: float) -> bool:
    return ev["D(P5|0.5)"] >= ev["D(P4)"] - tol


def _rule_a2(ev: Mapping[str, float], tol: float) -> bool:
    return min(ev["D(P5|0)"], ev["D(P5|1)"]) <= ev["min D(P5)"] + tol


def _rule_a3(ev: Mapping[str, float], tol: float) -> bool:
    return ev["D(P5|0.5)"] >= ev["max D(P5)"] - tol


def check_framework_a(curve: SweepCurve, tol: float = DEFAULT_TOL) -> tuple[Check, Check, Check]:
    mid, lo, hi = curve.at(0.5), curve.at(0.0), curve.at(1.0)
    ev1 = [("D(P5|0.5)", mid), ("D(P4)", curve.d_p4)]
    ev2 = [("min D(P5)", float(curve.d_p5.min())), ("D(P5|0)", lo), ("D(P5|1)", hi)]
    ev3 = [("max D(P5)", float(curve.d_p5.max())), ("D(P5|0.5)", mid)]
    return (
        Check(_rule_a1(dict(ev1), tol), ev1),
        Check(_rule_a2(dict(ev2), tol), ev2),
        Check(_rule_a3(dict(ev3), tol), ev3),
    )


# ---------------------------------------------------------------- framework B

def build_case_grid(measure: MeasureSpec) -> CaseValueGrid:
    """Evaluate the measure on every frozen case (N=100 on [-1, 1]^2, GF_S with 100 bins)."""
    spec = measure.with_bins(CASE_BINS)
    shared = {c: evaluate(spec, frozen_case(FrozenCaseSpec(c))) for c in (1, 6, 7)}
    clustered = {
        (v, c): evaluate(spec, frozen_case(FrozenCaseSpec(c, optima_count=v)))
        for v in VARIANTS
        for c in CLUSTER_CASES
    }
    return CaseValueGrid(spec, shared, clustered)


def _case_label(variant: int, case: int) -> str:
    return f"case {case} ({variant} optima)"


def _groups(ev: Mapping[str, float], variant: int) -> list[list[float]]:
    v = lambda c: ev[_case_label(variant, c)]
    return [[v(1)], [v(2), v(3)], [v(4), v(5)], [v(6)], [v(7)]]


# going G1->G2 and G3->G4 adds distinct individuals, so diversity must rise strictly
_STRICT_STEPS = {(0, 1), (2, 3)}


def _variants_in(ev: Mapping[str, float]) -> list[int]:
    return [v for v in VARIANTS if _case_label(v, 2) in ev]


def _rule_b1(ev: Mapping[str, float], tol: float) -> bool:
    for variant in _variants_in(ev):
        groups = _groups(ev, variant)
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                if min(groups[j]) < max(groups[i]) - tol:
                    return False
                if (i, j) in _STRICT_STEPS and not min(groups[j]) > max(groups[i]) + tol:
                    return False
    return True


def _rule_b2(ev: Mapping[str, float], tol: float) -> bool:
    for variant in _variants_in(ev):
        g = _groups(ev, variant)
        if abs(g[1][0] - g[1][1]) > tol or abs(g[2][0] - g[2][1]) > tol:
            return False
    return True


def _rule_b3(ev: Mapping[str, float], tol: float) -> bool:
    for variant in _variants_in(ev):
        g = _groups(ev, variant)
        if not min(g[2]) > max(g[1]) + tol:
            return False
        if not g[3][0] > max(g[2]) + tol:
            return False
    return True


def check_framework_b(grid: CaseValueGrid, tol: float = DEFAULT_TOL) -> tuple[Check, Check, Check]:
    for v in VARIANTS:
        for c in CLUSTER_CASES:
            if (v, c) not in grid.clustered:
                raise ValueError(f"case grid is missing {_case_label(v, c)}")
    for c in (1, 6, 7):
        if c not in grid.shared:
            raise ValueError(f"case grid is missing case {c}")
    ev = [(_case_label(v, c), grid.value(v, c)) for v in VARIANTS for c in range(1, 8)]
    lookup = dict(ev)
    return tuple(Check(rule(lookup, tol), list(ev)) for rule in (_rule_b1, _rule_b2, _rule_b3))


_RULES: dict[tuple[str, int], Callable[[Mapping[str, float], float], bool]] = {
    ("A", 1): _rule_a1,
    ("A", 2): _rule_a2,
    ("A", 3): _rule_a3,
    ("B", 1): _rule_b1,
    ("B", 2): _rule_b2,
    ("B", 3): _rule_b3,
}


def recheck(framework: str, requirement: int, evidence: Sequence[tuple[str, float]], tol: float) -> bool:
    """Re-apply a verdict rule to stored evidence."""
    return _RULES[(framework, requirement)](dict(evidence), tol)


# ---------------------------------------------------------------- report

def _tag(framework: str, evidence: Evidence) -> Evidence:
    return [(f"{framework}: {label}", value) for label, value in evidence]


def split_evidence(evidence: Sequence[tuple[str, float]]) -> dict[str, Evidence]:
    """Undo the framework prefixes added to a verdict's evidence."""
    out: dict[str, Evidence] = {"A": [], "B": []}
    for label, value in evidence:
        fw, _, rest = label.partition(": ")
        out[fw].append((rest, value))
    return out


def measure_report(measure: MeasureSpec, tol: float = DEFAULT_TOL, resolution: int = DEFAULT_RESOLUTION) -> MeasureReport:
    curve = sweep_reduced(measure, resolution)
    grid = build_case_grid(measure)
    a = check_framework_a(curve, tol)
    b = check_framework_b(grid, tol)
    verdicts = [
        RequirementVerdict(req, a[req - 1].passed, b[req - 1].passed,
                           _tag("A", a[req - 1].evidence) + _tag("B", b[req - 1].evidence))
        for req in (1, 2, 3)
    ]
    return MeasureReport(measure, curve, grid, verdicts)


def validation_report(
    measures: Sequence[MeasureSpec],
    tol: float = DEFAULT_TOL,
    resolution: int = DEFAULT_RESOLUTION,
) -> ValidationReport:
    """Run both frameworks for each measure and collect the requirement verdicts.

    A requirement passes overall only when neither framework flags it.
    """
    report = ValidationReport(tol, resolution)
    for m in measures:
        report.measures.append(measure_report(m, tol, resolution))
    return report
