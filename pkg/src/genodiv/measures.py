"""Genotypic diversity measures: D_PW, GF_S, D_L and D_MST.

Every measure is a pure function of a :class:`~genodiv.core.Population` and
is invariant to the order of its rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.spatial.distance import pdist

from .core import MeasureKind, MeasureSpec, Population
from .geometry import HypercubeSet, emst_length, union_volume


class UndefinedMeasureError(ValueError):
    """Raised when a measure has no value for the given population."""


def d_pw(pop: Population) -> float:
    """Mean Euclidean distance over all unordered pairs of individuals."""
    if pop.size < 2:
        raise UndefinedMeasureError("D_PW needs at least two individuals")
    return float(pdist(pop.locations).mean())


def gene_bins(pop: Population, M: int) -> np.ndarray:
    """Zero-based bin index of every gene value, shape (N, n).

    Bins are half-open ``[edge_m, edge_m+1)`` except the top one, which is
    closed so that values on the upper bound land in bin M.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    land = pop.landscape
    scaled = (pop.locations - land.lower) / land.widths * M
    return np.clip(np.floor(scaled).astype(np.int64), 0, M - 1)


def gene_histogram(pop: Population, M: int) -> np.ndarray:
    """Fractions p[m, k] of the population falling in bin m on gene k, shape (M, n)."""
    bins = gene_bins(pop, M)
    counts = np.stack([np.bincount(bins[:, k], minlength=M) for k in range(pop.n)], axis=1)
    return counts / pop.size


def gf_s(pop: Population, M: int) -> float:
    """Per-gene Shannon entropy (natural log) of the bin fractions, averaged over genes."""
    p = gene_histogram(pop, M)
    nz = p[p > 0]
    return float((nz * np.log(1.0 / nz)).sum() / pop.n)


def gf_s_normalized(pop: Population, M: int) -> float:
    """GF_S divided by its attainable maximum ln(min(M, N))."""
    cap = min(M, pop.size)
    if cap < 2:
        raise UndefinedMeasureError("GF_S normalisation is undefined when min(M, N) = 1")
    return gf_s(pop, M) / math.log(cap)


def hypercube_side(pop: Population) -> float:
    """Side ``(V/N)**(1/n)`` that lets N disjoint cubes exactly fill the landscape volume."""
    return (pop.landscape.volume / pop.size) ** (1.0 / pop.n)


def d_l(pop: Population) -> float:
    """Volume of the union of equal hypercubes centred on the individuals."""
    return union_volume(HypercubeSet(pop.locations, hypercube_side(pop)))


def d_mst(pop: Population) -> float:
    """Total length of the Euclidean minimum spanning tree over the individuals."""
    return emst_length(pop.locations)


@dataclass(frozen=True)
class DiversitySeries:
    raw: np.ndarray
    normalized: np.ndarray

    def __len__(self):
        return len(self.raw)


def nmdf(raw: Sequence[float]) -> DiversitySeries:
    """Normalise a diversity history by the maximum reached so far (inclusive)."""
    r = np.asarray(raw, dtype=float)
    if r.ndim != 1 or r.size == 0:
        raise ValueError("diversity history must be a non-empty sequence")
    if not r[0] > 0:
        raise UndefinedMeasureError("NMDF needs a positive first diversity value")
    return DiversitySeries(r.copy(), r / np.maximum.accumulate(r))


_DISPATCH: dict[MeasureKind, Callable[..., float]] = {
    MeasureKind.DPW: lambda spec, pop: d_pw(pop),
    MeasureKind.GFS: lambda spec, pop: gf_s(pop, spec.bins),
    MeasureKind.DL: lambda spec, pop: d_l(pop),
    MeasureKind.DMST: lambda spec, pop: d_mst(pop),
}


def evaluate(spec: MeasureSpec, pop: Population) -> float:
    """Raw (unnormalised) value of the measure selected by ``spec``."""
    return _DISPATCH[spec.kind](spec, pop)


def parse_measure(text: str, bins: int | None = None) -> MeasureSpec:
    """Build a spec from a name such as ``"dpw"`` or ``"gfs"`` (needs ``bins``)."""
    kind = MeasureKind(text.strip().lower())
    return MeasureSpec(kind, bins if kind is MeasureKind.GFS else None)


DISPLAY_NAMES = {
    MeasureKind.DPW: "D_PW",
    MeasureKind.GFS: "GF_S",
    MeasureKind.DL: "D_L",
    MeasureKind.DMST: "D_MST",
}
