"""Genotypic diversity measures for real-coded populations and their validation."""

from .core import (
    Landscape,
    MeasureKind,
    MeasureSpec,
    Population,
    load_population,
    make_population,
    save_population,
    uniform_population,
)
from .geometry import HypercubeSet, emst_length, mc_union_volume, union_volume
from .measures import (
    DiversitySeries,
    UndefinedMeasureError,
    d_l,
    d_mst,
    d_pw,
    evaluate,
    gf_s,
    gf_s_normalized,
    nmdf,
)
from .scenarios import (
    BenchmarkConfig,
    FrozenCaseSpec,
    benchmark_run,
    frozen_case,
    hyperspace_bounds,
    reduced_arrangement,
    sample_optima,
)
from .validation import (
    build_case_grid,
    check_framework_a,
    check_framework_b,
    sweep_reduced,
    validation_report,
)

__version__ = "0.1.0"
