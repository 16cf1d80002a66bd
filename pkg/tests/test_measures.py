import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from genodiv.core import Landscape, MeasureSpec, Population, make_population
from genodiv.geometry import HypercubeSet, mc_union_volume
from genodiv.measures import (
    UndefinedMeasureError,
    d_l,
    d_mst,
    d_pw,
    evaluate,
    gene_histogram,
    gf_s,
    gf_s_normalized,
    hypercube_side,
    nmdf,
)
from genodiv.scenarios import FrozenCaseSpec, frozen_case, reduced_arrangement

from .conftest import ALL_SPECS
from .oracles import brute_dpw, brute_emst

seeds = st.integers(0, 2**32 - 1)


def case(c, optima=2):
    return frozen_case(FrozenCaseSpec(c, optima_count=optima))


def random_population(seed, N, n=2, land=None):
    rng = np.random.default_rng(seed)
    land = land or Landscape(tuple((-1.0 - k, 2.0 + k) for k in range(n)))
    x = land.lower + rng.random((N, n)) * land.widths
    # some duplicates so coincidence paths are exercised
    if N > 3:
        x[: N // 4] = x[N - N // 4:]
    return Population(x, land)


# ----------------------------------------------------------------- D_PW

def test_dpw_case4_two_optima():
    assert d_pw(case(4)) == pytest.approx(2500 * 2 * math.sqrt(2) / 4950, rel=1e-12)
    assert round(d_pw(case(4)), 2) == 1.43


def test_dpw_identical_is_zero():
    assert d_pw(case(1)) == 0.0


def test_dpw_unit_square_corners(unit_square):
    corners = [(0, 0), (1, 0), (1, 1), (0, 1)]
    expected = brute_dpw(corners)
    assert expected == pytest.approx((4 + 2 * math.sqrt(2)) / 6, rel=1e-15)
    assert d_pw(make_population(corners, unit_square)) == pytest.approx(expected, rel=1e-12)


def test_dpw_single_individual_undefined(unit_square):
    with pytest.raises(UndefinedMeasureError):
        d_pw(make_population([(0.5, 0.5)], unit_square))


@settings(max_examples=100, deadline=None)
@given(seed=seeds, N=st.integers(2, 40), n=st.integers(1, 4))
def test_dpw_matches_double_loop(seed, N, n):
    pop = random_population(seed, N, n)
    assert d_pw(pop) == pytest.approx(brute_dpw(pop.locations.tolist()), rel=1e-9)


# ----------------------------------------------------------------- GF_S

def test_gfs_case2_two_optima():
    assert gf_s(case(2), 100) == pytest.approx(math.log(2), rel=1e-12)


def test_gfs_single_point_is_zero():
    assert gf_s(case(1), 100) == 0.0


def test_gfs_case3_four_optima():
    expected = -0.8 * math.log(0.8) - 0.2 * math.log(0.2)
    assert gf_s(case(3, 4), 100) == pytest.approx(expected, rel=1e-12)
    assert round(expected, 2) == 0.50


def test_gfs_upper_bound_lands_in_top_bin(unit_square):
    pop = make_population([(1.0, 0.0), (0.95, 0.0)], unit_square)
    p = gene_histogram(pop, 10)
    assert p[9, 0] == 1.0 and p[0, 1] == 1.0


def test_gene_histogram_columns_sum_to_one():
    p = gene_histogram(random_population(3, 50), 7)
    np.testing.assert_allclose(p.sum(axis=0), 1.0, atol=1e-12)


def test_gfs_normalized_cases():
    assert gf_s_normalized(case(6), 100) == pytest.approx(1.0, rel=1e-12)
    assert gf_s_normalized(case(7), 100) == pytest.approx(0.5, rel=1e-12)
    assert gf_s_normalized(case(1), 100) == 0.0


def test_gfs_normalized_small_population_uses_ln_n(unit_square):
    pop = make_population([(0.05, 0.05), (0.55, 0.55), (0.95, 0.95)], unit_square)
    assert gf_s_normalized(pop, 100) == pytest.approx(1.0)


def test_gfs_normalized_undefined(unit_square):
    with pytest.raises(UndefinedMeasureError):
        gf_s_normalized(make_population([(0.1, 0.1)], unit_square), 10)
    with pytest.raises(UndefinedMeasureError):
        gf_s_normalized(case(7), 1)


@settings(max_examples=100, deadline=None)
@given(seed=seeds, N=st.integers(1, 60), M=st.integers(1, 120))
def test_gfs_range(seed, N, M):
    v = gf_s(random_population(seed, N), M)
    assert 0.0 <= v <= math.log(min(M, N)) + 1e-12


@settings(max_examples=100, deadline=None)
@given(seed=seeds, N=st.integers(1, 60), M=st.integers(1, 50))
def test_gfs_bin_interior_perturbation(seed, N, M):
    land = Landscape(((0.0, 1.0), (-2.0, 2.0)))
    rng = np.random.default_rng(seed)
    bins = rng.integers(0, M, size=(N, 2))
    width = land.widths / M
    # stay well inside each bin so the floor is unambiguous
    x = land.lower + (bins + rng.uniform(0.05, 0.95, (N, 2))) * width
    y = land.lower + (bins + rng.uniform(0.05, 0.95, (N, 2))) * width
    assert gf_s(Population(x, land), M) == gf_s(Population(y, land), M)


# ----------------------------------------------------------------- D_L

def test_dl_case1_and_case7():
    assert d_l(case(1)) == pytest.approx(0.04, rel=1e-12)
    assert d_l(case(7)) == pytest.approx(4.0, rel=1e-12)


def test_dl_reduced_midpoint_equals_p4():
    p5, p4 = reduced_arrangement(0.5)
    assert hypercube_side(p5) == pytest.approx(math.sqrt(0.2))
    assert d_l(p5) == pytest.approx(1.0, abs=1e-12)
    assert d_l(p4) == pytest.approx(1.0, abs=1e-12)
    est, se = mc_union_volume(HypercubeSet(p5.locations, hypercube_side(p5)), 10**6, 11)
    assert abs(est - 1.0) <= 4 * se


@settings(max_examples=100, deadline=None)
@given(seed=seeds, N=st.integers(1, 60))
def test_dl_range(seed, N):
    pop = random_population(seed, N)
    V = pop.landscape.volume
    assert V / N * (1 - 1e-12) <= d_l(pop) <= V * (1 + 1e-12)


# ----------------------------------------------------------------- D_MST

def test_dmst_case2_four_optima():
    assert d_mst(case(2, 4)) == pytest.approx(3.0, rel=1e-12)


def test_dmst_identical():
    assert d_mst(case(1)) == 0.0


def test_dmst_reduced_star():
    p5, _ = reduced_arrangement(0.5)
    assert brute_emst(p5.locations) == pytest.approx(2 * math.sqrt(2))
    assert d_mst(p5) == pytest.approx(2 * math.sqrt(2), rel=1e-12)


# ----------------------------------------------------------------- NMDF

def test_nmdf_definition():
    s = nmdf([1, 2, 4, 2])
    np.testing.assert_array_equal(s.normalized, [1, 1, 1, 0.5])
    np.testing.assert_array_equal(s.raw, [1, 2, 4, 2])


def test_nmdf_constant():
    np.testing.assert_array_equal(nmdf([3.5] * 6).normalized, np.ones(6))


@pytest.mark.parametrize("raw", [[0.0, 1.0], [-1.0], []])
def test_nmdf_rejects(raw):
    with pytest.raises(ValueError):
        nmdf(raw)


@settings(max_examples=100)
@given(st.lists(st.just(0.0) | st.floats(1e-6, 1e6), min_size=1, max_size=60).filter(lambda r: r[0] > 0))
def test_nmdf_properties(raw):
    s = nmdf(raw)
    assert s.normalized[0] == 1.0
    assert np.all((s.normalized >= 0) & (s.normalized <= 1))
    running = np.maximum.accumulate(raw)
    np.testing.assert_allclose(s.normalized * running, raw, rtol=1e-12)


# ----------------------------------------------------------------- dispatch and invariants

def test_evaluate_dispatch():
    assert round(evaluate(MeasureSpec("dpw"), case(5)), 2) == 1.20
    assert evaluate(MeasureSpec("dmst"), case(6)) == pytest.approx(2 * math.sqrt(2), rel=1e-12)
    assert round(evaluate(MeasureSpec("gfs", 100), case(4, 4)), 2) == 0.69


@settings(max_examples=100, deadline=None)
@given(seed=seeds, N=st.integers(2, 50), which=st.integers(0, 3))
def test_permutation_invariance(seed, N, which):
    pop = random_population(seed, N)
    perm = np.random.default_rng(seed + 1).permutation(N)
    shuffled = Population(pop.locations[perm], pop.landscape)
    spec = ALL_SPECS[which]
    assert evaluate(spec, shuffled) == pytest.approx(evaluate(spec, pop), rel=1e-12, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(seed=seeds, N=st.integers(2, 50), alpha=st.floats(0.05, 20.0), shift=st.floats(-100, 100))
def test_translation_and_homogeneity(seed, N, alpha, shift):
    pop = random_population(seed, N)
    land = pop.landscape
    moved = Population(
        alpha * pop.locations + shift,
        Landscape(tuple((alpha * lo + shift, alpha * hi + shift) for lo, hi in land.bounds)),
    )
    assert d_pw(moved) == pytest.approx(alpha * d_pw(pop), rel=1e-9)
    assert d_mst(moved) == pytest.approx(alpha * d_mst(pop), rel=1e-9)
    assert d_l(moved) == pytest.approx(alpha**2 * d_l(pop), rel=1e-9)


@settings(max_examples=100, deadline=None)
@given(seed=seeds, N=st.integers(2, 20), collapse=st.booleans())
def test_zero_iff_coincident(seed, N, collapse):
    pop = random_population(seed, N)
    x = pop.locations.copy()
    if collapse:
        x[:] = x[0]
    pop = Population(x, pop.landscape)
    same = bool(np.all(x == x[0]))
    assert (d_pw(pop) == 0) == same
    assert (d_mst(pop) == 0) == same
