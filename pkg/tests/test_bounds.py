import math
from fractions import Fraction
from itertools import permutations, product

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from covarray.bounds import (
    CoveringParams,
    TABLE_TRIPLES,
    TileSpec,
    coefficient_baseline,
    coefficient_k1_closed_form,
    coefficient_tiled,
    dependency_degree_plus_one,
    format_table,
    gamma_k,
    gamma_terms,
    lll_check,
    paper_table,
    sufficient_n,
)

# values published alongside the construction; k = 0 is the i.i.d. baseline
PUBLISHED = {
    (2, 3, 0): 10.38, (2, 3, 1): 9.64, (2, 3, 2): 8.68, (2, 3, 3): 8.31,
    (2, 4, 0): 32.22, (2, 4, 1): 31.15, (2, 4, 2): 29.55, (2, 4, 3): 28.85,
    (3, 3, 0): 36.73, (3, 3, 1): 35.31, (3, 3, 3): 33.28, (3, 3, 5): 32.79,
    (3, 4, 0): 167.39, (3, 4, 1): 165.3, (3, 4, 3): 161.57, (3, 4, 5): 160.47,
    (4, 3, 0): 88.03, (4, 3, 2): 83.97, (4, 3, 4): 82.72, (4, 3, 6): 82.27,
    (4, 4, 0): 531.3, (4, 4, 2): 524.75, (4, 4, 4): 521.98, (4, 4, 6): 520.90,
    (5, 4, 0): 1298.61, (5, 4, 2): 1290.12, (5, 4, 4): 1286.46, (5, 4, 6): 1285.01,
    (5, 5, 0): 8662.95, (5, 5, 2): 8651.13, (5, 5, 4): 8644.67, (5, 5, 6): 8641.86,
}  # fmt: skip


def brute_gamma(alpha, t, k):
    """Stack t distinct tile arrangements every possible way and count hits on (1,...,1)."""
    tiles = sorted(set(permutations([x for x in range(1, alpha + 1) for _ in range(k)])))
    hits = sum(
        any(all(stack[j][c] == 1 for j in range(t)) for c in range(alpha * k)) for stack in product(tiles, repeat=t)
    )
    return Fraction(hits, len(tiles) ** t)


@pytest.mark.parametrize(
    "alpha,t,k,expected",
    [
        (2, 3, 1, Fraction(1, 4)),
        (2, 3, 2, Fraction(17, 36)),
        (2, 2, 2, Fraction(5, 6)),
        (3, 2, 2, Fraction(3, 5)),
        (2, 2, 3, Fraction(19, 20)),
        (2, 4, 2, Fraction(53, 216)),
        (3, 3, 1, Fraction(1, 9)),
    ],
)
def test_gamma_frozen_values(alpha, t, k, expected):
    assert gamma_k(alpha, t, k) == expected


@pytest.mark.parametrize("alpha,t,k", [(2, 3, 2), (2, 2, 3), (3, 2, 1), (2, 1, 2)])
def test_gamma_matches_inline_brute_force(alpha, t, k):
    assert gamma_k(alpha, t, k) == brute_gamma(alpha, t, k)


def test_gamma_k1_closed_form():
    for alpha in range(2, 7):
        for t in range(1, 7):
            assert gamma_k(alpha, t, 1) == Fraction(1, alpha ** (t - 1))


def test_gamma_forms_agree_term_by_term():
    for alpha in range(2, 7):
        for k in range(1, 24 // alpha + 1):
            for t in range(1, 6):
                a = gamma_terms(alpha, t, k, "binomial")
                b = gamma_terms(alpha, t, k, "multinomial")
                assert a == b
                assert sum(a) == gamma_k(alpha, t, k)


def test_gamma_rejects_bad_input():
    with pytest.raises(ValueError):
        gamma_k(2, 3, 0)
    with pytest.raises(ValueError):
        gamma_k(1, 3, 1)


def test_gamma_range_and_monotone_in_k():
    pairs = {(a, t) for a, t, _ in TABLE_TRIPLES}
    for alpha, t in pairs:
        gs = [gamma_k(alpha, t, k) for k in range(1, 7)]
        assert all(0 < g <= 1 for g in gs)
        assert all(x < y for x, y in zip(gs, gs[1:]))


@pytest.mark.parametrize("triple", sorted(PUBLISHED))
def test_published_coefficients(triple):
    alpha, t, k = triple
    c = coefficient_baseline(alpha, t) if k == 0 else coefficient_tiled(alpha, t, k)
    assert abs(c - PUBLISHED[triple]) <= 0.005


def test_table_rows():
    rows = paper_table()
    assert len(rows) == 32
    lookup = {(a, t, k): c for a, t, k, c in rows}
    assert lookup[(3, 3, 5)] == 32.79
    assert lookup[(4, 3, 6)] == 82.27
    assert lookup[(5, 5, 2)] == 8651.13
    text = format_table(rows)
    assert text == format_table(paper_table())
    assert "8641.86" in text


def test_k1_matches_closed_form():
    for alpha in range(2, 7):
        for t in range(2, 7):
            a = coefficient_tiled(alpha, t, 1)
            b = coefficient_k1_closed_form(alpha, t)
            assert math.isclose(a, b, rel_tol=1e-12)


def test_tiled_beats_baseline():
    for alpha in range(2, 7):
        for t in range(2, 7):
            assert coefficient_tiled(alpha, t, 1) < coefficient_baseline(alpha, t)
            # underlying inequality, raised to the alpha-th power to stay exact
            assert (1 - Fraction(1, alpha ** (t - 1))) <= (1 - Fraction(1, alpha**t)) ** alpha


def test_coefficient_decreases_in_k():
    pairs = {(a, t) for a, t, _ in TABLE_TRIPLES}
    for alpha, t in pairs:
        cs = [coefficient_tiled(alpha, t, k) for k in range(1, 7)]
        assert all(x > y for x, y in zip(cs, cs[1:]))


def test_dependency_examples():
    assert dependency_degree_plus_one(5, 2, "exact") == 9
    assert dependency_degree_plus_one(5, 2, "paper") == 10.0
    assert dependency_degree_plus_one(10, 3, "exact") == 109
    with pytest.raises(ValueError):
        dependency_degree_plus_one(3, 4)
    with pytest.raises(ValueError):
        dependency_degree_plus_one(5, 2, "loose")


@given(st.integers(2, 8).flatmap(lambda t: st.tuples(st.just(t), st.integers(t, 500))))
def test_exact_dependency_below_loose_bound(tm):
    t, m = tm
    assert dependency_degree_plus_one(m, t, "exact") <= dependency_degree_plus_one(m, t, "paper")


def test_params_validation():
    with pytest.raises(ValueError):
        CoveringParams(5, 1, 2)
    with pytest.raises(ValueError):
        CoveringParams(2, 3, 2)
    with pytest.raises(ValueError):
        CoveringParams(5, 2, 1)
    spec = TileSpec(2, 3)
    assert spec.width == 6 and spec.tile_count(18) == 3
    with pytest.raises(ValueError):
        spec.tile_count(10)


def test_lll_check_contract():
    p = CoveringParams(100, 3, 2)
    ok, prod = lll_check(p, 1, 2, "exact")
    assert not ok and prod > 1
    ok, prod = lll_check(CoveringParams(2, 2, 2), 1, 10**6)
    assert ok and prod == 0.0
    with pytest.raises(ValueError, match="multiple"):
        lll_check(p, 2, 6)
    with pytest.raises(ValueError):
        lll_check(p, 1, 0)


def mp_lll_product(params, k, n_core, mode):
    """e*p*(d+1) at 60 digits from exact rationals; independent of the float log path."""
    mpmath.mp.dps = 60
    alpha, t, m = params.alpha, params.t, params.m
    if mode == "exact":
        dep = Fraction(t * math.comb(m - 1, t - 1) + 1)
    else:
        dep = Fraction(t * m ** (t - 1), math.factorial(t - 1))
    if k == 0:
        q = alpha**t * dep * (1 - Fraction(1, alpha**t)) ** n_core
    else:
        q = (alpha**t - alpha) * dep * (1 - gamma_k(alpha, t, k)) ** (n_core // (k * alpha))
    return mpmath.e * mpmath.mpf(q.numerator) / q.denominator


SMOKE = [(5, 2, 2, 1), (8, 2, 2, 1), (6, 3, 2, 1), (6, 3, 2, 2), (100, 3, 2, 1), (50, 4, 3, 2), (30, 3, 4, 0)]


@pytest.mark.parametrize("m,t,alpha,k", SMOKE)
@pytest.mark.parametrize("mode", ["exact", "paper"])
def test_sufficient_n_is_minimal(m, t, alpha, k, mode):
    params = CoveringParams(m, t, alpha)
    report = sufficient_n(params, k, mode)
    block = k * alpha if k else 1
    assert report.n_core % block == 0
    assert report.sufficient_n == report.n_core + report.augmentation_columns
    assert report.augmentation_columns == (alpha if k else 0)
    assert report.lll_product <= 1
    assert mp_lll_product(params, k, report.n_core, mode) <= 1
    if report.n_core > block:
        assert mp_lll_product(params, k, report.n_core - block, mode) > 1
        assert not lll_check(params, k, report.n_core - block, mode)[0]
    assert math.isclose(float(report.p_bound), report.lll_product / math.e / float(report.dependency_degree_plus_one), rel_tol=1e-9)


def test_sufficient_n_m100_bracket():
    report = sufficient_n(CoveringParams(100, 3, 2), 1)
    ratio = report.sufficient_n / math.log2(100)
    assert 9.64 <= ratio <= 9.64 * 1.5
    assert lll_check(report.params, 1, report.n_core)[0]


def test_loose_dependency_mode_needs_no_fewer_columns():
    for m in (10, 100, 1000):
        exact = sufficient_n(CoveringParams(m, 3, 2), 2, "exact")
        paper = sufficient_n(CoveringParams(m, 3, 2), 2, "paper")
        assert paper.sufficient_n >= exact.sufficient_n


def test_sufficient_n_ratio_approaches_coefficient():
    target = coefficient_tiled(2, 3, 2)
    gaps = []
    for e in (4, 16, 64, 256, 1024, 4096):
        report = sufficient_n(CoveringParams(2**e, 3, 2), 2, "paper")
        gaps.append(report.sufficient_n / e - target)
    assert all(g > 0 for g in gaps)
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-3 * target


def test_exact_escalation_path():
    # craft n at the threshold: both branches must agree with the 60-digit check
    params = CoveringParams(40, 3, 3)
    report = sufficient_n(params, 1)
    for n in range(report.n_core - 9, report.n_core + 10, 3):
        if n > 0:
            assert lll_check(params, 1, n)[0] == (mp_lll_product(params, 1, n, "exact") <= 1)


def test_bound_report_json_schema():
    report = sufficient_n(CoveringParams(1000, 3, 2), 2)
    out = report.to_json()
    assert set(out) == {"m", "t", "alpha", "k", "mode", "gamma", "coefficient", "sufficient_n", "lll_product", "augmentation_columns"}
    assert out["gamma"] == {"num": "17", "den": "36"}
    assert round(out["coefficient"], 2) == 8.68


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(2, 5), st.integers(1, 4), st.integers(5, 10**6))
def test_sufficient_n_invariants(alpha, t, k, m):
    params = CoveringParams(max(m, t), t, alpha)
    report = sufficient_n(params, k)
    assert report.lll_product <= 1
    assert report.n_core % (k * alpha) == 0
    if report.n_core > k * alpha:
        assert not lll_check(params, k, report.n_core - k * alpha)[0]
