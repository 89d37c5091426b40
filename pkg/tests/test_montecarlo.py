import io
from fractions import Fraction

import pytest

from covarray.bounds import CoveringParams, gamma_k, sufficient_n
from covarray.montecarlo import (
    WorkBoundExceeded,
    empirical_min_n,
    enumerate_gamma,
    estimate_gamma,
    estimate_lambda,
    tile_arrangements,
    write_csv,
)


def test_enumerate_examples():
    assert enumerate_gamma(2, 3, 1) == Fraction(2, 8)
    assert enumerate_gamma(2, 3, 2) == Fraction(102, 216)
    assert enumerate_gamma(2, 2, 2) == gamma_k(2, 2, 2)


def test_enumeration_matches_inclusion_exclusion():
    checked = 0
    for alpha in range(2, 7):
        for t in range(1, 6):
            for k in range(1, 6):
                try:
                    e = enumerate_gamma(alpha, t, k, bound=10**6)
                except WorkBoundExceeded:
                    continue
                assert e == gamma_k(alpha, t, k), (alpha, t, k)
                checked += 1
    assert checked >= 40


def test_full_arrangement_enumeration():
    assert len(tile_arrangements(3, 2)) == 90
    for alpha, t, k in [(2, 3, 2), (3, 2, 2), (3, 3, 1), (4, 2, 1)]:
        assert enumerate_gamma(alpha, t, k, full=True) == gamma_k(alpha, t, k)


def test_full_enumeration_any_target_is_symmetric():
    for target in [(1, 2), (2, 2), (3, 1)]:
        assert enumerate_gamma(3, 2, 2, target=target, full=True) == gamma_k(3, 2, 2)
    assert enumerate_gamma(2, 3, 2, target=(2, 1, 2), full=True) == Fraction(17, 36)


def test_work_bound(monkeypatch):
    with pytest.raises(WorkBoundExceeded):
        enumerate_gamma(4, 4, 3)
    monkeypatch.setenv("COVARRAY_WORK_BOUND", "100")
    with pytest.raises(WorkBoundExceeded):
        enumerate_gamma(2, 3, 2)
    monkeypatch.setenv("COVARRAY_WORK_BOUND", "216")
    assert enumerate_gamma(2, 3, 2) == Fraction(17, 36)


@pytest.mark.parametrize("alpha,t,k", [(2, 3, 1), (3, 3, 2)])
def test_estimate_gamma_million(alpha, t, k):
    r = estimate_gamma(alpha, t, k, 10**6, seed=11)
    assert r.exact == gamma_k(alpha, t, k)
    assert abs(r.z) <= 4
    assert abs(r.estimate - float(r.exact)) <= 4 * r.stderr


def test_estimate_gamma_single_trial():
    r = estimate_gamma(2, 3, 2, 1, seed=0)
    assert r.estimate in (0.0, 1.0)


@pytest.mark.parametrize("target", [(1, 2, 1), (2, 2, 2), (3, 1, 2)])
def test_target_symmetry(target):
    base = estimate_gamma(3, 3, 2, 10**5, seed=21)
    other = estimate_gamma(3, 3, 2, 10**5, seed=22, target=target)
    assert abs(other.z) <= 4
    assert abs(other.estimate - base.estimate) <= 4 * (2**0.5) * base.stderr


def test_threads_do_not_change_results():
    a = estimate_gamma(2, 3, 2, 200_000, seed=3, threads=1)
    b = estimate_gamma(2, 3, 2, 200_000, seed=3, threads=4)
    assert a.hits == b.hits


@pytest.mark.parametrize(
    "alpha,t,k,n_core,exact",
    [(2, 2, 1, 2, Fraction(1, 2)), (2, 3, 1, 8, Fraction(81, 256))],
)
def test_estimate_lambda(alpha, t, k, n_core, exact):
    r = estimate_lambda(CoveringParams(t, t, alpha), k, n_core, 10**5, seed=5)
    assert r.exact == exact
    assert abs(r.z) <= 4


def test_lambda_vanishes_for_wide_rows():
    r = estimate_lambda(CoveringParams(2, 2, 2), 1, 200, 10**4, seed=1)
    assert r.estimate == 0.0 and r.exact < Fraction(1, 10**20)


def test_lambda_rejects_bad_width():
    with pytest.raises(ValueError):
        estimate_lambda(CoveringParams(3, 3, 2), 2, 6, 10)


def test_csv_output():
    buf = io.StringIO()
    write_csv([estimate_gamma(2, 3, 1, 1000, seed=0)], buf)
    header, row = buf.getvalue().splitlines()
    assert header == "label,alpha,t,k,n_core,trials,estimate,stderr,exact,z"
    assert row.startswith("gamma,2,3,1,2,1000,")


def test_min_n_below_bound():
    s = empirical_min_n(CoveringParams(8, 2, 2), 1, 100, seed=0)
    assert s.sufficient_n == sufficient_n(CoveringParams(8, 2, 2), 1).sufficient_n
    assert s.median <= s.sufficient_n
    assert all(v % 2 == 0 for v in s.values)


def test_min_n_grows_with_m():
    medians = [empirical_min_n(CoveringParams(m, 2, 2), 1, 100, seed=0).median for m in (4, 6, 8)]
    assert medians == sorted(medians)


def test_min_n_model_comparison():
    # measured at m = 8, t = 3: both tiled variants beat the i.i.d. model and stay under their LLL width
    params = CoveringParams(8, 3, 2)
    iid = empirical_min_n(params, 0, 200, seed=1)
    k1 = empirical_min_n(params, 1, 200, seed=1)
    k2 = empirical_min_n(params, 2, 200, seed=1)
    assert k1.median <= iid.median and k2.median <= iid.median
    assert k1.median <= k1.sufficient_n and k2.median <= k2.sufficient_n


def test_min_n_work_bound():
    with pytest.raises(WorkBoundExceeded):
        empirical_min_n(CoveringParams(60, 4, 3), 1, 1)
