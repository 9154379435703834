import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclboot.apfunc import (TWO_PI, APFunction, eval_ap, fourier_coeff, mean_value_est,
                             rate_constant)
from conftest import ap_functions, brute_mean, real_ap_functions


def test_eval_constant():
    assert eval_ap(APFunction.constant(3.0), 17) == 3 + 0j


@pytest.mark.parametrize("t, expected", [(1, -0.5), (3, 1.0)])
def test_eval_cosine(cos3, t, expected):
    v = eval_ap(cos3, t)
    assert v.real == pytest.approx(expected, abs=1e-12)
    assert abs(v.imag) <= 1e-12


def test_eval_vectorised_matches_scalar(cos3):
    t = np.arange(1, 20)
    assert np.allclose(eval_ap(cos3, t), [eval_ap(cos3, int(s)) for s in t])


def test_terms_sorted_and_merged():
    f = APFunction.from_terms([(1.0, 1), (0.5, 2), (1.0 + 1e-12, 3), (TWO_PI + 0.5, 1)])
    assert [l for l, _ in f.terms] == [0.5, 1.0]
    assert f.coeff(1.0) == 4 and f.coeff(0.5) == 3


def test_invalid_terms_rejected():
    with pytest.raises(ValueError):
        APFunction(((1.0, 1), (0.5, 1)))
    with pytest.raises(ValueError):
        APFunction(((7.0, 1),))


def test_real_flag(cos3):
    assert cos3.is_real()
    assert not APFunction.from_terms([(1.0, 1)]).is_real()
    assert not APFunction.constant(1j).is_real()


@given(real_ap_functions(), st.integers(-1000, 1000))
def test_real_functions_evaluate_real(f, t):
    v = eval_ap(f, t)
    assert abs(v.imag) <= 1e-12 * max(1.0, sum(abs(c) for _, c in f.terms))


def test_mean_value_constant():
    assert mean_value_est(lambda t: np.full(t.shape, 2.5), 7, 13) == pytest.approx(2.5)


def test_mean_value_full_period(cos3):
    assert abs(mean_value_est(cos3, 1, 3)) < 1e-12


def test_mean_value_cos_t_geometric_bound():
    # |sum_{t=s}^{s+n-1} e^{it}| <= 2/|1-e^i| = 2.0858...
    bound = 2 / abs(1 - cmath.exp(1j))
    assert bound == pytest.approx(2.0858, abs=1e-4)
    m = mean_value_est(lambda t: np.cos(t), 1, 10_000)
    assert abs(m) <= 2.09e-4
    assert abs(m) <= bound / 10_000


def test_mean_value_sequence_indexing():
    assert mean_value_est([1, 2, 3, 4], 2, 2) == 2.5
    with pytest.raises(ValueError, match="empty averaging window"):
        mean_value_est([1, 2], 1, 0)
    with pytest.raises(ValueError):
        mean_value_est([1, 2], 2, 2)


@pytest.mark.parametrize("f, expected", [
    (APFunction.constant(5.0), 0.0),
    (APFunction.from_terms([(math.pi, 1.0)]), 1.0),
    (APFunction.cosine(TWO_PI / 3), 2 / math.sqrt(3)),
])
def test_rate_constant_examples(f, expected):
    assert rate_constant(f) == pytest.approx(expected, rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(ap_functions(), st.integers(1, 100), st.integers(1, 2000))
def test_rate_bound_holds(f, s, n):
    dev = abs(mean_value_est(f, s, n) - f.mean)
    assert dev <= rate_constant(f) / n + 1e-10


@settings(max_examples=25, deadline=None)
@given(ap_functions(max_terms=3), st.integers(1, 50), st.integers(1, 60))
def test_mean_value_matches_direct_sum(f, s, n):
    assert abs(mean_value_est(f, s, n) - brute_mean(f, s, n)) < 1e-9 * (
        1 + sum(abs(c) for _, c in f.terms))


def test_fourier_coeff_examples(cos3):
    assert fourier_coeff(np.ones(300), 0.0) == pytest.approx(1.0)
    assert abs(fourier_coeff(np.ones(3), TWO_PI / 3)) < 1e-12
    x = eval_ap(cos3, np.arange(1, 301)).real
    assert abs(fourier_coeff(x, TWO_PI / 3) - 0.5) < 1e-12
    with pytest.raises(ValueError):
        fourier_coeff([], 0.0)


@settings(max_examples=50, deadline=None)
@given(ap_functions(max_terms=4))
def test_fourier_coeff_recovers_coefficients(f):
    n = 4000
    x = eval_ap(f, np.arange(1, n + 1))
    for lam, c in f.terms:
        # shifting by -lam moves the target term to frequency 0
        shifted = APFunction.from_terms((l - lam, a) for l, a in f.terms)
        tol = rate_constant(shifted) / n + 1e-9 * (1 + sum(abs(a) for _, a in f.terms))
        assert abs(fourier_coeff(x, lam) - c) <= tol


@given(st.lists(st.floats(-10, 10), min_size=1, max_size=50), st.floats(0, TWO_PI))
def test_fourier_coeff_conjugate_symmetry(x, lam):
    a = fourier_coeff(x, lam)
    b = fourier_coeff(x, TWO_PI - lam)
    assert abs(b - a.conjugate()) <= 1e-12 * max(1.0, max(abs(v) for v in x))


@settings(max_examples=20, deadline=None)
@given(real_ap_functions(nonconstant=True))
def test_variance_identity(f):
    n = 100_000
    vals = eval_ap(f, np.arange(1, n + 1)).real
    m1, m2 = vals.mean(), (vals**2).mean()
    c1, c2 = rate_constant(f), rate_constant(f * f)
    a0 = f.mean.real
    tol = 10 * (c2 + 2 * abs(a0) * c1 + c1**2 / n) / n + 1e-9
    assert abs((m2 - m1**2) - f.abs_sq_sum()) <= tol
    assert m2 - m1**2 > 0
