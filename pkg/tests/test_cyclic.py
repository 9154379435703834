import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cyclboot.apfunc import TWO_PI, APFunction
from cyclboot.cyclic import (CyclicEstimate, conj_symmetry_check, cyclic_estimator, cyclic_scan,
                             mbb_cyclic_root, w_series)
from cyclboot.mbb import BootstrapPlan, quantile
from cyclboot.sim import ModulatedSpec, Par1Model, Par1Spec, gen_modulated, gen_par1

series = arrays(np.float64, st.integers(3, 60), elements=st.floats(-50, 50))


def direct_estimate(x, lam, tau):
    """Literal transcription of the estimator with 1-based t."""
    n = len(x)
    total = 0j
    for t in range(1 - min(tau, 0), n - max(tau, 0) + 1):
        total += x[t - 1] * x[t + tau - 1] * cmath.exp(-1j * lam * t)
    return total / (n - abs(tau))


def test_w_series_examples():
    assert np.allclose(w_series(np.ones(5), 0.0, 0), np.ones(5))
    assert np.allclose(w_series(np.ones(6), math.pi, 0), [(-1) ** t for t in range(1, 7)])
    assert np.allclose(w_series([1.0, 2.0, 3.0, 4.0], 0.0, 1), [2, 6, 12])
    with pytest.raises(ValueError, match="lag exceeds sample"):
        w_series([1.0, 2.0], 0.0, 2)


@pytest.mark.parametrize("tau", [0, 1, 5, -3, 299, -299])
def test_estimator_constant_series(tau):
    assert cyclic_estimator(np.ones(300), 0.0, tau).value == pytest.approx(1.0)


def test_estimator_roots_of_unity():
    assert abs(cyclic_estimator(np.ones(300), TWO_PI / 3, 0).value) < 1e-12


def test_estimator_rejects_long_lag():
    with pytest.raises(ValueError):
        cyclic_estimator(np.ones(5), 0.0, 5)
    with pytest.raises(ValueError):
        cyclic_estimator(np.ones(5), 0.0, -5)


@settings(max_examples=60, deadline=None)
@given(series, st.floats(0, TWO_PI, exclude_max=True), st.data())
def test_estimator_matches_direct_sum(x, lam, data):
    tau = data.draw(st.integers(-(len(x) - 1), len(x) - 1))
    got = cyclic_estimator(x, lam, tau).value
    assert abs(got - direct_estimate(x, lam, tau)) <= 1e-9 * (1 + np.max(x**2))


@settings(max_examples=60, deadline=None)
@given(series, st.floats(0, TWO_PI, exclude_max=True), st.data())
def test_negative_lag_relation(x, lam, data):
    tau = data.draw(st.integers(1, len(x) - 1))
    pos = cyclic_estimator(x, lam, tau).value
    neg = cyclic_estimator(x, lam, -tau).value
    assert abs(neg - cmath.exp(-1j * lam * tau) * pos) <= 1e-10 * (1 + np.max(x**2))


@given(series)
def test_zero_frequency_zero_lag_is_power(x):
    v = cyclic_estimator(x, 0.0, 0).value
    assert v.imag == 0.0 and v.real >= 0
    assert v.real == pytest.approx(np.mean(x**2), rel=1e-12, abs=1e-12)


def test_scan_matches_pointwise():
    x = gen_par1(Par1Spec(n=120, seed=3))
    lams = np.linspace(0, math.pi, 17)
    for tau in (0, 2, -2):
        vec = cyclic_scan(x, lams, tau)
        assert np.allclose(vec, [cyclic_estimator(x, l, tau).value for l in lams], atol=1e-13)


@pytest.mark.slow
def test_modulated_cosine_coefficients():
    # B(t,0) = cos^2(2 pi t/3) = 1/2 + (1/4) e^{i 4 pi t/3} + (1/4) e^{-i 4 pi t/3}
    env = APFunction.cosine(TWO_PI / 3)
    xs = [gen_modulated(ModulatedSpec(10_000, env, seed=s)) for s in range(50)]
    a0 = np.mean([cyclic_estimator(x, 0.0, 0).value.real for x in xs])
    a43 = np.mean([cyclic_estimator(x, 2 * TWO_PI / 3, 0).value for x in xs])
    assert abs(a0 - 0.5) <= 0.02
    assert abs(abs(a43) - 0.25) <= 0.02


@pytest.mark.slow
def test_estimator_consistency_improves_with_n():
    env = APFunction.cosine(TWO_PI / 3)
    err = {n: np.median([abs(cyclic_estimator(gen_modulated(ModulatedSpec(n, env, seed=s)),
                                              0.0, 0).value - 0.5) for s in range(40)])
           for n in (1000, 10_000)}
    assert err[10_000] < err[1000]


def test_root_zero_series():
    d = mbb_cyclic_root(np.zeros(50), 1.0, 1, BootstrapPlan(5, 100, 1))
    assert np.all(d.samples == 0)


def test_root_constant_series():
    d = mbb_cyclic_root(np.full(60, 1.7), 0.0, 0, BootstrapPlan(6, 100, 1))
    assert np.all(d.samples == 0)


def test_root_block_limit():
    with pytest.raises(ValueError, match="block exceeds effective sample"):
        mbb_cyclic_root(np.ones(10), 0.0, 3, BootstrapPlan(8, 10, 1))


def test_root_negative_lag_is_rotated():
    x = gen_par1(Par1Spec(n=100, seed=4))
    plan = BootstrapPlan(10, 50, 5)
    pos = mbb_cyclic_root(x, 0.9, 2, plan).samples
    neg = mbb_cyclic_root(x, 0.9, -2, plan).samples
    assert np.allclose(neg, pos * cmath.exp(-0.9j * 2))


def test_root_is_complex_with_meta():
    x = gen_par1(Par1Spec(n=100, seed=6))
    d = mbb_cyclic_root(x, 2.0, 1, BootstrapPlan(10, 20, 7))
    assert d.is_complex and d.meta["k"] == 9 and d.meta["tau"] == 1


@pytest.mark.slow
def test_root_band_width_par1():
    # truth: spread of Re a_n(2pi/3, 1) over 1000 independent PAR(1) series
    lam = TWO_PI / 3
    X = Par1Model().batch(300, 1000, seed=41)
    t = np.arange(1, 300)
    est = (X[:, :-1] * X[:, 1:] * np.exp(-1j * lam * t)).mean(axis=1)
    truth_width = (1.6449 - (-1.6449)) * est.real.std()
    x = Par1Model().simulate(300, seed=42)
    roots = mbb_cyclic_root(x, lam, 1, BootstrapPlan(30, 500, 43)).samples.real / math.sqrt(299)
    lo, hi = quantile(roots, 0.05), quantile(roots, 0.95)
    assert lo < 0 < hi
    assert 0.5 * truth_width <= hi - lo <= 2 * truth_width


def test_conj_symmetry_examples():
    rng = np.random.default_rng(7)
    assert conj_symmetry_check(rng.standard_normal(40), 0.0, 0)
    assert conj_symmetry_check(rng.standard_normal(100), 1.0, 2)
    assert conj_symmetry_check(gen_par1(Par1Spec(n=300, seed=1)), 2.1, 1)


@given(series, st.floats(0, TWO_PI, exclude_max=True), st.data())
def test_conj_symmetry_property(x, lam, data):
    tau = data.draw(st.integers(-(len(x) - 1), len(x) - 1))
    assert conj_symmetry_check(x, lam, tau)


def test_estimate_serialisation():
    e = cyclic_estimator([1.0, 2.0, 3.0], 0.5, 1)
    d = e.to_dict()
    assert set(d) == {"lambda", "tau", "re", "im", "n"}
    assert isinstance(e, CyclicEstimate) and d["n"] == 3
