"""Cyclic autocorrelation estimates and their block-bootstrap roots."""

from __future__ import annotations

import json
import math
from concurrent.futures import Executor
from dataclasses import dataclass

import numpy as np

from .apfunc import TWO_PI
from .mbb import BootstrapDistribution, BootstrapPlan, bootstrap_root_distribution
from .sim import as_series


@dataclass(frozen=True)
class CyclicEstimate:
    lam: float
    tau: int
    value: complex
    n: int

    def to_dict(self) -> dict:
        return {"lambda": self.lam, "tau": self.tau, "re": self.value.real,
                "im": self.value.imag, "n": self.n}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _phasor(lam: float, t: np.ndarray) -> np.ndarray:
    return np.exp(-1j * np.mod(lam * t, TWO_PI))


def w_series(x, lam: float, tau: int) -> np.ndarray:
    """``W_t = X_t X_{t+tau} exp(-i lam t)`` for ``t = 1..n-tau`` (``tau >= 0``)."""
    x = as_series(x)
    n = x.size
    if tau < 0:
        raise ValueError("w_series needs tau >= 0")
    if tau >= n:
        raise ValueError("lag exceeds sample")
    t = np.arange(1, n - tau + 1)
    return x[: n - tau] * x[tau:] * _phasor(lam, t)


def cyclic_estimator(x, lam: float, tau: int) -> CyclicEstimate:
    """Sample cyclic autocorrelation at frequency ``lam`` and lag ``tau``.

    Sums ``X_t X_{t+tau} exp(-i lam t)`` over ``t = 1 - min(tau, 0) .. n - max(tau, 0)``
    and divides by ``n - |tau|``.  Negative lags use these limits directly.
    """
    x = as_series(x)
    n = x.size
    tau = int(tau)
    if abs(tau) >= n:
        raise ValueError("lag exceeds sample")
    t = np.arange(1 - min(tau, 0), n - max(tau, 0) + 1)
    prods = x[t - 1] * x[t - 1 + tau]
    value = complex(np.sum(prods * _phasor(lam, t)) / (n - abs(tau)))
    if lam == 0.0:
        value = complex(value.real, 0.0)
    return CyclicEstimate(lam=float(lam), tau=tau, value=value, n=n)


def cyclic_scan(x, lams, tau: int) -> np.ndarray:
    """Vector of estimates over a frequency grid (same formula as :func:`cyclic_estimator`)."""
    x = as_series(x)
    n = x.size
    if abs(tau) >= n:
        raise ValueError("lag exceeds sample")
    t = np.arange(1 - min(tau, 0), n - max(tau, 0) + 1)
    prods = x[t - 1] * x[t - 1 + tau]
    lams = np.asarray(lams, dtype=float)
    out = _phasor(lams[:, None], t[None, :]) @ prods / (n - abs(tau))
    out.imag[lams == 0.0] = 0.0
    return out


def mbb_cyclic_root(x, lam: float, tau: int, plan: BootstrapPlan,
                    keys: tuple[int, ...] = (),
                    executor: Executor | None = None) -> BootstrapDistribution:
    """Bootstrap draws of ``sqrt(k*b) * (a*_n - E* a*_n)`` built on the W series.

    Real and imaginary parts of W move together inside each block.  Negative
    lags are mapped to ``|tau|``; the resulting W differs only by the unit
    factor ``exp(-i lam |tau|)``, which is applied to the draws.
    """
    x = as_series(x)
    m = x.size - abs(tau)
    if abs(tau) >= x.size:
        raise ValueError("lag exceeds sample")
    if plan.b > m:
        raise ValueError("block exceeds effective sample")
    w = w_series(x, lam, abs(tau))
    dist = bootstrap_root_distribution(w, plan, keys=keys, executor=executor)
    if tau < 0:
        dist.samples = dist.samples * np.exp(-1j * lam * abs(tau))
    dist.meta.update({"statistic": "cyclic", "lambda": float(lam), "tau": int(tau)})
    return dist


def conj_symmetry_check(x, lam: float, tau: int, tol: float = 1e-10) -> bool:
    """Whether the estimate at ``2*pi - lam`` is the conjugate of the one at ``lam``."""
    x = as_series(x)
    if abs(tau) >= x.size:
        return False
    lo = cyclic_estimator(x, lam, tau).value
    hi = cyclic_estimator(x, math.fmod(TWO_PI - lam, TWO_PI), tau).value
    return abs(hi - lo.conjugate()) <= tol * max(1.0, abs(lo))
