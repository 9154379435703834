"""Monte Carlo checks of MBB consistency and block-variance stabilisation.

Models are any object with ``simulate(n, seed)``, ``batch(n, R, seed)``
and a known mean ``mu`` (see :mod:`cyclboot.sim`).
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ._rng import derive_seed
from .mbb import BootstrapPlan, bootstrap_root_distribution


def ks_distance(a, b) -> float:
    """Two-sample Kolmogorov-Smirnov statistic ``sup_x |F_a(x) - F_b(x)|``."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValueError("ks_distance needs two non-empty samples")
    pooled = np.concatenate([a, b])
    fa = np.searchsorted(a, pooled, side="right") / a.size
    fb = np.searchsorted(b, pooled, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def block_rule(q: float):
    """``b(n) = ceil(n**q)``; requires ``0 < q < 1`` so that b grows but b/n -> 0."""
    if not 0 < q < 1:
        raise ValueError(f"block exponent must lie in (0, 1), got {q}")
    return lambda n: min(n, math.ceil(n**q))


@dataclass
class ConsistencyRow:
    n: int
    b: int
    ks_distance: float
    B: int
    R: int
    pilot_seed: int
    bootstrap_seed: int
    truth_seed: int


@dataclass
class ConsistencyReport:
    model: str
    q: float
    seed: int
    rows: list[ConsistencyRow] = field(default_factory=list)

    @property
    def distances(self) -> list[float]:
        return [r.ks_distance for r in self.rows]

    def non_increasing(self, slack: float = 0.02) -> bool:
        d = self.distances
        return all(later <= earlier + slack for earlier, later in zip(d, d[1:]))

    def to_json(self) -> str:
        return json.dumps({"model": self.model, "q": self.q, "seed": self.seed,
                           "rows": [asdict(r) for r in self.rows]}, indent=2)


def mbb_consistency_check(model, n_list, q: float = 0.4, B: int = 1000, R: int = 1000,
                          seed: int = 0) -> ConsistencyReport:
    """Compare the MBB root law with the Monte Carlo law of ``sqrt(n)(mean - mu)``.

    For each n a single pilot series feeds the bootstrap (B replicates), and
    R independent series give the reference sample with the model's true mu.
    """
    rule = block_rule(q)
    report = ConsistencyReport(model=getattr(model, "name", type(model).__name__), q=q, seed=seed)
    for n in n_list:
        n = int(n)
        b = rule(n)
        pilot_seed, boot_seed, truth_seed = (derive_seed(seed, i, n) for i in range(3))
        pilot = model.simulate(n, pilot_seed)
        boot = bootstrap_root_distribution(pilot, BootstrapPlan(b, B, boot_seed)).samples
        truth = math.sqrt(n) * (model.batch(n, R, truth_seed).mean(axis=1) - model.mu)
        report.rows.append(ConsistencyRow(n=n, b=b, ks_distance=ks_distance(boot, truth), B=B,
                                          R=R, pilot_seed=pilot_seed, bootstrap_seed=boot_seed,
                                          truth_seed=truth_seed))
    return report


@dataclass
class BlockVarianceProfile:
    n: int
    b: int
    R: int
    sigma2: float
    variances: np.ndarray

    @property
    def deviations(self) -> np.ndarray:
        return self.variances - self.sigma2

    @property
    def sup_dev(self) -> float:
        return float(np.max(np.abs(self.deviations)))

    def to_dict(self) -> dict:
        return {"n": self.n, "b": self.b, "R": self.R, "sigma2": self.sigma2,
                "sup_dev": self.sup_dev}


def _window_variances(X: np.ndarray, b: int) -> np.ndarray:
    c = np.concatenate([np.zeros((X.shape[0], 1)), np.cumsum(X, axis=1)], axis=1)
    S = (c[:, b:] - c[:, :-b]) / math.sqrt(b)
    return S.var(axis=0, ddof=1)


def calibrate_sigma2(model, n: int, R: int, seed: int) -> float:
    """Mean block variance over all starts at ``b = n // 2``, on fresh replicates."""
    b = max(1, n // 2)
    return float(np.mean(_window_variances(model.batch(n, R, seed), b)))


def block_variance_profile(model, n: int, b: int, R: int, seed: int,
                           sigma2: float | None = None) -> BlockVarianceProfile:
    """Across-replicate variance of ``b**-0.5 * sum_{t=s}^{s+b-1} X_t`` for every start s.

    ``sigma2`` defaults to a calibration estimate from an independent batch.
    """
    if R < 2:
        raise ValueError("need R >= 2 replicates for a variance")
    if not 1 <= b <= n:
        raise ValueError(f"block length b={b} must satisfy 1 <= b <= n={n}")
    X = model.batch(n, R, derive_seed(seed, 0))
    if sigma2 is None:
        sigma2 = calibrate_sigma2(model, n, R, derive_seed(seed, 1))
    return BlockVarianceProfile(n=n, b=b, R=R, sigma2=float(sigma2),
                                variances=_window_variances(X, b))
