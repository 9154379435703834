"""Frequency scans of the cyclic autocorrelation with MBB significance bands.

For each grid frequency the bootstrap law of ``a*_n - E* a*_n`` (the root
divided by ``sqrt(n - |tau|)``) gives componentwise quantile bands; a grid
point is rejected when the estimate leaves the band in either component.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import Executor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.ndimage import uniform_filter1d

from .apfunc import TWO_PI
from .cyclic import cyclic_scan, mbb_cyclic_root
from .mbb import BootstrapPlan, quantile
from .sim import as_series

DEGENERATE_EPS = 1e-12
TSV_COLUMNS = ("lambda", "re", "re_lo", "re_hi", "im", "im_lo", "im_hi", "reject")


def default_grid(points: int = 151) -> np.ndarray:
    """``points`` equally spaced frequencies covering ``[0, pi]``."""
    if points < 2:
        raise ValueError("grid needs at least 2 points")
    return np.linspace(0.0, math.pi, points)


@dataclass(frozen=True)
class SpikeFilter:
    """Turns pointwise rejections into reported frequencies.

    A rejected point is a candidate when its spike score (see
    :meth:`ScanResult.spike_score`) reaches ``threshold``.  A candidate is kept
    if a grid neighbour is also a candidate or if ``|a_n|`` there is a local
    maximum along the grid.

    Defaults were frozen from a 100-seed Monte Carlo run at ``n = 300`` with
    the default scan settings.  On fresh seeds about one iid series in
    twenty-five still reports a period at lag 1, and the PAR(1) spike at
    ``2*pi/3`` is recovered cleanly in about a third of series; at this
    sample size the per-point bootstrap bands are too noisy for more.
    """

    threshold: float = 2.2
    window: int = 25
    exclude_zero: bool = False

    def __post_init__(self):
        if self.window < 0:
            raise ValueError("window must be >= 0")


@dataclass(frozen=True)
class ScanConfig:
    tau: int
    seed: int
    b: int = 30
    B: int = 500
    lambda_grid: tuple[float, ...] = field(default_factory=lambda: tuple(default_grid()))
    alpha_lo: float = 0.05
    alpha_hi: float = 0.95

    def __post_init__(self):
        grid = np.asarray(self.lambda_grid, dtype=float)
        if grid.ndim != 1 or grid.size == 0:
            raise ValueError("lambda_grid must be a non-empty list")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("lambda_grid must be strictly increasing")
        if grid[0] < 0 or grid[-1] > math.pi + 1e-12:
            raise ValueError("lambda_grid must lie in [0, pi]")
        if not 0 < self.alpha_lo < self.alpha_hi < 1:
            raise ValueError("need 0 < alpha_lo < alpha_hi < 1")
        BootstrapPlan(self.b, self.B, self.seed)

    @property
    def plan(self) -> BootstrapPlan:
        return BootstrapPlan(self.b, self.B, self.seed)


@dataclass
class ScanResult:
    tau: int
    n: int
    lambdas: np.ndarray
    estimates: np.ndarray
    re_lo: np.ndarray
    re_hi: np.ndarray
    im_lo: np.ndarray
    im_hi: np.ndarray
    degenerate: np.ndarray

    @property
    def reject(self) -> np.ndarray:
        """Componentwise band exclusion; points with a degenerate band never reject."""
        return band_reject(self.estimates, self.re_lo, self.re_hi, self.im_lo, self.im_hi) \
            & ~self.degenerate

    def spike_score(self, window: int = 25) -> np.ndarray:
        """Distance from the band midpoint in pooled band half-widths, max over components.

        The half-width is pooled as the root mean square over the ``2*window + 1``
        nearest grid points (edges repeated), skipping zero-width bands such as
        the imaginary part at 0 and pi.  A single bootstrap band rests on only
        ``n // b`` blocks and its width is noisy; pooling keeps one unusually
        narrow band from producing a spike.
        """
        size = 2 * window + 1
        out = []
        for est, lo, hi in ((self.estimates.real, self.re_lo, self.re_hi),
                            (self.estimates.imag, self.im_lo, self.im_hi)):
            half = (hi - lo) / 2
            live = half > DEGENERATE_EPS
            num = uniform_filter1d(np.where(live, half**2, 0.0), size=size, mode="nearest")
            den = uniform_filter1d(live.astype(float), size=size, mode="nearest")
            pooled = np.sqrt(num / np.maximum(den, DEGENERATE_EPS))
            out.append(np.abs(est - (lo + hi) / 2) / np.maximum(pooled, DEGENERATE_EPS))
        return np.maximum(*out)

    def significant(self, spike: SpikeFilter | None = None) -> np.ndarray:
        """Frequencies that survive the spike filter."""
        spike = spike or SpikeFilter()
        cand = self.reject & (self.spike_score(spike.window) >= spike.threshold)
        if spike.exclude_zero:
            cand &= self.lambdas != 0.0
        mod = np.abs(self.estimates)
        left = np.concatenate([[-np.inf], mod[:-1]])
        right = np.concatenate([mod[1:], [-np.inf]])
        local_max = (mod >= left) & (mod >= right)
        neighbour = np.zeros_like(cand)
        neighbour[1:] |= cand[:-1]
        neighbour[:-1] |= cand[1:]
        return self.lambdas[cand & (local_max | neighbour)]

    def full_circle(self) -> tuple[np.ndarray, np.ndarray]:
        """Frequencies and estimates on ``[0, 2*pi)`` using conjugate symmetry."""
        lam = self.lambdas
        mirror = (lam > 0) & (lam < math.pi)
        full_lam = np.concatenate([lam[lam < math.pi], (TWO_PI - lam[mirror])[::-1]])
        full_est = np.concatenate([self.estimates[lam < math.pi],
                                   np.conj(self.estimates[mirror])[::-1]])
        if lam[-1] == math.pi:
            at_pi = np.searchsorted(full_lam, math.pi)
            full_lam = np.insert(full_lam, at_pi, math.pi)
            full_est = np.insert(full_est, at_pi, self.estimates[-1])
        return full_lam, full_est

    def to_tsv(self) -> str:
        buf = io.StringIO()
        buf.write("\t".join(TSV_COLUMNS) + "\n")
        rej = self.reject
        for i, lam in enumerate(self.lambdas):
            e = self.estimates[i]
            row = [lam, e.real, self.re_lo[i], self.re_hi[i], e.imag, self.im_lo[i],
                   self.im_hi[i]]
            buf.write("\t".join(repr(float(v)) for v in row) + f"\t{int(rej[i])}\n")
        return buf.getvalue()


def band_reject(est, re_lo, re_hi, im_lo, im_hi) -> np.ndarray:
    est = np.asarray(est)
    return ((est.real < re_lo) | (est.real > re_hi)
            | (est.imag < im_lo) | (est.imag > im_hi))


def _band(x, lam, g, config, m):
    dist = mbb_cyclic_root(x, lam, config.tau, config.plan, keys=(g,))
    s = dist.samples / math.sqrt(m)
    re, im = s.real, s.imag
    lo_hi = [quantile(re, config.alpha_lo), quantile(re, config.alpha_hi),
             quantile(im, config.alpha_lo), quantile(im, config.alpha_hi)]
    degenerate = np.ptp(re) <= DEGENERATE_EPS and np.ptp(im) <= DEGENERATE_EPS
    if degenerate:
        lo_hi = [-DEGENERATE_EPS, DEGENERATE_EPS, -DEGENERATE_EPS, DEGENERATE_EPS]
    return lo_hi, degenerate


def frequency_scan(x, config: ScanConfig, executor: Executor | None = None) -> ScanResult:
    """Estimate and bootstrap band at every grid frequency.

    Grid point ``g`` uses bootstrap streams keyed by ``(seed, g, r)``, so a
    parallel map over grid points reproduces the sequential result.
    """
    x = as_series(x)
    n = x.size
    m = n - abs(config.tau)
    if m < 1:
        raise ValueError("lag exceeds sample")
    if config.b > m:
        raise ValueError("block exceeds effective sample")
    lams = np.asarray(config.lambda_grid, dtype=float)
    estimates = cyclic_scan(x, lams, config.tau)
    jobs = list(enumerate(lams))
    run = lambda job: _band(x, job[1], job[0], config, m)  # noqa: E731
    bands = list(executor.map(run, jobs)) if executor is not None else [run(j) for j in jobs]
    arr = np.array([b[0] for b in bands]).reshape(len(jobs), 4)
    return ScanResult(
        tau=config.tau, n=n, lambdas=lams, estimates=estimates,
        re_lo=arr[:, 0], re_hi=arr[:, 1], im_lo=arr[:, 2], im_hi=arr[:, 3],
        degenerate=np.array([b[1] for b in bands], dtype=bool),
    )


def infer_period(significant, tol: float = 0.05, t_max: int = 12) -> int | None:
    """Smallest ``T <= t_max`` whose frequencies ``2*pi*k/T`` cover every significant one.

    Returns None when nothing fits, and for an empty input (no evidence of
    any cyclic frequency, so no period to report).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    lams = np.mod(np.asarray(list(significant), dtype=float), TWO_PI)
    if lams.size == 0:
        return None
    for T in range(1, t_max + 1):
        dist = np.abs(lams[:, None] - TWO_PI * np.arange(T + 1)[None, :] / T)
        if np.all(dist.min(axis=1) <= tol):
            return T
    return None


@dataclass
class StationarityVerdict:
    significant: dict[int, list[float]]

    @property
    def stationary_compatible(self) -> bool:
        return not any(self.significant.values())

    def __str__(self) -> str:
        if self.stationary_compatible:
            return "no-evidence-of-cyclostationarity"
        parts = [f"tau={tau}: " + ", ".join(f"{lam:.4f}" for lam in lams)
                 for tau, lams in self.significant.items() if lams]
        return "significant frequencies; " + "; ".join(parts)


def stationarity_diagnostic(x, taus, template: ScanConfig,
                            spike: SpikeFilter | None = None,
                            executor: Executor | None = None) -> StationarityVerdict:
    """Scan each lag and collect significant non-zero frequencies."""
    spike = replace(spike or SpikeFilter(), exclude_zero=True)
    found = {}
    for i, tau in enumerate(taus):
        cfg = ScanConfig(tau=int(tau), seed=template.seed, b=template.b, B=template.B,
                         lambda_grid=template.lambda_grid, alpha_lo=template.alpha_lo,
                         alpha_hi=template.alpha_hi)
        res = frequency_scan(x, cfg, executor=executor)
        found[int(tau)] = [float(v) for v in res.significant(spike)]
    return StationarityVerdict(found)
