"""Moving block bootstrap for the sample mean of a (possibly complex) series.

Blocks ``(X_t, ..., X_{t+b-1})``, ``t = 1..n-b+1``, are drawn uniformly with
replacement and ``k = n // b`` of them are concatenated.  When ``b`` does not
divide ``n`` the pseudo-sample has length ``k*b``; block sums are still taken
over the whole observed sample.

Only block sums enter the bootstrap mean, so replicates are computed from the
``n-b+1`` block sums and never materialise the pseudo-series (see
:func:`resample` for the explicit version).
"""

from __future__ import annotations

import json
import math
from concurrent.futures import Executor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._rng import check_seed, generator


def num_blocks(n: int, b: int) -> int:
    if b < 1 or b > n:
        raise ValueError(f"block length b={b} must satisfy 1 <= b <= n={n}")
    return n // b


def block_starts(n: int, b: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """``k`` i.i.d. zero-based block starts, uniform on ``{0, ..., n-b}``."""
    return rng.integers(0, n - b + 1, size=k)


def resample(x, b: int, rng: np.random.Generator) -> np.ndarray:
    """One MBB pseudo-series of length ``k*b`` (real or complex input)."""
    x = np.asarray(x)
    n = x.size
    k = num_blocks(n, b)
    starts = block_starts(n, b, k, rng)
    return x[starts[:, None] + np.arange(b)].reshape(-1)


def block_sums(x, b: int) -> np.ndarray:
    """The ``n-b+1`` sums ``Z_t = X_t + ... + X_{t+b-1}``."""
    x = np.asarray(x)
    num_blocks(x.size, b)
    c = np.concatenate([np.zeros(1, dtype=x.dtype), np.cumsum(x)])
    return c[b:] - c[:-b]


def mbb_center(x, b: int):
    """Exact bootstrap expectation of the pseudo-sample mean.

    Each drawn block sum is uniform over the ``n-b+1`` block sums, so the
    expectation is their average divided by ``b``.  Computed from the
    direct sums rather than a cumulative sum to stay exact for constant input.
    """
    x = np.asarray(x)
    n = x.size
    num_blocks(n, b)
    # sum_t Z_t = sum_j w_j X_j where w_j counts the blocks covering j
    j = np.arange(n)
    w = np.minimum.reduce([j + 1, np.full(n, b), n - j, np.full(n, n - b + 1)])
    c = np.sum(w * x) / (b * (n - b + 1))
    return complex(c) if np.iscomplexobj(c) else float(c)


@dataclass(frozen=True)
class BootstrapPlan:
    b: int
    B: int
    seed: int

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("block length must be >= 1")
        if self.B < 1:
            raise ValueError("replicate count must be >= 1")
        check_seed(self.seed)


@dataclass
class BootstrapDistribution:
    """Bootstrap draws of a root statistic plus provenance."""

    samples: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def B(self) -> int:
        return int(self.samples.size)

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.samples)

    def to_json(self) -> str:
        if self.is_complex:
            samples = [[float(z.real), float(z.imag)] for z in self.samples]
        else:
            samples = [float(v) for v in self.samples]
        return json.dumps({"meta": self.meta, "samples": samples})

    @classmethod
    def from_json(cls, text: str) -> "BootstrapDistribution":
        d = json.loads(text)
        raw = d["samples"]
        if raw and isinstance(raw[0], list):
            samples = np.array([complex(re, im) for re, im in raw])
        else:
            samples = np.asarray(raw, dtype=float)
        return cls(samples=samples, meta=d["meta"])

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json())


def replicate_means(sums: np.ndarray, b: int, k: int, seed: int, replicates,
                    keys: tuple[int, ...] = ()) -> np.ndarray:
    """Pseudo-sample means for the given replicate indices.

    Replicate ``r`` draws its block starts from ``generator(seed, *keys, r)``,
    so any subset of replicates can be computed independently.
    """
    n_starts = sums.size
    idx = np.stack([generator(seed, *keys, r).integers(0, n_starts, size=k)
                    for r in replicates])
    return sums[idx].sum(axis=1) / (k * b)


def _chunks(B: int, size: int):
    return [range(lo, min(lo + size, B)) for lo in range(0, B, size)]


def bootstrap_root_distribution(x, plan: BootstrapPlan, statistic: str = "mean",
                                keys: tuple[int, ...] = (),
                                executor: Executor | None = None) -> BootstrapDistribution:
    """Draws of ``sqrt(k*b) * (mean* - E* mean*)`` for the MBB pseudo-mean.

    With an ``executor``, replicate chunks are evaluated in parallel; the
    result is identical to the sequential one.
    """
    if statistic != "mean":
        raise ValueError(f"unsupported statistic {statistic!r}")
    x = np.asarray(x)
    n = x.size
    k = num_blocks(n, plan.b)
    sums = block_sums(x, plan.b)
    center = mbb_center(x, plan.b)
    if executor is None:
        means = replicate_means(sums, plan.b, k, plan.seed, range(plan.B), keys)
    else:
        parts = executor.map(lambda rs: replicate_means(sums, plan.b, k, plan.seed, rs, keys),
                             _chunks(plan.B, 256))
        means = np.concatenate(list(parts))
    if _is_constant(x):
        # all block sums agree; avoid reporting rounding noise as spread
        roots = np.zeros_like(means)
    else:
        roots = math.sqrt(k * plan.b) * (means - center)
    meta = {"n": n, "b": plan.b, "k": k, "B": plan.B, "seed": plan.seed,
            "statistic": statistic, "center": _jsonable(center)}
    if keys:
        meta["keys"] = list(keys)
    return BootstrapDistribution(samples=roots, meta=meta)


def _is_constant(x: np.ndarray) -> bool:
    return bool(np.all(x == x[0]))


def _jsonable(v):
    return [v.real, v.imag] if isinstance(v, complex) else v


def quantile(dist: BootstrapDistribution | np.ndarray, p: float) -> float:
    """The ``ceil(p*B)``-th order statistic (1-indexed) of real samples."""
    if not 0 < p < 1:
        raise ValueError(f"quantile order must lie in (0, 1), got {p}")
    s = dist.samples if isinstance(dist, BootstrapDistribution) else np.asarray(dist)
    if s.size == 0:
        raise ValueError("empty distribution")
    if np.iscomplexobj(s):
        raise ValueError("quantile needs real samples; take .real or .imag first")
    # round away float noise in p*B (0.95*500 must give 475, not 476)
    rank = math.ceil(round(p * s.size, 9))
    return float(np.partition(s, rank - 1)[rank - 1])


def enumerate_law(x, b: int) -> dict[float, float]:
    """Exact law of the pseudo-sample mean by enumerating all ``(n-b+1)**k`` outcomes.

    Keys are means rounded to 12 decimals.  Only for tiny inputs.
    """
    from itertools import product

    x = np.asarray(x, dtype=float)
    k = num_blocks(x.size, b)
    sums = block_sums(x, b)
    law: dict[float, float] = {}
    p = 1.0 / sums.size**k
    for combo in product(range(sums.size), repeat=k):
        key = round(float(sum(sums[i] for i in combo)) / (k * b), 12)
        law[key] = law.get(key, 0.0) + p
    return law
