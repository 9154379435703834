"""Simulators for periodically and almost periodically correlated series.

Gaussian noise comes from numpy's ``standard_normal`` (ziggurat) on the
Philox stream ``generator(seed)``; see :mod:`cyclboot._rng`.  Batch
generators give replicate ``r`` the seed ``derive_seed(seed, r)`` so a batch
row equals the single-series generator run with that seed.
"""

from __future__ import annotations

import csv
import io
import math
from functools import lru_cache
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

import numpy as np
from scipy.signal import lfilter

from ._rng import check_seed, derive_seed, generator
from .apfunc import TWO_PI, APFunction, eval_ap


def as_series(values) -> np.ndarray:
    """Validate and return a 1-D float array of finite values."""
    x = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.size < 1:
        raise ValueError("a series must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(x)):
        raise ValueError("series contains non-finite values")
    return x


@dataclass(frozen=True)
class Par1Spec:
    """PAR(1): ``X_t = a_t X_{t-1} + e_t`` with ``a_t = mean + amp*sin(freq*t)``."""

    n: int
    seed: int = 0
    coeff_mean: float = 2 / 3
    coeff_amp: float = 1 / 3
    coeff_freq: float = TWO_PI / 3
    noise_sd: float = 1.0
    burn_in: int = 200

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.sup_coefficient() >= 1:
            raise ValueError("explosive coefficient")
        if self.noise_sd < 0:
            raise ValueError("noise_sd must be non-negative")
        if self.burn_in < 0:
            raise ValueError("burn_in must be non-negative")
        check_seed(self.seed)

    def sup_coefficient(self) -> float:
        """``sup_t |a_t|`` over integer t (exact when the coefficient is periodic)."""
        period = _integer_period(self.coeff_freq)
        if period is None:
            return abs(self.coeff_mean) + abs(self.coeff_amp)
        return float(np.max(np.abs(self.coefficients(np.arange(period)))))

    def coefficients(self, t) -> np.ndarray:
        t = np.asarray(t)
        period = _integer_period(self.coeff_freq)
        if period is not None:
            # reduce the time first so a_{t+T} == a_t holds bit for bit
            t = np.mod(t, period)
        t = t.astype(float)
        return self.coeff_mean + self.coeff_amp * np.sin(np.mod(self.coeff_freq * t, TWO_PI))


@lru_cache(maxsize=64)
def _integer_period(freq: float, max_period: int = 10_000) -> int | None:
    # smallest q with freq*q a multiple of 2*pi, if any up to max_period
    cycles = freq / TWO_PI
    for q in range(1, max_period + 1):
        if abs(cycles * q - round(cycles * q)) < 1e-9:
            return q
    return None


def _par1_recursion(spec: Par1Spec, noise: np.ndarray) -> np.ndarray:
    # noise: (R, burn_in + n); time runs 1 - burn_in, ..., n so X_1 always uses a_1
    total = noise.shape[1]
    a = spec.coefficients(np.arange(1 - spec.burn_in, spec.n + 1))
    out = np.empty_like(noise)
    x = np.zeros(noise.shape[0])
    for j in range(total):
        x = a[j] * x + noise[:, j]
        out[:, j] = x
    return out[:, spec.burn_in:]


def gen_par1(spec: Par1Spec) -> np.ndarray:
    noise = spec.noise_sd * generator(spec.seed).standard_normal(spec.burn_in + spec.n)
    return _par1_recursion(spec, noise[None, :])[0]


BaseKind = Literal["iid-gaussian", "ar1"]


@dataclass(frozen=True)
class ModulatedSpec:
    """Amplitude-modulated series ``X_t = Re f(t) * Z_t``.

    ``base`` is ``"iid-gaussian"`` (``Z_t ~ N(0, sd^2)``) or ``"ar1"``
    (stationary ``Z_t = phi Z_{t-1} + e_t``, ``e_t ~ N(0, sd^2)``).
    """

    n: int
    envelope: APFunction
    seed: int = 0
    base: BaseKind = "iid-gaussian"
    sd: float = 1.0
    phi: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.envelope.is_real():
            raise ValueError("envelope must be real-valued")
        if self.base not in ("iid-gaussian", "ar1"):
            raise ValueError(f"unknown base {self.base!r}")
        if self.base == "ar1" and not abs(self.phi) < 1:
            raise ValueError("ar1 base needs |phi| < 1")
        if self.sd < 0:
            raise ValueError("sd must be non-negative")
        check_seed(self.seed)


def _base_noise(spec: ModulatedSpec, rng: np.random.Generator) -> np.ndarray:
    e = spec.sd * rng.standard_normal(spec.n)
    if spec.base == "iid-gaussian" or spec.phi == 0.0:
        return e
    z0 = e[0] / math.sqrt(1 - spec.phi**2)
    z, _ = lfilter([1.0], [1.0, -spec.phi], e[1:], zi=[spec.phi * z0])
    return np.concatenate([[z0], z])


def gen_modulated(spec: ModulatedSpec) -> np.ndarray:
    z = _base_noise(spec, generator(spec.seed))
    f = np.real(eval_ap(spec.envelope, np.arange(1, spec.n + 1)))
    return f * z


# Models bundle a generator with its known mean, for the Monte Carlo harness.

@dataclass(frozen=True)
class Par1Model:
    coeff_mean: float = 2 / 3
    coeff_amp: float = 1 / 3
    coeff_freq: float = TWO_PI / 3
    noise_sd: float = 1.0
    burn_in: int = 200
    name: str = field(default="par1", init=False)
    mu: float = field(default=0.0, init=False)

    def spec(self, n: int, seed: int) -> Par1Spec:
        return Par1Spec(n=n, seed=seed, coeff_mean=self.coeff_mean, coeff_amp=self.coeff_amp,
                        coeff_freq=self.coeff_freq, noise_sd=self.noise_sd, burn_in=self.burn_in)

    def simulate(self, n: int, seed: int) -> np.ndarray:
        return gen_par1(self.spec(n, seed))

    def batch(self, n: int, R: int, seed: int) -> np.ndarray:
        spec = self.spec(n, seed)
        noise = np.stack([
            self.noise_sd * generator(derive_seed(seed, r)).standard_normal(spec.burn_in + n)
            for r in range(R)
        ])
        return _par1_recursion(spec, noise)


@dataclass(frozen=True)
class ModulatedModel:
    envelope: APFunction
    base: BaseKind = "iid-gaussian"
    sd: float = 1.0
    phi: float = 0.0
    name: str = "modulated"
    mu: float = field(default=0.0, init=False)

    def spec(self, n: int, seed: int) -> ModulatedSpec:
        return ModulatedSpec(n=n, envelope=self.envelope, seed=seed, base=self.base,
                             sd=self.sd, phi=self.phi)

    def simulate(self, n: int, seed: int) -> np.ndarray:
        return gen_modulated(self.spec(n, seed))

    def batch(self, n: int, R: int, seed: int) -> np.ndarray:
        return np.stack([self.simulate(n, derive_seed(seed, r)) for r in range(R)])


def IIDModel(sd: float = 1.0) -> ModulatedModel:
    """Gaussian white noise, i.e. a modulated series with unit envelope."""
    return ModulatedModel(APFunction.constant(1.0), sd=sd, name="iid")


@dataclass(frozen=True)
class ZeroModel:
    name: str = field(default="zeros", init=False)
    mu: float = field(default=0.0, init=False)

    def simulate(self, n: int, seed: int) -> np.ndarray:
        return np.zeros(n)

    def batch(self, n: int, R: int, seed: int) -> np.ndarray:
        return np.zeros((R, n))


def write_csv(x, path: str | Path | None = None) -> str:
    """Single-column CSV with header ``x``; returns the text and writes it if ``path``."""
    buf = io.StringIO()
    buf.write("x\n")
    for v in as_series(x):
        buf.write(f"{float(v)!r}\n")
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def read_csv(path: str | Path) -> np.ndarray:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0]] != ["x"]:
        raise ValueError(f"{path}: expected a single-column CSV with header 'x'")
    try:
        vals = [float(r[0]) for r in rows[1:] if r]
    except (ValueError, IndexError) as exc:
        raise ValueError(f"{path}: malformed value ({exc})") from None
    return as_series(vals)
