"""Almost periodic functions represented as finite trigonometric polynomials.

Convention: synthesis is ``f(t) = sum_k a_k exp(+i lam_k t)`` and analysis
uses ``exp(-i lam t)``, so :func:`fourier_coeff` inverts :func:`eval_ap`.
Time indices are integers starting at 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi
FREQ_ATOL = 1e-9


def wrap_frequency(lam: float) -> float:
    """Map ``lam`` into ``[0, 2*pi)``, snapping values within FREQ_ATOL of 2*pi to 0."""
    w = math.fmod(float(lam), TWO_PI)
    if w < 0:
        w += TWO_PI
    if TWO_PI - w < FREQ_ATOL:
        w = 0.0
    return w


@dataclass(frozen=True)
class APFunction:
    """A finite trigonometric polynomial on the integers.

    ``terms`` holds ``(lam, coeff)`` pairs with distinct ``lam`` in
    ``[0, 2*pi)``, sorted ascending.  Use :meth:`from_terms` to build one from
    unsorted or duplicated input; duplicates (within ``FREQ_ATOL``) are summed.
    """

    terms: tuple[tuple[float, complex], ...]

    def __post_init__(self):
        prev = -math.inf
        for lam, coeff in self.terms:
            if not 0.0 <= lam < TWO_PI:
                raise ValueError(f"frequency {lam} outside [0, 2*pi)")
            if lam - prev <= FREQ_ATOL:
                raise ValueError("frequencies must be sorted and distinct")
            if not cmath.isfinite(coeff):
                raise ValueError("coefficients must be finite")
            prev = lam

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[float, complex]]) -> "APFunction":
        merged: list[list] = []
        for lam, coeff in sorted(((wrap_frequency(l), complex(c)) for l, c in terms),
                                 key=lambda p: p[0]):
            if merged and lam - merged[-1][0] <= FREQ_ATOL:
                merged[-1][1] += coeff
            else:
                merged.append([lam, coeff])
        return cls(tuple((l, c) for l, c in merged))

    @classmethod
    def constant(cls, c: float) -> "APFunction":
        return cls(((0.0, complex(c)),))

    @classmethod
    def cosine(cls, lam: float, amplitude: float = 1.0, offset: float = 0.0) -> "APFunction":
        """``offset + amplitude * cos(lam * t)`` as a real-valued APFunction."""
        terms = [(lam, amplitude / 2), (TWO_PI - lam, amplitude / 2)]
        if offset:
            terms.append((0.0, offset))
        return cls.from_terms(terms)

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([lam for lam, _ in self.terms])

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([c for _, c in self.terms], dtype=complex)

    def coeff(self, lam: float) -> complex:
        """Coefficient at ``lam`` (zero if ``lam`` is not a term frequency)."""
        w = wrap_frequency(lam)
        for l, c in self.terms:
            if abs(l - w) <= FREQ_ATOL or abs(l - w) >= TWO_PI - FREQ_ATOL:
                return c
        return 0j

    @property
    def mean(self) -> complex:
        """The mean value M_t(f), i.e. the coefficient at frequency zero."""
        return self.coeff(0.0)

    def is_real(self, tol: float = 1e-12) -> bool:
        """True when every term is matched by its conjugate at ``2*pi - lam``."""
        for lam, c in self.terms:
            if lam == 0.0:
                if abs(c.imag) > tol:
                    return False
            elif abs(self.coeff(TWO_PI - lam) - c.conjugate()) > tol:
                return False
        return True

    def __call__(self, t) -> np.ndarray | complex:
        return eval_ap(self, t)

    def __mul__(self, other: "APFunction") -> "APFunction":
        return APFunction.from_terms(
            (l1 + l2, c1 * c2) for l1, c1 in self.terms for l2, c2 in other.terms
        )

    def abs_sq_sum(self, exclude_zero: bool = True) -> float:
        """Sum of ``|a(lam)|**2`` over the terms, optionally skipping ``lam = 0``."""
        return float(sum(abs(c) ** 2 for l, c in self.terms if not (exclude_zero and l == 0.0)))


def eval_ap(f: APFunction, t):
    """Evaluate ``f`` at integer time(s) ``t``; returns complex scalar or array."""
    tt = np.asarray(t, dtype=float)
    if not f.terms:
        out = np.zeros(tt.shape, dtype=complex)
    else:
        lam = f.frequencies
        coeff = f.coefficients
        # reduce lam*t mod 2*pi first so large t keeps full phase accuracy
        phase = np.mod(np.multiply.outer(tt, lam), TWO_PI)
        out = np.exp(1j * phase) @ coeff
    return complex(out) if out.ndim == 0 else out


def mean_value_est(samples: Sequence[complex], start: int, n: int) -> complex:
    """Windowed average ``(1/n) * sum_{j=s}^{s+n-1} samples(j)``.

    ``samples`` is indexed from 1 (``samples[0]`` is time 1) unless it is
    callable, in which case it is called with integer times.
    """
    if n < 1:
        raise ValueError("empty averaging window")
    if callable(samples):
        vals = np.asarray(samples(np.arange(start, start + n)))
    else:
        arr = np.asarray(samples)
        if start < 1 or start + n - 1 > arr.size:
            raise ValueError("averaging window runs outside the samples")
        vals = arr[start - 1:start - 1 + n]
    return complex(np.mean(vals))


def rate_constant(f: APFunction) -> float:
    """An admissible C with ``|window mean - a(0)| <= C/n`` for every start and length.

    Each non-zero frequency contributes the geometric-series bound
    ``|a| * 2 / |1 - exp(i lam)|``.
    """
    return float(sum(abs(c) * 2.0 / abs(1.0 - cmath.exp(1j * lam))
                     for lam, c in f.terms if lam != 0.0))


def fourier_coeff(x: Sequence[complex], lam: float) -> complex:
    """``(1/n) * sum_{t=1}^{n} x_t exp(-i lam t)``."""
    arr = np.asarray(x)
    if arr.size == 0:
        raise ValueError("empty input")
    t = np.arange(1, arr.size + 1)
    return complex(np.mean(arr * np.exp(-1j * np.mod(lam * t, TWO_PI))))
