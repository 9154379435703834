import math

import numpy as np
import pytest
from hypothesis import strategies as st

from cyclboot.apfunc import TWO_PI, APFunction


@pytest.fixture
def cos3():
    """cos(2*pi*t/3)."""
    return APFunction.from_terms([(TWO_PI / 3, 0.5), (2 * TWO_PI / 3, 0.5)])


coeffs = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)


@st.composite
def ap_functions(draw, max_terms=6):
    """Arbitrary (complex-valued) trigonometric polynomials."""
    lams = draw(st.lists(st.floats(0, TWO_PI, exclude_max=True), min_size=1,
                         max_size=max_terms))
    cs = draw(st.lists(coeffs, min_size=len(lams), max_size=len(lams)))
    return APFunction.from_terms(zip(lams, cs))


@st.composite
def real_ap_functions(draw, max_pairs=2, nonconstant=False):
    """Real-valued polynomials: a real mean plus conjugate pairs."""
    a0 = draw(st.floats(-3, 3))
    pairs = draw(st.lists(st.tuples(st.floats(0.05, math.pi - 0.05), coeffs),
                          min_size=1 if nonconstant else 0, max_size=max_pairs,
                          unique_by=lambda p: round(p[0], 3)))
    if nonconstant:
        # keep the non-constant part visible above rounding
        pairs = [(lam, c if abs(c) > 1e-3 else 1.0) for lam, c in pairs]
    terms = [(0.0, a0)]
    for lam, c in pairs:
        terms += [(lam, c), (TWO_PI - lam, c.conjugate())]
    return APFunction.from_terms(terms)


def brute_mean(f: APFunction, s: int, n: int) -> complex:
    """Windowed mean by direct summation with math.cos/sin (independent of eval_ap)."""
    total = 0j
    for t in range(s, s + n):
        for lam, c in f.terms:
            total += c * complex(math.cos(lam * t), math.sin(lam * t))
    return total / n


def white_noise(n, seed):
    return np.random.default_rng(seed).standard_normal(n)
