"""Shared generators and independent oracles for the test suite."""

import random
from fractions import Fraction
from math import comb

from hypothesis import strategies as st

from wcompose.symcore import Polynomial, poly_to_expr

COEFFS = st.one_of(
    st.integers(-5, 5).map(Fraction),
    st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4)),
)


@st.composite
def polynomials(draw, d=1, max_deg=4, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, 5))
    terms = {}
    for _ in range(n):
        exps = tuple(draw(st.integers(0, max_deg)) for _ in range(d))
        if sum(exps) > max_deg:
            continue
        terms[exps] = draw(COEFFS)
    p = Polynomial(d, terms)
    if nonzero and p.is_zero():
        p = Polynomial.constant(draw(st.integers(1, 5)), d)
    return p


def random_poly(rng, d=1, max_deg=4, nonzero=True, low=-5, high=5):
    """Seeded counterpart of :func:`polynomials` for the acceptance runs."""
    terms = {}
    for _ in range(rng.randint(1, 5)):
        deg = rng.randint(0, max_deg)
        exps = [0] * d
        for _ in range(deg):
            exps[rng.randrange(d)] += 1
        terms[tuple(exps)] = Fraction(rng.randint(low, high), rng.choice([1, 1, 2, 3]))
    p = Polynomial(d, terms)
    if nonzero and p.is_zero():
        p = Polynomial.constant(rng.randint(1, 5), d)
    return p


def expr(p):
    return poly_to_expr(p)


def pdiff(p, beta):
    """Direct partial derivative of a Polynomial, the oracle route."""
    for axis, k in enumerate(beta):
        for _ in range(k):
            p = p.diff(axis)
    return p


def compose_polys(f, phis):
    return f.compose(list(phis))


def bell_by_recurrence(n, k):
    """Partial Bell polynomial by ``B_{n,k} = sum_i C(n-1,i-1) x_i B_{n-i,k-1}``."""
    nv = max(n - k + 1, 1)
    memo = {}

    def rec(n, k):
        if (n, k) in memo:
            return memo[(n, k)]
        if n == 0 and k == 0:
            r = Polynomial.one(nv)
        elif n == 0 or k == 0:
            r = Polynomial.zero(nv)
        else:
            r = Polynomial.zero(nv)
            for i in range(1, n - k + 2):
                if i > nv:
                    break
                r = r + rec(n - i, k - 1) * Polynomial.variable(i - 1, nv) * comb(n - 1, i - 1)
        memo[(n, k)] = r
        return r

    return rec(n, k)


def seeded(seed):
    return random.Random(seed)
