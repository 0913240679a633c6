import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import seeded
from wcompose.errors import ZeroPolynomial
from wcompose.rootcheck import (
    cauchy_bound,
    has_fixed_point,
    is_positive_on_reals,
    isolate_roots,
    root_certificate,
    sturm_count,
)
from wcompose.symcore import Polynomial

X = Polynomial.variable(0)
P = Polynomial.from_coeffs


@pytest.mark.parametrize(
    "coeffs, a, b, want",
    [
        ([-1, 0, 1], -math.inf, math.inf, 2),
        ([1, 0, 1], -math.inf, math.inf, 0),
        ([0, -1, 0, 1], 0, math.inf, 1),
        ([0, -1, 0, 1], -1, 1, 2),  # (-1, 1] holds 0 and 1
        ([0, -1, 0, 1], -2, -1, 1),
        ([5], -math.inf, math.inf, 0),
    ],
)
def test_sturm_count_examples(coeffs, a, b, want):
    assert sturm_count(P(coeffs), a, b) == want


def test_zero_polynomial_is_rejected():
    with pytest.raises(ZeroPolynomial):
        sturm_count(Polynomial.zero())
    with pytest.raises(ZeroPolynomial):
        is_positive_on_reals(Polynomial.zero())


def test_interval_must_be_ordered():
    with pytest.raises(ValueError):
        sturm_count(X, 1, 0)


ROOTS = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 6))


@st.composite
def factored(draw):
    """A polynomial built from known factors, with its distinct real roots."""
    roots = draw(st.lists(ROOTS, max_size=4))
    quads = draw(st.lists(st.tuples(ROOTS, ROOTS.filter(lambda b: b > 0)), max_size=2))
    mult = draw(st.lists(st.integers(1, 2), min_size=len(roots), max_size=len(roots)))
    p = Polynomial.constant(draw(st.sampled_from([1, -2, Fraction(1, 3)])))
    for r, m in zip(roots, mult):
        p = p * (X - r) ** m
    for a, b in quads:
        p = p * ((X - a) ** 2 + b)
    return p, sorted(set(roots))


@settings(max_examples=150, deadline=None)
@given(factored())
def test_sturm_matches_constructed_roots(case):
    p, roots = case
    assert sturm_count(p) == len(roots)
    iv = isolate_roots(p)
    assert len(iv) == len(roots)
    for (lo, hi), r in zip(iv, roots):
        assert lo < r <= hi
    for (_, hi), (lo, _) in zip(iv, iv[1:]):
        assert hi <= lo
    if roots:
        assert sturm_count(p, roots[0] - 1, roots[-1]) == len(roots)
        assert sturm_count(p, roots[-1], math.inf) == 0


@settings(max_examples=80, deadline=None)
@given(factored())
def test_roots_lie_inside_cauchy_bound(case):
    p, roots = case
    if p.degree() < 1:
        return
    B = cauchy_bound(p.coeffs())
    assert all(abs(r) <= B for r in roots)


def test_certificate_fields():
    cert = root_certificate(P([0, -1, 0, 1]))
    assert cert.count == 3 == len(cert.intervals)
    assert not cert.everywhere


@pytest.mark.parametrize(
    "coeffs, want",
    [([1, 0, 1], False), ([0, 0, 1], True), ([1, 1], False), ([3, 1, 0, 0, 1], False), ([0, 1], True)],
)
def test_has_fixed_point_examples(coeffs, want):
    found, cert = has_fixed_point(P(coeffs))
    assert found is want
    if coeffs == [0, 1]:
        assert cert.everywhere


def _numeric_fixed_point(phi):
    # oracle: sign changes (or exact zeros) of phi(x) - x on a dense log grid
    g = np.array([float(c) for c in (phi - X).coeffs()][::-1])
    mags = np.concatenate([[0.0], np.logspace(-6, 6, 40001)])
    xs = np.unique(np.concatenate([-mags, mags]))
    v = np.polyval(g, xs)
    return bool(np.any(v == 0) or np.any(np.sign(v[1:]) != np.sign(v[:-1])))


def test_fixed_points_agree_with_sign_scan():
    rng = seeded(7)
    corpus = [P([1, 0, 1]), P([0, 0, 1]), P([3, 1, 0, 0, 1]), P([0, -1, 0, 1]), P([2, 1])]
    for _ in range(60):
        deg = rng.randint(1, 5)
        corpus.append(P([rng.randint(-6, 6) for _ in range(deg)] + [rng.choice([-2, -1, 1, 3])]))
    for phi in corpus:
        if phi - X == Polynomial.zero():
            continue
        assert has_fixed_point(phi)[0] == _numeric_fixed_point(phi), phi


def test_fixed_point_free_polynomials_have_even_degree():
    rng = seeded(11)
    for _ in range(100):
        deg = rng.randint(2, 6)
        phi = P([rng.randint(-4, 4) for _ in range(deg)] + [rng.choice([-1, 1, 2])])
        found, _ = has_fixed_point(phi)
        if not found:
            assert phi.degree() % 2 == 0


@pytest.mark.parametrize(
    "coeffs, want",
    [([1, 0, 1], True), ([0, 0, 1], False), ([-1, 0, -1], False), ([5, 2, 1], True), ([3], True), ([-3], False)],
)
def test_positivity(coeffs, want):
    assert is_positive_on_reals(P(coeffs)) is want
