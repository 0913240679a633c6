import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import expr, polynomials, random_poly, seeded
from wcompose.errors import DimensionMismatch
from wcompose.growth import (
    Certainty,
    GridConfig,
    GrowthTag,
    Seminorm,
    band_running_max,
    check_small_decay,
    exists_q,
    exp_tower_inequality,
    numeric_sup,
    poly_sup_finite,
    smallest_numeric_q,
    tail_decision,
)
from wcompose.iterates import IterateCache
from wcompose.symcore import Polynomial, form_of, parse_expr

X = Polynomial.variable(0)
P = Polynomial.from_coeffs


def _log_ratio_exact(g, phi, p, q, x):
    # oracle: exact big-rational values of g and phi, logs taken of the integers
    def log_abs(v):
        v = abs(Fraction(v))
        return math.log(v.numerator) - math.log(v.denominator)

    return float(p) * math.log1p(x) + log_abs(g.evaluate([x])) - float(q) * log_abs(1 + abs(phi.evaluate([x])))


def _oracle_finite(g, phi, p, q):
    """Finite iff the log ratio stops growing far out, judged at x = 2^300 and 2^400 on both rays."""
    if g.is_zero():
        return True
    slopes = []
    for s in (1, -1):
        a = _log_ratio_exact(g, phi, p, q, s * 2**300) if s > 0 else _log_ratio_exact(g.compose([-X]), phi.compose([-X]), p, q, 2**300)
        b = _log_ratio_exact(g, phi, p, q, s * 2**400) if s > 0 else _log_ratio_exact(g.compose([-X]), phi.compose([-X]), p, q, 2**400)
        slopes.append((b - a) / (100 * math.log(2)))
    return max(slopes) < 1e-6


@pytest.mark.parametrize(
    "g, phi, p, q, want",
    [
        (P([1]), P([1, 0, 1]), 3, 2, GrowthTag.FINITE),
        (P([0, 0, 0, 1]), X, 1, 3, GrowthTag.INFINITE),
        (Polynomial.zero(), P([4]), 7, 0, GrowthTag.FINITE),
        (P([1]), P([3]), Fraction(1, 2), 9, GrowthTag.INFINITE),
    ],
)
def test_exact_examples(g, phi, p, q, want):
    assert poly_sup_finite(g, phi, p, q).tag is want


def test_exists_q_examples():
    assert exists_q(2 * X, P([1, 0, 1]), 2) == Fraction(3, 2)
    assert exists_q(P([1]), X, 5) == 5
    assert exists_q(X, P([3]), 1) is None
    assert exists_q(Polynomial.zero(), P([3]), 1) == 0


def test_exact_path_rejects_multivariate_data():
    with pytest.raises(DimensionMismatch):
        poly_sup_finite(Polynomial(2, {(1, 1): 1}), X, 1, 1)
    with pytest.raises(ValueError):
        Seminorm(0, (0,))


PQ = st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)])


@settings(max_examples=120, deadline=None)
@given(polynomials(1, 6), polynomials(1, 4), PQ, PQ)
def test_exact_rule_matches_asymptotic_oracle(g, phi, p, q):
    got = poly_sup_finite(g, phi, p, q).tag
    assert (got is GrowthTag.FINITE) == _oracle_finite(g, phi, p, q)


@settings(max_examples=80, deadline=None)
@given(polynomials(1, 6), polynomials(1, 4), PQ, PQ, st.sampled_from([Fraction(1, 8), 1, 5]))
def test_monotone_in_q(g, phi, p, q, dq):
    if poly_sup_finite(g, phi, p, q).tag is GrowthTag.FINITE:
        assert poly_sup_finite(g, phi, p, q + dq).tag is GrowthTag.FINITE


@settings(max_examples=80, deadline=None)
@given(polynomials(1, 6, nonzero=True), polynomials(1, 4), PQ)
def test_exists_q_is_tight(g, phi, p):
    q = exists_q(g, phi, p)
    if q is None:
        assert phi.degree() < 1
        assert poly_sup_finite(g, phi, p, 10**6).tag is GrowthTag.INFINITE
        return
    assert poly_sup_finite(g, phi, p, q).tag is GrowthTag.FINITE
    assert poly_sup_finite(g, phi, p, q - Fraction(1, 8)).tag is GrowthTag.INFINITE


def test_numeric_examples():
    ex = parse_expr("exp(x)")
    assert numeric_sup(ex, [ex], 1, 2).tag is GrowthTag.LIKELY_FINITE
    assert numeric_sup(parse_expr("1"), [parse_expr("x+1")], 1, 1).tag is GrowthTag.LIKELY_FINITE
    c = IterateCache([parse_expr("sqrt(1+x^2)")])
    w3 = c.weight_forms(form_of(parse_expr("x"), 1), 3).to_expr()
    assert numeric_sup(w3, [parse_expr("sqrt(1+x^2)")], Fraction(1, 8), 2).tag is GrowthTag.LIKELY_INFINITE


def test_numeric_never_returns_exact_tags():
    rng = seeded(3)
    for _ in range(30):
        g, phi = random_poly(rng, max_deg=5), random_poly(rng, max_deg=3)
        v = numeric_sup(expr(g), [expr(phi)], rng.choice([1, 2]), rng.choice([1, 2, 3]))
        assert not v.tag.exact


def test_numeric_agrees_with_exact_on_random_instances():
    rng = seeded(5)
    unknown = 0
    for _ in range(40):
        g, phi = random_poly(rng, max_deg=6), random_poly(rng, max_deg=4)
        p, q = rng.choice([Fraction(1, 2), 1, 2, 3]), rng.choice([Fraction(1, 2), 1, 2, 3])
        exact = poly_sup_finite(g, phi, p, q).tag
        num = numeric_sup(expr(g), [expr(phi)], p, q).tag
        if num is GrowthTag.UNKNOWN:
            unknown += 1
            continue
        assert (num is GrowthTag.LIKELY_FINITE) == (exact is GrowthTag.FINITE), (g, phi, p, q)
    assert unknown < 8


def test_two_dimensional_grid():
    phi = [parse_expr("x1^2 + 1", 2), parse_expr("x2", 2)]
    assert numeric_sup(parse_expr("x1*x2", 2), phi, 1, 3).tag is GrowthTag.LIKELY_FINITE
    assert numeric_sup(parse_expr("x1^3", 2), [parse_expr("x1", 2), parse_expr("x2", 2)], 1, 1).tag is GrowthTag.LIKELY_INFINITE


def test_smallest_numeric_q():
    q, top = smallest_numeric_q(parse_expr("x^3"), [parse_expr("x^2+1")], 1, 16)
    assert top.tag is GrowthTag.LIKELY_FINITE
    assert q == 2


def test_band_bookkeeping():
    cfg = GridConfig(J=16, j_min=-8, per_band=8)
    assert [cfg.band_of(j) for j in (-8, -7, 0, 1, 8, 9, 16)] == [0, 1, 1, 2, 2, 3, 3]
    vals = np.array([[float(j) for j in cfg.exponents()]])
    rows = band_running_max(vals, cfg)
    assert [r.running_max for r in rows] == [-8.0, 0.0, 8.0, 16.0]
    assert tail_decision([0.0, 1.0, 2.0, 3.0]) is GrowthTag.LIKELY_INFINITE
    assert tail_decision([0.0, 1.0, 1.0, 1.0, 1.0]) is GrowthTag.LIKELY_FINITE
    assert tail_decision([0.0, 0.2, 0.4, 0.6]) is GrowthTag.UNKNOWN
    assert tail_decision([0.0, 1.0]) is GrowthTag.UNKNOWN
    assert tail_decision([0.0, float("nan"), 1.0, 1.0]) is GrowthTag.UNKNOWN


def test_small_decay_polynomial_weight():
    psi = P([-5, 0, 1])
    c = check_small_decay(expr(psi), [parse_expr("x^2+1")])
    assert c.verdict is Certainty.YES and c.exact and c.m == 7
    # oracle: beyond m, |psi| only grows, so the infimum is at |x| = m
    xs = [Fraction(c.m) + Fraction(k, 3) for k in range(200)]
    vals = [abs(psi.evaluate([s * x])) * (1 + x) ** 7 for x in xs for s in (1, -1)]
    assert min(vals) >= c.lower_bound > 0


@settings(max_examples=60, deadline=None)
@given(polynomials(1, 5, nonzero=True))
def test_small_decay_certificate_is_valid(psi):
    c = check_small_decay(expr(psi), [parse_expr("x")])
    assert c.verdict is Certainty.YES and c.exact
    m = c.m
    for k in range(60):
        x = m + Fraction(k, 4)
        for s in (1, -1):
            val = (1 + x) ** int(m) * (1 + x) ** int(m) * abs(psi.evaluate([s * x]))
            assert val >= c.lower_bound


def test_small_decay_other_cases():
    assert check_small_decay(parse_expr("1"), [parse_expr("x")]).m == 1
    assert check_small_decay(parse_expr("0"), [parse_expr("x")]).verdict is Certainty.NO
    gauss = check_small_decay(parse_expr("exp(-x^2)"), [parse_expr("x")])
    assert not gauss.exact and gauss.verdict is Certainty.LIKELY_NO
    slow = check_small_decay(parse_expr("exp(-x)"), [parse_expr("x^2")])
    assert not slow.exact


@pytest.mark.parametrize("alpha", [0, 1, 2])
def test_exp_tower_inequality_holds_from_n_alpha(alpha):
    rows, n_alpha = exp_tower_inequality(alpha)
    assert n_alpha is not None and n_alpha <= 3
    for r in rows:
        if r.n >= n_alpha:
            assert r.violations == 0 and r.points == 101
    # n = 1 fails on the left half line: exp(x) > exp(x)^3 once x < 0
    assert rows[0].violations > 0
