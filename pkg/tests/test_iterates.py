import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import expr, polynomials
from wcompose.errors import CapExceeded, DimensionMismatch
from wcompose.faadibruno import deriv
from wcompose.iterates import (
    IterateCache,
    iterate_jets,
    iterate_symbol,
    iterate_values,
    weight_jets,
    weight_product,
)
from wcompose.symcore import Form, Polynomial, as_polynomial, form_of, parse_expr

X = Polynomial.variable(0)


def _poly(e):
    return as_polynomial(e, 1)


def test_iterate_examples():
    c = IterateCache([parse_expr("x+1")])
    assert _poly(iterate_symbol(c, 5)[0]) == X + 5
    assert _poly(iterate_symbol(c, 0)[0]) == X
    c2 = IterateCache([parse_expr("x^2+1")])
    assert iterate_symbol(c2, 2)[0].to_text() == "x^4 + 2*x^2 + 2"


def test_weight_product_examples():
    c = IterateCache([parse_expr("x+1")])
    assert _poly(weight_product(c, parse_expr("x"), 3)) == X * (X + 1) * (X + 2)
    assert _poly(weight_product(c, parse_expr("3/2"), 4)) == Polynomial.constant(Fraction(81, 16))
    with pytest.raises(ValueError):
        weight_product(c, parse_expr("x"), 0)


@settings(max_examples=40, deadline=None)
@given(polynomials(1, 3, nonzero=True), st.integers(0, 3), st.integers(0, 3))
def test_semigroup_law(phi, m, n):
    c = IterateCache([expr(phi)])
    try:
        pm = c.iterate_forms(m)[0].as_polynomial()
        pn = c.iterate_forms(n)[0].as_polynomial()
        pmn = c.iterate_forms(m + n)[0].as_polynomial()
    except CapExceeded:
        return
    assert pmn == pm.compose([pn])
    # independent oracle: compose phi with itself step by step
    direct = X
    for _ in range(m + n):
        direct = phi.compose([direct])
    assert pmn == direct
    if phi.degree() >= 1:
        assert pmn.degree() == phi.degree() ** (m + n)


@settings(max_examples=40, deadline=None)
@given(polynomials(1, 2, nonzero=True), polynomials(1, 2, nonzero=True), st.integers(1, 3), st.integers(1, 3))
def test_cocycle_law(psi, phi, m, n):
    c = IterateCache([expr(phi)])
    w = lambda k: c.weight_forms(Form.poly(psi), k).as_polynomial()  # noqa: E731
    try:
        lhs = w(m + n)
        rhs = w(n) * w(m).compose([c.iterate_forms(n)[0].as_polynomial()])
    except CapExceeded:
        return
    assert lhs == rhs
    prod = Polynomial.one()
    it = X
    for _ in range(m + n):
        prod = prod * psi.compose([it])
        it = phi.compose([it])
    assert lhs == prod
    if phi.degree() >= 1:
        assert lhs.degree() == psi.degree() * sum(phi.degree() ** j for j in range(m + n))


def test_exp_iterate_derivative_is_weight_product():
    # (phi_n)' equals phi^{n,phi} for phi = psi = exp, compared in log space
    c = IterateCache([parse_expr("exp(x)")])
    ex = form_of(parse_expr("exp(x)"), 1)
    for n in range(1, 6):
        d_it = c.iterate_forms(n)[0].diff(0)
        w = c.weight_forms(ex, n)
        for x in (-1, 0, 1):
            a, b = d_it.eval_logreal([x]), w.eval_logreal([x])
            assert a.sign == b.sign == 1
            if math.isfinite(a.logmag):
                assert a.logmag == pytest.approx(b.logmag, rel=1e-9)
            else:
                assert a.log.cmp(b.log) == 0


def test_numeric_cocycle_for_exp_weight():
    phi = form_of(parse_expr("x^2+1"), 1)
    psi = form_of(parse_expr("exp(x)"), 1)
    for x in (-0.5, 0.3, 1.2):
        pts = iterate_values([phi], [x], 6)
        # psi^{m+n}(x) = psi^{n}(x) * psi^{m}(phi_n(x)) with m = 2, n = 3
        w = lambda start, k: sum(float(psi.eval_logreal(pts[start + j]).logmag) for j in range(k))  # noqa: E731
        lhs = w(0, 5)
        rhs = w(0, 3) + w(3, 2)
        assert lhs == pytest.approx(rhs, rel=1e-9)


def test_caps():
    c = IterateCache([parse_expr("x^2+1")], degree_cap=64)
    iterate_symbol(c, 6)
    with pytest.raises(CapExceeded):
        iterate_symbol(c, 7)
    with pytest.raises(CapExceeded):
        weight_product(c, parse_expr("x"), 7)
    small = IterateCache([parse_expr("x^2+x+1")], node_cap=8)
    with pytest.raises(CapExceeded):
        small.iterate_forms(3)


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        IterateCache([parse_expr("x1 + x2", 2)])
    c = IterateCache([parse_expr("x2", 2), parse_expr("x1", 2)])
    assert c.iterate_forms(2) == c.iterate_forms(0)


@pytest.mark.parametrize("phi_text", ["x^2+1", "1/2*x^3 - x", "x+1"])
def test_jets_match_symbolic_derivatives(phi_text):
    phi = form_of(parse_expr(phi_text), 1)
    psi = form_of(parse_expr("x^2 - 3"), 1)
    c = IterateCache([parse_expr(phi_text)])
    order = 3
    for x in (-1.25, 0.0, 0.5, 1.5):
        jets = iterate_jets(phi, x, 3, order)
        wj = weight_jets(psi, jets, order)
        for n in range(4):
            it = c.iterate_forms(n)[0]
            for k in range(order + 1):
                want = float(deriv(it, (k,)).eval_logreal([x]))
                assert float(jets[n][k]) == pytest.approx(want, rel=1e-9, abs=1e-9)
        for n in range(1, 4):
            w = c.weight_forms(psi, n)
            for k in range(order + 1):
                want = float(deriv(w, (k,)).eval_logreal([x]))
                assert float(wj[n][k]) == pytest.approx(want, rel=1e-9, abs=1e-6)


def test_jets_survive_overflow():
    jets = iterate_jets(form_of(parse_expr("x^2+1"), 1), 10.0, 20, 2)
    top = jets[-1]
    assert top[0].sign == 1 and math.isinf(float(top[0]))
    assert top[1].log > jets[-2][1].log


def test_concurrent_cache_reads():
    from concurrent.futures import ThreadPoolExecutor

    c = IterateCache([parse_expr("x^2 - 2")])
    with ThreadPoolExecutor(4) as pool:
        outs = list(pool.map(lambda n: c.iterate_forms(n)[0], [5, 4, 5, 3, 5, 5]))
    assert outs[0] == outs[2] == outs[4]
