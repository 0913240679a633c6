"""Canonical normal form for grammar expressions.

Every expression of the grammar expands to a finite sum

    sum_i  P_i(x) * prod_j sqrt(p_j(x))^{k_ij} * exp(E_i(x))

with polynomial ``P_i``, positive polynomials ``p_j`` and an exponent
argument ``E_i`` that is itself a normal form.  Negative ``k`` encodes the
quotients that appear when a square root is differentiated.  Terms sharing
an exponent argument and the same set of odd square-root powers are merged
over a common denominator, which makes the representation canonical for
everything the grammar produces.
"""

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import numpy as np

from ..errors import DimensionMismatch, GrammarClosureError
from . import expr as ex
from .logreal import LOG_ONE, LOG_ZERO, LogReal
from .polynomial import Polynomial


def _key_sort(key):
    sq, ea = key
    return (tuple((p.sort_key(), k) for p, k in sq), (0,) if ea is None else (1, ea.sort_key()))


def _rational_sqrt(c):
    """Exact square root of a nonnegative Fraction, or None."""
    n, d = c.numerator, c.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _canon(d, raw):
    """Canonical term dict from an iterable of ``((sq, ea), coef)``."""
    groups = defaultdict(list)
    for (sq, ea), coef in raw:
        if coef.is_zero():
            continue
        odd = tuple(sorted((p for p, k in sq if k % 2), key=Polynomial.sort_key))
        halves = {p: (k - (k % 2)) // 2 for p, k in sq}
        groups[(ea, odd)].append((coef, halves))
    out = {}
    for (ea, odd), items in groups.items():
        polys = {}
        for _, halves in items:
            for p in halves:
                polys[p] = p
        denom = {p: max([0] + [-h.get(p, 0) for _, h in items]) for p in polys}
        num = Polynomial.zero(d)
        for coef, halves in items:
            t = coef
            for p in polys:
                e = halves.get(p, 0) + denom[p]
                if e:
                    t = t * p**e
            num = num + t
        if num.is_zero():
            continue
        for p in sorted(polys, key=Polynomial.sort_key):
            while denom[p] > 0:
                q = num.exact_div(p)
                if q is None:
                    break
                num = q
                denom[p] -= 1
        sq = []
        for p in polys:
            k = (1 if p in odd else 0) - 2 * denom[p]
            if k:
                sq.append((p, k))
        sq = tuple(sorted(sq, key=lambda pk: (pk[0].sort_key(), pk[1])))
        key = (sq, ea)
        if key in out:
            num = out[key] + num
            if num.is_zero():
                del out[key]
                continue
        out[key] = num
    return out


class Form:
    """Immutable normal form in ``d`` variables."""

    __slots__ = ("d", "_terms", "_hash", "_sk")

    def __init__(self, d, terms):
        self.d = d
        self._terms = terms
        self._hash = None
        self._sk = None

    # --- constructors -------------------------------------------------------

    @staticmethod
    def from_raw(d, raw):
        return Form(d, _canon(d, raw))

    @staticmethod
    def const(c, d=1):
        c = Fraction(c)
        return Form(d, {((), None): Polynomial.constant(c, d)} if c else {})

    @staticmethod
    def poly(p):
        return Form(p.nvars, {} if p.is_zero() else {((), None): p})

    @staticmethod
    def var(axis, d=1):
        if not 0 <= axis < d:
            raise DimensionMismatch(f"variable index {axis + 1} exceeds dimension {d}")
        return Form.poly(Polynomial.variable(axis, d))

    @staticmethod
    def sqrt(p, k=1, check=True):
        """``p^(k/2)`` for a polynomial ``p`` positive on the whole space."""
        d = p.nvars
        if k == 0:
            return Form.const(1, d)
        if p.is_constant():
            c = p.constant_value()
            if c <= 0:
                raise GrammarClosureError("square root of a nonpositive constant")
            r = _rational_sqrt(c)
            if r is not None:
                return Form.const(r**k, d)
        elif check:
            _certify_positive(p)
        return Form.from_raw(d, [((((p, k),), None), Polynomial.one(d))])

    @staticmethod
    def exp(arg):
        if arg.is_zero():
            return Form.const(1, arg.d)
        return Form(arg.d, {((), arg): Polynomial.one(arg.d)})

    # --- inspection ---------------------------------------------------------

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def as_polynomial(self):
        """The polynomial this form equals, or ``None``."""
        if not self._terms:
            return Polynomial.zero(self.d)
        if len(self._terms) == 1:
            (key, coef), = self._terms.items()
            if key == ((), None):
                return coef
        return None

    def is_polynomial(self):
        return self.as_polynomial() is not None

    def has_exp(self):
        return any(ea is not None for (_, ea) in self._terms)

    def has_sqrt(self):
        return any(sq for (sq, _) in self._terms) or any(
            ea is not None and (ea.has_sqrt()) for (_, ea) in self._terms
        )

    def sort_key(self):
        if self._sk is None:
            self._sk = tuple(sorted((_key_sort(k), c.sort_key()) for k, c in self._terms.items()))
        return self._sk

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.d == other.d and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.d, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Form({self.to_expr().to_text(self.d)!r})"

    # --- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Form):
            if other.d != self.d:
                raise DimensionMismatch("forms in different dimensions")
            return other
        if isinstance(other, Polynomial):
            return Form.poly(other)
        if isinstance(other, (int, Fraction)):
            return Form.const(other, self.d)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        return Form.from_raw(self.d, list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return Form(self.d, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Form(self.d, {})
            return Form(self.d, {k: v.scale(c) for k, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        raw = []
        for (sq1, e1), c1 in self._terms.items():
            for (sq2, e2), c2 in other._terms.items():
                ks = {}
                for p, k in sq1 + sq2:
                    ks[p] = ks.get(p, 0) + k
                sq = tuple((p, k) for p, k in ks.items() if k)
                if e1 is None:
                    ea = e2
                elif e2 is None:
                    ea = e1
                else:
                    ea = e1 + e2
                    if ea.is_zero():
                        ea = None
                raw.append(((sq, ea), c1 * c2))
        return Form.from_raw(self.d, raw)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("form powers must be nonnegative integers")
        result = Form.const(1, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # --- calculus -------------------------------------------------------------

    def diff(self, axis):
        if not 0 <= axis < self.d:
            raise DimensionMismatch(f"axis {axis} out of range for dimension {self.d}")
        return _diff(self, axis)

    def compose(self, inner):
        """Substitute the forms ``inner[i]`` for the variables."""
        if len(inner) != self.d:
            raise DimensionMismatch(f"composition needs {self.d} inner expressions, got {len(inner)}")
        dout = inner[0].d
        if any(f.d != dout for f in inner):
            raise DimensionMismatch("inner expressions live in different dimensions")
        one = Form.const(1, dout)
        total = Form(dout, {})
        for (sq, ea), coef in sorted(self._terms.items(), key=lambda kv: _key_sort(kv[0])):
            t = coef.evaluate(list(inner), one=one)
            for p, k in sq:
                q = p.evaluate(list(inner), one=one).as_polynomial()
                if q is None:
                    raise GrammarClosureError("square root argument does not stay polynomial under composition")
                t = t * Form.sqrt(q, k)
            if ea is not None:
                t = t * Form.exp(ea.compose(inner))
            total = total + t
        return total

    # --- evaluation -----------------------------------------------------------

    def eval_logreal(self, point):
        """Value at a real point as a :class:`LogReal` (overflow free)."""
        pts = [LogReal.of(v) for v in point]
        if len(pts) != self.d:
            raise DimensionMismatch("evaluation point has the wrong dimension")
        total = LOG_ZERO
        for (sq, ea), coef in sorted(self._terms.items(), key=lambda kv: _key_sort(kv[0])):
            t = coef.evaluate(pts, one=LOG_ONE)
            if t.sign == 0:
                continue
            for p, k in sq:
                t = t * (p.evaluate(pts, one=LOG_ONE) ** Fraction(k, 2))
            if ea is not None:
                t = t * ea.eval_logreal(pts).exp()
            total = total + t
        return total

    def eval_float(self, xs):
        """Vectorised float64 evaluation; ``xs`` is a list of ``d`` arrays.

        Overflow shows up as ``inf``/``nan`` entries; callers fall back to
        :meth:`eval_logreal` there.
        """
        xs = [np.asarray(x, dtype=float) for x in xs]
        with np.errstate(all="ignore"):
            total = np.zeros(np.broadcast(*xs).shape)
            for (sq, ea), coef in self._terms.items():
                t = _poly_float(coef, xs)
                for p, k in sq:
                    t = t * _poly_float(p, xs) ** (k / 2.0)
                if ea is not None:
                    t = t * np.exp(ea.eval_float(xs))
                total = total + t
        return total

    # --- conversion -------------------------------------------------------------

    def to_expr(self):
        if not self._terms:
            return ex.Const(0)
        terms = []
        for (sq, ea), coef in sorted(self._terms.items(), key=lambda kv: _key_sort(kv[0])):
            factors = []
            extra = [ex.SqrtPoly(p, k) for p, k in sq]
            if ea is not None:
                extra.append(ex.Exp(ea.to_expr()))
            if coef.is_constant():
                c = coef.constant_value()
                if c != 1 or not extra:
                    factors.append(ex.Const(c))
            else:
                pe = ex.poly_to_expr(coef)
                # splice a monomial's factors so 2*x*exp(.) prints flat
                if extra and isinstance(pe, ex.Product):
                    factors.extend(pe.factors)
                else:
                    factors.append(pe)
            factors.extend(extra)
            if len(factors) == 1 and isinstance(factors[0], ex.Sum):
                terms.extend(factors[0].terms)  # a bare polynomial term joins the outer sum
            else:
                terms.append(factors[0] if len(factors) == 1 else ex.Product(factors))
        return terms[0] if len(terms) == 1 else ex.Sum(terms)


def _poly_float(p, xs):
    out = np.zeros(np.broadcast(*xs).shape)
    for e, c in p.items():
        t = np.full(out.shape, float(c))
        for x, k in zip(xs, e):
            if k:
                t = t * x**k
        out = out + t
    return out


def _certify_positive(p):
    from ..rootcheck import is_positive_on_reals
    from ..errors import PositivityError

    if len(p.axes()) > 1:
        raise GrammarClosureError("square roots of multivariate polynomials are not supported")
    if not is_positive_on_reals(p):
        raise PositivityError(f"sqrt argument {p} is not strictly positive on the reals")


@lru_cache(maxsize=4096)
def _diff(f, axis):
    d = f.d
    raw = []
    for (sq, ea), coef in f._terms.items():
        dc = coef.diff(axis)
        if not dc.is_zero():
            raw.append(((sq, ea), dc))
        for i, (p, k) in enumerate(sq):
            dp = p.diff(axis)
            if dp.is_zero():
                continue
            new_sq = sq[:i] + ((p, k - 2),) + sq[i + 1:]
            raw.append(((new_sq, ea), coef * dp.scale(Fraction(k, 2))))
    out = Form.from_raw(d, raw)
    for (sq, ea), coef in f._terms.items():
        if ea is None:
            continue
        de = _diff(ea, axis)
        if de.is_zero():
            continue
        out = out + Form(d, {(sq, ea): coef}) * de
    return out


@lru_cache(maxsize=8192)
def form_of(e, d):
    """Normal form of the expression ``e`` in dimension ``d``."""
    if isinstance(e, ex.Const):
        return Form.const(e.value, d)
    if isinstance(e, ex.Var):
        return Form.var(e.axis, d)
    if isinstance(e, ex.Sum):
        out = Form(d, {})
        for t in e.terms:
            out = out + form_of(t, d)
        return out
    if isinstance(e, ex.Product):
        out = Form.const(1, d)
        for t in e.factors:
            out = out * form_of(t, d)
        return out
    if isinstance(e, ex.IntPow):
        return form_of(e.base, d) ** e.exponent
    if isinstance(e, ex.Exp):
        return Form.exp(form_of(e.arg, d))
    if isinstance(e, ex.SqrtPoly):
        return Form.sqrt(embed(e.poly, d), e.power, check=False)
    raise TypeError(f"unknown expression node {type(e).__name__}")


def embed(p, d):
    """View ``p`` as a polynomial in ``d`` variables."""
    if p.nvars == d:
        return p
    if p.nvars > d:
        if any(i >= d for i in p.axes()):
            raise DimensionMismatch(f"polynomial uses variables beyond dimension {d}")
        return Polynomial(d, {e[:d]: c for e, c in p.items()})
    return Polynomial(d, {e + (0,) * (d - p.nvars): c for e, c in p.items()})
