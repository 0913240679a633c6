"""Expression trees for weights and symbols.

The grammar is deliberately small: rational constants, variables, sums,
products, nonnegative integer powers, ``exp`` and square roots of
polynomials that are strictly positive on the real line.  ``SqrtPoly``
carries an integer ``power`` so that derivatives such as
``x / sqrt(1 + x^2)`` (``power=-1``) stay representable.
"""

from dataclasses import dataclass
from fractions import Fraction

from .polynomial import Polynomial, _rat_text, default_names


@dataclass(frozen=True)
class Expr:
    def max_axis(self):
        return -1

    def to_text(self, dim=None):
        if dim is None:
            dim = max(self.max_axis() + 1, 1)
        return _print(self, default_names(dim))

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Var(Expr):
    axis: int

    def max_axis(self):
        return self.axis


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def max_axis(self):
        return max((t.max_axis() for t in self.terms), default=-1)


@dataclass(frozen=True)
class Product(Expr):
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def max_axis(self):
        return max((t.max_axis() for t in self.factors), default=-1)


@dataclass(frozen=True)
class IntPow(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("IntPow exponent must be nonnegative")

    def max_axis(self):
        return self.base.max_axis()


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr

    def max_axis(self):
        return self.arg.max_axis()


@dataclass(frozen=True)
class SqrtPoly(Expr):
    """``poly ** (power / 2)`` for a polynomial positive on all of R."""

    poly: Polynomial
    power: int = 1

    def max_axis(self):
        return max(self.poly.axes(), default=-1)


def poly_to_expr(p):
    """Expanded sum-of-monomials tree for a polynomial."""
    if p.is_zero():
        return Const(0)
    terms = []
    ordered = sorted(p.items(), key=lambda kv: (-sum(kv[0]), tuple(-k for k in kv[0])))
    for e, c in ordered:
        factors = [Var(i) if k == 1 else IntPow(Var(i), k) for i, k in enumerate(e) if k]
        if not factors:
            terms.append(Const(c))
        elif c == 1:
            terms.append(factors[0] if len(factors) == 1 else Product(factors))
        else:
            terms.append(Product([Const(c)] + factors))
    return terms[0] if len(terms) == 1 else Sum(terms)


# --- printing -----------------------------------------------------------------


def _is_neg(e):
    """``-t`` node as produced by the parser for a leading or binary minus."""
    return (
        isinstance(e, Product)
        and len(e.factors) == 2
        and isinstance(e.factors[0], Const)
        and e.factors[0].value == -1
    )


def _split_sign(e):
    """``(True, |e|)`` when ``e`` is a negative constant or has a negative
    leading constant factor (other than the parser's ``-1`` marker)."""
    if isinstance(e, Const) and e.value < 0:
        return True, Const(-e.value)
    if (
        isinstance(e, Product)
        and not _is_neg(e)
        and e.factors
        and isinstance(e.factors[0], Const)
        and e.factors[0].value < 0
    ):
        c = -e.factors[0].value
        rest = list(e.factors[1:])
        if c == 1:
            return True, rest[0] if len(rest) == 1 else Product(rest)
        return True, Product([Const(c)] + rest)
    return False, e


def _paren_if(text, cond):
    return f"({text})" if cond else text


def _operand(e, names):
    # text of a summand or negated operand: wrap sums and anything signed
    t = _print(e, names)
    return _paren_if(t, isinstance(e, Sum) or t.startswith("-"))


def _factor(e, names):
    t = _print(e, names)
    return _paren_if(t, isinstance(e, (Sum, Product)) or t.startswith("-"))


def _base(e, names):
    t = _print(e, names)
    atomic = isinstance(e, (Var, Exp)) or (isinstance(e, SqrtPoly) and e.power == 1) or (
        isinstance(e, Const) and e.value >= 0 and e.value.denominator == 1
    )
    return _paren_if(t, not atomic)


def _print(e, names):
    if isinstance(e, Const):
        return _rat_text(e.value) if e.value >= 0 else "-" + _rat_text(-e.value)
    if isinstance(e, Var):
        return names[e.axis] if e.axis < len(names) else f"x{e.axis + 1}"
    if isinstance(e, Sum):
        if not e.terms:
            return "0"
        out = []
        for i, t in enumerate(e.terms):
            if i == 0:
                out.append(_print(t, names) if not isinstance(t, Sum) else f"({_print(t, names)})")
            elif _is_neg(t):
                out.append(" - " + _operand(t.factors[1], names))
            else:
                neg, mag = _split_sign(t)
                out.append((" - " if neg else " + ") + _operand(mag, names))
        return "".join(out)
    if isinstance(e, Product):
        if not e.factors:
            return "1"
        if _is_neg(e):
            return "-" + _operand(e.factors[1], names)
        neg, mag = _split_sign(e)
        if neg:
            return "-" + _operand(mag, names)
        return "*".join(_factor(f, names) for f in e.factors)
    if isinstance(e, IntPow):
        return f"{_base(e.base, names)}^{e.exponent}"
    if isinstance(e, Exp):
        return f"exp({_print(e.arg, names)})"
    if isinstance(e, SqrtPoly):
        inner = f"sqrt({e.poly.to_text(_names_for(e.poly, names))})"
        return inner if e.power == 1 else f"{inner}^{e.power}"
    raise TypeError(f"unknown expression node {type(e).__name__}")


def _names_for(p, names):
    if p.nvars == 1 and len(names) > 1:
        return names[:1]
    if p.nvars <= len(names):
        return names[: p.nvars]
    return default_names(p.nvars)
