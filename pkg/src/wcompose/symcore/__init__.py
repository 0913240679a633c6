"""Symbolic core: expressions, exact polynomials, normal forms and
overflow-free evaluation."""

from .expr import Const, Exp, Expr, IntPow, Product, SqrtPoly, Sum, Var, poly_to_expr
from .form import Form, form_of
from .logreal import LogReal, Tower
from .multiindex import MultiIndex, dominated, indices_of_order, indices_up_to, mi_prec
from .parser import parse_expr
from .polynomial import DEG_ZERO, Polynomial

__all__ = [
    "Const", "Exp", "Expr", "IntPow", "Product", "SqrtPoly", "Sum", "Var", "poly_to_expr",
    "Form", "form_of", "LogReal", "Tower", "MultiIndex", "dominated", "indices_of_order",
    "indices_up_to", "mi_prec", "parse_expr", "DEG_ZERO", "Polynomial",
    "dim_of", "differentiate", "compose", "eval_logreal", "as_polynomial", "to_text",
]


def dim_of(*exprs, at_least=1):
    """Smallest dimension in which all ``exprs`` make sense."""
    return max([at_least] + [e.max_axis() + 1 for e in exprs])


def differentiate(e, axis, d=None):
    """Exact partial derivative of ``e`` in variable ``axis``.

    >>> differentiate(parse_expr("sqrt(1 + x^2)"), 0).to_text()
    'x*sqrt(x^2 + 1)^-1'
    """
    d = d or dim_of(e, at_least=axis + 1)
    return form_of(e, d).diff(axis).to_expr()


def compose(outer, inner, d_out=None):
    """``outer`` evaluated at the vector of expressions ``inner``."""
    d = len(inner)
    d_out = d_out or dim_of(*inner, at_least=d)
    forms = [form_of(f, d_out) for f in inner]
    return form_of(outer, d).compose(forms).to_expr()


def eval_logreal(e, x):
    """Sign and log-magnitude of ``e`` at the real point ``x``."""
    x = list(x)
    return form_of(e, len(x)).eval_logreal(x)


def as_polynomial(e, d=None):
    """Expanded polynomial if ``e`` is one, else ``None``."""
    return form_of(e, d or dim_of(e)).as_polynomial()


def to_text(e, d=None):
    return e.to_text(d or dim_of(e))
