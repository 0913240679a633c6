"""Exact real-root counting and isolation for rational univariate polynomials.

All arithmetic is over :class:`fractions.Fraction`; no floating point is
involved, so the answers are certificates rather than estimates.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ZeroPolynomial
from .symcore.polynomial import Polynomial

# Dense coefficient lists below are low-to-high and trimmed (no trailing zeros).


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _deriv(c):
    return _trim([i * c[i] for i in range(1, len(c))])


def _divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lb
        q[k] = f
        for i, bc in enumerate(b):
            a[i + k] -= f * bc
        a = _trim(a)
    return _trim(q), a


def _normalize(c):
    # divide by |leading coefficient|: keeps every sign, tames growth
    lc = abs(c[-1])
    return [x / lc for x in c]


def _gcd(a, b):
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return _normalize(a) if a else a


def _eval(c, x):
    acc = Fraction(0)
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


def _sign_at(c, x):
    if x == math.inf:
        return (c[-1] > 0) - (c[-1] < 0)
    if x == -math.inf:
        s = (c[-1] > 0) - (c[-1] < 0)
        return s if (len(c) - 1) % 2 == 0 else -s
    v = _eval(c, x)
    return (v > 0) - (v < 0)


def _dense(p):
    """Dense coefficients of a polynomial in (at most) one variable."""
    if isinstance(p, (list, tuple)):
        c = _trim([Fraction(x) for x in p])
    else:
        axes = p.axes()
        if len(axes) > 1:
            raise ValueError("polynomial is not univariate")
        axis = next(iter(axes)) if axes else 0
        c = _trim(p.coeffs(axis))
    if not c:
        raise ZeroPolynomial("the zero polynomial has no finite root count")
    return c


def square_free(c):
    """Square-free part (normalized) of a dense coefficient list."""
    if len(c) <= 2:
        return _normalize(c)
    g = _gcd(c, _deriv(c))
    q, r = _divmod(c, g)
    return _normalize(q)


def sturm_chain(c):
    c = square_free(c)
    chain = [c]
    nxt = _deriv(c)
    if nxt:
        chain.append(_normalize(nxt))
    while len(chain) >= 2 and len(chain[-1]) > 1:
        _, r = _divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_normalize([-x for x in r]))
    return chain


def _variations(chain, x):
    signs = [s for s in (_sign_at(c, x) for c in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _ext(a):
    if isinstance(a, float) and math.isinf(a):
        return a
    return Fraction(a)


def sturm_count(p, a=-math.inf, b=math.inf):
    """Number of distinct real roots of ``p`` in the half-open interval ``(a, b]``.

    ``a`` and ``b`` may be rationals or ``±math.inf``.

    >>> sturm_count(Polynomial.from_coeffs([-1, 0, 1]))
    2
    """
    c = _dense(p)
    a, b = _ext(a), _ext(b)
    if not a < b:
        raise ValueError("sturm_count needs a < b")
    if len(c) == 1:
        return 0
    chain = sturm_chain(c)
    return _variations(chain, a) - _variations(chain, b)


def cauchy_bound(c):
    """Every real root lies in ``[-B, B]``."""
    lc = abs(c[-1])
    return 1 + max((abs(x) / lc for x in c[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RootCertificate:
    """Distinct real roots of ``polynomial`` with isolating intervals ``(lo, hi]``.

    ``everywhere`` marks the identically-zero case (every real is a root).
    """

    polynomial: Polynomial
    count: int
    intervals: tuple = field(default=())
    everywhere: bool = False


def isolate_roots(p):
    """Disjoint rational intervals ``(lo, hi]``, each holding exactly one root."""
    c = _dense(p)
    if len(c) == 1:
        return ()
    chain = sturm_chain(c)
    bound = cauchy_bound(c)
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = _variations(chain, lo) - _variations(chain, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return tuple(sorted(out))


def root_certificate(p):
    c = _dense(p)
    iv = isolate_roots(c)
    poly = p if isinstance(p, Polynomial) else Polynomial.from_coeffs(c)
    return RootCertificate(poly, len(iv), iv)


def has_fixed_point(phi):
    """Whether ``phi(x) = x`` has a real solution, with the root certificate.

    >>> has_fixed_point(Polynomial.from_coeffs([1, 0, 1]))[0]
    False
    """
    axes = phi.axes()
    if len(axes) > 1:
        raise ValueError("fixed points are only decided for univariate symbols")
    axis = next(iter(axes)) if axes else 0
    g = phi - Polynomial.variable(axis, phi.nvars)
    if g.is_zero():
        return True, RootCertificate(g, 0, (), everywhere=True)
    cert = root_certificate(g)
    found = cert.count > 0
    if not found and phi.degree() >= 2:
        # no real root of phi(x) - x forces even degree
        assert phi.degree() % 2 == 0, "fixed-point free polynomial of odd degree"
    return found, cert


def real_roots_exist(p):
    return sturm_count(p) > 0


def is_positive_on_reals(p):
    """True iff ``p(x) > 0`` for every real ``x``.

    >>> is_positive_on_reals(Polynomial.from_coeffs([1, 0, 1]))
    True
    """
    c = _dense(p)
    if len(c) == 1:
        return c[0] > 0
    return sturm_count(c) == 0 and c[0] > 0
