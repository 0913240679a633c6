"""Multivariate Faa di Bruno combinatorics.

``enumerate_p`` lists the index tuples of the multivariate chain rule,
``bell`` gives the univariate partial Bell polynomials, and
``assemble_F`` builds the coefficient functions ``F_{alpha,lambda}`` in

    (psi * (f o phi))^(alpha) = sum_lambda f^(lambda)(phi) * F_{alpha,lambda}.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import CapExceeded, DimensionMismatch, InternalInconsistency, InvalidRange
from .symcore.form import Form, form_of
from .symcore.multiindex import MultiIndex, dominated, indices_of_order, indices_up_to
from .symcore.polynomial import Polynomial

DEFAULT_ALPHA_MAX = 6


@dataclass(frozen=True)
class IndexTuple:
    """``(k_1..k_n; l_1..l_n)`` with ``n = |beta|``, zero padded in front."""

    ks: tuple
    ells: tuple

    def active(self):
        """The nonzero ``(k_j, l_j)`` pairs."""
        return [(k, l) for k, l in zip(self.ks, self.ells) if not k.is_zero()]


@dataclass(frozen=True)
class BellPoly:
    beta: int
    lam: int
    poly: Polynomial

    def __call__(self, *values):
        vals = list(values)[: self.poly.nvars]
        vals += [0] * (self.poly.nvars - len(vals))
        return self.poly.evaluate(vals)

    def evaluate(self, values, one=1):
        vals = list(values)[: self.poly.nvars]
        if len(vals) < self.poly.nvars:
            vals += [one * 0] * (self.poly.nvars - len(vals))
        return self.poly.evaluate(vals, one=one)


def _compositions_by_weight(beta, lam):
    """All ``(i_1..i_m)``, ``m = beta - lam + 1``, with sum ``lam`` and weighted sum ``beta``."""
    m = beta - lam + 1

    def rec(r, left_count, left_weight):
        if r > m:
            if left_count == 0 and left_weight == 0:
                yield ()
            return
        for i in range(min(left_count, left_weight // r) + 1):
            for rest in rec(r + 1, left_count - i, left_weight - i * r):
                yield (i,) + rest

    return list(rec(1, lam, beta))


@lru_cache(maxsize=None)
def bell(beta, lam):
    """Partial Bell polynomial ``B_{beta,lam}`` in ``x_1 .. x_{beta-lam+1}``.

    >>> bell(4, 2).poly.to_text(["x1", "x2", "x3"])
    '4*x1*x3 + 3*x2^2'
    """
    if not (isinstance(beta, int) and isinstance(lam, int)) or not 0 <= lam <= beta:
        raise InvalidRange(f"bell needs 0 <= lambda <= beta, got beta={beta}, lambda={lam}")
    nvars = max(beta - lam + 1, 1)
    if beta == 0:
        return BellPoly(0, 0, Polynomial.one(nvars))
    if lam == 0:
        return BellPoly(beta, 0, Polynomial.zero(nvars))
    terms = {}
    for idx in _compositions_by_weight(beta, lam):
        c = Fraction(factorial(beta))
        for r, i in enumerate(idx, start=1):
            c /= factorial(i) * factorial(r) ** i
        terms[idx] = c
    return BellPoly(beta, lam, Polynomial(nvars, terms))


def _splits(lam, sizes):
    """All ways to write ``lam`` as an ordered sum of multi indices of the given orders."""
    if not sizes:
        if lam.is_zero():
            yield ()
        return
    m = sizes[0]
    rest_total = sum(sizes[1:])
    if len(sizes) == 1:
        if lam.order == m:
            yield (lam,)
        return
    for k in indices_of_order(lam.dim, m):
        if not k.dominated_by(lam):
            continue
        rem = lam.minus(k)
        if rem.order != rest_total:
            continue
        for tail in _splits(rem, sizes[1:]):
            yield (k,) + tail


@lru_cache(maxsize=None)
def _enumerate_p(beta, lam):
    d = len(beta)
    n = beta.order
    zero = MultiIndex.zero(d)
    if n == 0:
        return (IndexTuple((zero,), (zero,)),) if lam.is_zero() else ()
    if lam.is_zero() or lam.order > n:
        return ()
    cands = [l for l in dominated(beta) if not l.is_zero()]

    chains = []

    def rec(start, remaining, chain):
        if remaining.is_zero():
            chains.append(tuple(chain))
            return
        for i in range(start, len(cands)):
            ell = cands[i]
            m = 1
            while ell.scaled(m).dominated_by(remaining):
                rec(i + 1, remaining.minus(ell.scaled(m)), chain + [(ell, m)])
                m += 1

    rec(0, beta, [])
    out = []
    for chain in chains:
        if sum(m for _, m in chain) < lam.order:
            continue
        for ks in _splits(lam, [m for _, m in chain]):
            pad = n - len(chain)
            out.append(
                IndexTuple(
                    (zero,) * pad + tuple(ks),
                    (zero,) * pad + tuple(ell for ell, _ in chain),
                )
            )
    out.sort(key=lambda t: (tuple(tuple(k) for k in t.ks), tuple(tuple(l) for l in t.ells)))
    return tuple(out)


def enumerate_p(beta, lam):
    """The index set ``p(beta, lam)`` as a sorted tuple of :class:`IndexTuple`.

    >>> len(enumerate_p(MultiIndex((3,)), MultiIndex((2,))))
    1
    """
    beta, lam = MultiIndex(beta), MultiIndex(lam)
    if len(beta) != len(lam):
        raise DimensionMismatch(f"beta has dimension {len(beta)}, lambda has {len(lam)}")
    out = _enumerate_p(beta, lam)
    if out:
        assert lam.order <= beta.order
    return out


# --- derivatives on normal forms --------------------------------------------------


@lru_cache(maxsize=65536)
def deriv(f, alpha):
    """``f^(alpha)`` for a normal form ``f`` and multi index tuple ``alpha``."""
    alpha = tuple(alpha)
    for i, a in enumerate(alpha):
        if a:
            lower = alpha[:i] + (a - 1,) + alpha[i + 1:]
            return deriv(f, lower).diff(i)
    return f


def _tuple_term(beta, it, phi_forms):
    d = phi_forms[0].d
    out = Form.const(beta.factorial(), d)
    for k, ell in it.active():
        denom = k.factorial() * ell.factorial() ** k.order
        for i, ki in enumerate(k):
            if ki:
                out = out * deriv(phi_forms[i], tuple(ell)) ** ki
        out = out * Fraction(1, denom)
    return out


def _inner_sum(beta, lam, phi_forms):
    d = phi_forms[0].d
    total = Form(d, {})
    for it in enumerate_p(beta, lam):
        total = total + _tuple_term(beta, it, phi_forms)
    return total


def _check_order(alpha, alpha_max):
    if alpha.order > alpha_max:
        raise CapExceeded(f"derivative order {alpha.order} exceeds the cap {alpha_max}")


def F_form(psi, phi, alpha, lam, method="auto", alpha_max=DEFAULT_ALPHA_MAX, cross_check=True):
    """``F_{alpha,lam}`` for normal forms ``psi`` and ``phi`` (a sequence of forms)."""
    phi = tuple(phi)
    d = len(phi)
    alpha, lam = MultiIndex(alpha), MultiIndex(lam)
    if len(alpha) != d or len(lam) != d or psi.d != d or any(f.d != d for f in phi):
        raise DimensionMismatch("psi, phi, alpha and lambda must share one dimension")
    if lam.order > alpha.order:
        raise InvalidRange("F_{alpha,lambda} needs |lambda| <= |alpha|")
    _check_order(alpha, alpha_max)
    if method == "auto":
        method = "bell" if d == 1 else "multi"
    if method == "bell":
        if d != 1:
            raise DimensionMismatch("the Bell polynomial path is one dimensional")
        out = _F_bell(psi, phi[0], alpha[0], lam[0])
        if cross_check and alpha[0] <= 4:
            other = _F_multi(psi, phi, alpha, lam)
            if other != out:
                raise InternalInconsistency("Bell and multi-index assembly disagree")
        return out
    if method == "multi":
        return _F_multi(psi, phi, alpha, lam)
    raise ValueError(f"unknown method {method!r}")


def _F_multi(psi, phi, alpha, lam):
    d = len(phi)
    total = Form(d, {})
    for beta in dominated(alpha):
        if beta.order < lam.order:
            continue
        inner = _inner_sum(beta, lam, phi)
        if inner.is_zero():
            continue
        w = deriv(psi, tuple(alpha.minus(beta)))
        total = total + w * inner * alpha.binom(beta)
    return total


def _F_bell(psi, phi1, a, lam):
    total = Form(psi.d, {})
    one = Form.const(1, psi.d)
    for b in range(lam, a + 1):
        B = bell(b, lam)
        args = [deriv(phi1, (r,)) for r in range(1, B.poly.nvars + 1)]
        val = B.evaluate(args, one=one)
        if val.is_zero():
            continue
        total = total + deriv(psi, (a - b,)) * val * comb(a, b)
    return total


def assemble_F(psi, phi, alpha, lam, method="auto", alpha_max=DEFAULT_ALPHA_MAX):
    """Expression for ``F_{alpha,lam}^{phi,psi}``.

    >>> from wcompose.symcore import parse_expr
    >>> assemble_F(parse_expr("1"), [parse_expr("x^2+1")], (2,), (2,)).to_text()
    '4*x^2'
    """
    d = len(phi)
    return F_form(form_of(psi, d), [form_of(f, d) for f in phi], alpha, lam, method, alpha_max).to_expr()


def fdb_form(f, phi, beta, alpha_max=DEFAULT_ALPHA_MAX):
    """``(f o phi)^(beta)`` via the chain-rule sum, on normal forms."""
    phi = tuple(phi)
    d = len(phi)
    beta = MultiIndex(beta)
    _check_order(beta, alpha_max)
    total = Form(d, {})
    for lam in indices_up_to(d, beta.order):
        inner = _inner_sum(beta, lam, phi)
        if inner.is_zero():
            continue
        outer = deriv(f, tuple(lam)).compose(list(phi))
        total = total + outer * inner
    return total


def fdb_derivative(f, phi, beta, alpha_max=DEFAULT_ALPHA_MAX):
    """``beta``-th partial derivative of ``f o phi`` through the chain-rule sum.

    >>> from wcompose.symcore import parse_expr
    >>> fdb_derivative(parse_expr("x^2"), [parse_expr("x^2+1")], (1,)).to_text()
    '4*x^3 + 4*x'
    """
    d = len(phi)
    return fdb_form(form_of(f, d), [form_of(p, d) for p in phi], beta, alpha_max).to_expr()


def leibniz_fdb_rhs(psi, f, phi, alpha, alpha_max=DEFAULT_ALPHA_MAX):
    """Right side ``sum_lambda f^(lambda)(phi) F_{alpha,lambda}`` on normal forms."""
    phi = tuple(phi)
    d = len(phi)
    alpha = MultiIndex(alpha)
    total = Form(d, {})
    for lam in indices_up_to(d, alpha.order):
        F = F_form(psi, phi, alpha, lam, alpha_max=alpha_max)
        if F.is_zero():
            continue
        total = total + deriv(f, tuple(lam)).compose(list(phi)) * F
    return total


def bell_row_sum(beta):
    """``sum_lambda B_{beta,lambda}(1,...,1)``, the Bell number of ``beta``."""
    return sum(bell(beta, lam)(*([1] * (beta + 1))) for lam in range(beta + 1))


__all__ = [
    "IndexTuple", "BellPoly", "bell", "enumerate_p", "assemble_F", "fdb_derivative",
    "F_form", "fdb_form", "deriv", "leibniz_fdb_rhs", "bell_row_sum",
]
