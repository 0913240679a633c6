"""Iterates ``phi_n`` of a symbol and the cocycle weights

    psi^{n,phi}(x) = psi(x) * psi(phi(x)) * ... * psi(phi_{n-1}(x)).

Symbolic iterates are cached and refused beyond size caps.  For large
``n`` use the numeric jet functions, which propagate values and
derivatives point by point in log space and never expand anything.
"""

import threading
from math import comb

from .errors import CapExceeded, DimensionMismatch
from .faadibruno import bell, deriv
from .symcore import dim_of
from .symcore.form import Form, form_of
from .symcore.logreal import LOG_ONE, LOG_ZERO, LogReal


def form_size(f):
    """Rough node count of a normal form."""
    n = 0
    for (sq, ea), coef in f.items():
        n += len(coef) + sum(len(p) for p, _ in sq)
        if ea is not None:
            n += form_size(ea)
    return n


class IterateCache:
    """Lock-protected cache of ``phi_n`` and ``psi^{n,phi}`` normal forms."""

    def __init__(self, phi, degree_cap=4096, node_cap=10**6, d=None):
        phi = tuple(phi)
        self.d = d or max(len(phi), dim_of(*phi))
        if len(phi) != self.d:
            raise DimensionMismatch(f"a symbol on R^{self.d} needs {self.d} components")
        self.phi = phi
        self.phi_forms = tuple(form_of(f, self.d) for f in phi)
        self.degree_cap = degree_cap
        self.node_cap = node_cap
        ident = tuple(Form.var(i, self.d) for i in range(self.d))
        self.cached = {0: ident, 1: self.phi_forms}
        self.cached_weights = {}
        self._lock = threading.RLock()
        polys = [f.as_polynomial() for f in self.phi_forms]
        self._degree = max(p.degree() for p in polys) if all(p is not None for p in polys) else None

    @property
    def polynomial_degree(self):
        """Total degree of a polynomial symbol, else ``None``."""
        return self._degree

    def _predict(self, n):
        if self._degree is None or self._degree < 1:
            return None
        return self._degree**n

    def iterate_forms(self, n):
        if n < 0:
            raise ValueError("iterate index must be nonnegative")
        with self._lock:
            if n in self.cached:
                return self.cached[n]
            pred = self._predict(n)
            if pred is not None and pred > self.degree_cap:
                raise CapExceeded(f"deg phi_{n} = {pred} exceeds the degree cap {self.degree_cap}")
            prev = self.iterate_forms(n - 1)
            cur = tuple(f.compose(list(prev)) for f in self.phi_forms)
            size = sum(form_size(f) for f in cur)
            if size > self.node_cap:
                raise CapExceeded(f"phi_{n} has {size} nodes, above the cap {self.node_cap}")
            if pred is not None and self.d == 1:
                assert cur[0].as_polynomial().degree() == pred
            self.cached[n] = cur
            return cur

    def weight_forms(self, psi, n):
        psi_f = psi if isinstance(psi, Form) else form_of(psi, self.d)
        if n < 1:
            raise ValueError("weight products start at n = 1")
        with self._lock:
            key = (psi_f, n)
            if key in self.cached_weights:
                return self.cached_weights[key]
            pp = psi_f.as_polynomial()
            if pp is not None and self._degree is not None and not pp.is_zero():
                D = self._degree
                pred = pp.degree() * sum(D**j for j in range(n))
                if pred > self.degree_cap:
                    raise CapExceeded(f"deg psi^({n}) = {pred} exceeds the degree cap {self.degree_cap}")
            else:
                pred = None
            prev = Form.const(1, self.d) if n == 1 else self.weight_forms(psi_f, n - 1)
            cur = prev * psi_f.compose(list(self.iterate_forms(n - 1)))
            if form_size(cur) > self.node_cap:
                raise CapExceeded(f"psi^({n}) exceeds the node cap {self.node_cap}")
            if pred is not None and self.d == 1 and self._degree >= 1:
                assert cur.as_polynomial().degree() == pred
            self.cached_weights[key] = cur
            return cur


def iterate_symbol(cache, n):
    """``phi_n`` as a tuple of expressions (``phi_0`` is the identity).

    >>> from wcompose.symcore import parse_expr
    >>> c = IterateCache([parse_expr("x^2+1")])
    >>> iterate_symbol(c, 2)[0].to_text()
    'x^4 + 2*x^2 + 2'
    """
    return tuple(f.to_expr() for f in cache.iterate_forms(n))


def weight_product(cache, psi, n):
    """``psi^{n,phi}`` as an expression."""
    return cache.weight_forms(psi, n).to_expr()


# --- numeric jets (d = 1) -------------------------------------------------------------
#
# A jet of order m at x is the list [g(x), g'(x), ..., g^(m)(x)] of LogReals.


def compose_jet(outer_derivs, inner_jet):
    """Jet of ``F o g`` from ``[F(g), F'(g), ...]`` and the jet of ``g``."""
    m = len(inner_jet) - 1
    out = [outer_derivs[0]]
    for k in range(1, m + 1):
        acc = LOG_ZERO
        for lam in range(1, k + 1):
            B = bell(k, lam)
            acc = acc + outer_derivs[lam] * B.evaluate(inner_jet[1:], one=LOG_ONE)
        out.append(acc)
    return out


def mul_jet(a, b):
    m = len(a) - 1
    return [
        sum((a[j] * b[k - j] * comb(k, j) for j in range(k + 1)), LOG_ZERO) for k in range(m + 1)
    ]


def identity_jet(x, order):
    jet = [LogReal.of(x)]
    if order >= 1:
        jet.append(LOG_ONE)
    jet.extend([LOG_ZERO] * (order - 1))
    return jet


def _derivs_at(f, order, y):
    return [deriv(f, (k,)).eval_logreal([y]) for k in range(order + 1)]


def iterate_jets(phi, x, n, order):
    """Jets of ``phi_0 .. phi_n`` at ``x`` (``phi`` a 1-d expression or form)."""
    f = phi if isinstance(phi, Form) else form_of(phi, 1)
    jets = [identity_jet(x, order)]
    for _ in range(n):
        g = jets[-1]
        jets.append(compose_jet(_derivs_at(f, order, g[0]), g))
    return jets


def weight_jets(psi, phi_jets, order):
    """Jets of ``psi^{1,phi} .. psi^{n,phi}`` from the jets of ``phi_0 .. phi_{n-1}``.

    Returns a list whose entry ``j`` (``j >= 1``) is the jet of
    ``psi^{j,phi}``; entry 0 is the constant 1.
    """
    f = psi if isinstance(psi, Form) else form_of(psi, 1)
    out = [[LOG_ONE] + [LOG_ZERO] * order]
    for g in phi_jets[:-1] if len(phi_jets) > 1 else []:
        factor = compose_jet(_derivs_at(f, order, g[0]), g)
        out.append(mul_jet(out[-1], factor))
    return out


def iterate_values(phi, point, n):
    """Points ``phi_0(x) .. phi_n(x)`` as LogReal vectors."""
    forms = [p if isinstance(p, Form) else form_of(p, len(phi)) for p in phi]
    pts = [[LogReal.of(v) for v in point]]
    for _ in range(n):
        cur = pts[-1]
        pts.append([f.eval_logreal(cur) for f in forms])
    return pts
