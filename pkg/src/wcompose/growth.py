"""Finiteness of the suprema

    sup_x (1+|x|)^p |g(x)| / (1+|phi(x)|)^q

decided exactly for univariate polynomial data and estimated on a
geometric grid otherwise, plus the small-decay test for weights.
"""

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch
from .rootcheck import cauchy_bound, _dense
from .symcore import dim_of
from .symcore.form import Form, form_of
from .symcore.logreal import LOG_ONE, LogReal, Tower
from .symcore.multiindex import MultiIndex
from .symcore.polynomial import DEG_ZERO, Polynomial

DIVERGE_NATS = 0.5
STABLE_NATS = 0.05
TAIL_BANDS = 3


class GrowthTag(str, enum.Enum):
    FINITE = "Finite"
    INFINITE = "Infinite"
    LIKELY_FINITE = "LikelyFinite"
    LIKELY_INFINITE = "LikelyInfinite"
    UNKNOWN = "Unknown"

    @property
    def exact(self):
        return self in (GrowthTag.FINITE, GrowthTag.INFINITE)


class Certainty(str, enum.Enum):
    """Five-valued verdict shared by the small-decay test and the classifier."""

    YES = "Yes"
    NO = "No"
    LIKELY_YES = "LikelyYes"
    LIKELY_NO = "LikelyNo"
    UNKNOWN = "Unknown"

    @property
    def exact(self):
        return self in (Certainty.YES, Certainty.NO)


@dataclass(frozen=True)
class Seminorm:
    """``||f||_{p,alpha} = sup (1+|x|)^p |f^(alpha)(x)|``."""

    p: Fraction
    alpha: MultiIndex

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "alpha", MultiIndex(self.alpha))
        if self.p <= 0:
            raise ValueError("seminorm weight p must be positive")


@dataclass(frozen=True)
class BandRow:
    band: int
    radius: float
    running_max: float


@dataclass(frozen=True)
class GrowthVerdict:
    tag: GrowthTag
    witness: object = None
    evidence: tuple = field(default=())

    def to_dict(self):
        return {
            "tag": self.tag.value,
            "witness": _jsonable(self.witness),
            "evidence": [[r.band, _jsonable(r.radius), _jsonable(r.running_max)] for r in self.evidence],
        }


@dataclass(frozen=True)
class GridConfig:
    """Geometric grid ``x = ±2^(j/per_band)``, ``j = j_min .. J``.

    ``stride`` thins the grid (used for the costly iterate tables).
    """

    J: int = 512
    j_min: int = -64
    per_band: int = 8
    stride: int = 1

    def exponents(self):
        return list(range(self.j_min, self.J + 1, self.stride))

    def radii(self):
        return np.array([2.0 ** (j / self.per_band) for j in self.exponents()])

    def band_of(self, j):
        # bands are closed at the top so the outermost one is complete
        return -((self.j_min - j) // self.per_band)


def _jsonable(v):
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if math.isnan(v):
            return "nan"
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# --- exact polynomial path ------------------------------------------------------------


def _univariate(p, name):
    if not isinstance(p, Polynomial):
        raise TypeError(f"{name} must be a Polynomial")
    if len(p.axes()) > 1:
        raise DimensionMismatch(f"{name} must be univariate")
    return p


def _deg(p):
    d = p.degree()
    return 0 if d == DEG_ZERO else d


def poly_sup_finite(g, phi, p, q):
    """Exact decision for univariate polynomials ``g`` and ``phi``.

    >>> x = Polynomial.variable(0)
    >>> poly_sup_finite(Polynomial.one(), x * x + 1, 3, 2).tag.value
    'Finite'
    """
    _univariate(g, "g")
    _univariate(phi, "phi")
    p, q = Fraction(p), Fraction(q)
    if g.is_zero():
        return GrowthVerdict(GrowthTag.FINITE, witness=Fraction(0))
    need = p + g.degree()
    D = _deg(phi)
    if D >= 1:
        ok = q * D >= need
        return GrowthVerdict(GrowthTag.FINITE if ok else GrowthTag.INFINITE, witness=need / D)
    return GrowthVerdict(GrowthTag.FINITE if need <= 0 else GrowthTag.INFINITE, witness=None)


def exists_q(g, phi, p):
    """Smallest ``q`` making the supremum finite, or ``None`` if none does.

    >>> x = Polynomial.variable(0)
    >>> exists_q(2 * x, x * x + 1, 2)
    Fraction(3, 2)
    """
    _univariate(g, "g")
    _univariate(phi, "phi")
    p = Fraction(p)
    if g.is_zero():
        return Fraction(0)
    D = _deg(phi)
    if D < 1:
        return None if p + g.degree() > 0 else Fraction(0)
    return (p + g.degree()) / D


# --- numeric grid path -----------------------------------------------------------------


def _directions(d):
    if d == 1:
        return [np.array([1.0]), np.array([-1.0])]
    dirs = []
    for i in range(d):
        for s in (1.0, -1.0):
            v = np.zeros(d)
            v[i] = s
            dirs.append(v)
    for mask in range(2**d):
        v = np.array([(-1.0 if (mask >> i) & 1 else 1.0) for i in range(d)]) / math.sqrt(d)
        dirs.append(v)
    return dirs


def _as_form(e, d):
    return e if isinstance(e, Form) else form_of(e, d)


def _log1p_norm_lr(vals):
    """``log(1 + |v|)`` as a Tower for a vector of LogReals."""
    if len(vals) == 1:
        n = abs(vals[0])
    else:
        s = vals[0] * vals[0]
        for v in vals[1:]:
            s = s + v * v
        n = s.sqrt()
    return (n + LOG_ONE).log


def _tower_rel_ok(r, big):
    """Whether ``r`` survives the cancellation of summands of size ``big``."""
    if big.level == 0:
        return big.v < 1e12 or abs(r.v if r.level == 0 else math.inf) >= 1e-9 * big.v
    if r.level != big.level:
        return False
    slack = math.log(1e9) if big.level == 1 else 1e-9 * big.v
    return r.v >= big.v - slack


def log_combination(terms):
    """``sum c_i * T_i`` for Towers ``T_i`` as a float, NaN when precision is lost.

    Log ratios of iterated exponentials cancel between numerator and
    denominator; once the summands dwarf the float resolution of the
    result the difference is noise and is reported as NaN.
    """
    total = Tower.of(0.0)
    big = Tower.of(0.0)
    for t, c in terms:
        if c == 0 or t.sign == 0:
            continue
        if t.level >= 1 and math.isinf(t.v):
            return math.inf * t.sign * (1 if c > 0 else -1)
        s = t.scale(c)
        total = total + s
        if s.abs().cmp(big) > 0:
            big = s.abs()
    if total.sign == 0:
        return 0.0 if not _is_large(big) else math.nan
    if not _tower_rel_ok(total.abs(), big):
        return math.nan
    return float(total)


def _is_large(t):
    return t.level >= 1 or t.v >= 1e12


def _log_ratio_slow(g, phis, point, p, q):
    gv = g.eval_logreal(point)
    if gv.sign == 0:
        return -math.inf
    phv = [f.eval_logreal(point) for f in phis]
    r = math.log1p(math.sqrt(sum(float(c) ** 2 for c in point)))
    return log_combination([(gv.log, 1.0), (Tower.of(r), float(p)), (_log1p_norm_lr(phv), -float(q))])


def log_ratio_samples(g, phi, p, q, cfg=None, radii=None):
    """Log of the ratio at every grid point.

    Returns ``(radii, values)`` where ``values[k, j]`` is the log ratio on
    ray ``k`` at radius ``radii[j]``.
    """
    cfg = cfg or GridConfig()
    d = len(phi)
    g = _as_form(g, d)
    phis = [_as_form(f, d) for f in phi]
    t = cfg.radii() if radii is None else np.asarray(radii, dtype=float)
    dirs = _directions(d)
    out = np.empty((len(dirs), len(t)))
    pf, qf = float(p), float(q)
    for k, u in enumerate(dirs):
        xs = [t * u[i] for i in range(d)]
        with np.errstate(all="ignore"):
            gv = g.eval_float(xs)
            pv = [f.eval_float(xs) for f in phis]
            norm = np.sqrt(sum(v * v for v in pv)) if d > 1 else np.abs(pv[0])
            vals = pf * np.log1p(t) + np.log(np.abs(gv)) - qf * np.log1p(norm)
        bad = ~np.isfinite(gv) | (gv == 0) | ~np.isfinite(norm) | ~np.isfinite(vals)
        for j in np.nonzero(bad)[0]:
            point = [float(xs[i][j]) for i in range(d)]
            vals[j] = _log_ratio_slow(g, phis, point, p, q)
        out[k] = vals
    return t, out


def band_running_max(values, cfg):
    """Running maximum at the end of every band (over all rays)."""
    col_max = np.fmax.reduce(values, axis=0)
    exps = cfg.exponents()
    rows = []
    running = -math.inf
    current_band = None
    seen = False
    for j, m in zip(exps, col_max):
        b = cfg.band_of(j)
        if current_band is not None and b != current_band:
            # a band with no trustworthy sample poisons everything after it
            if not seen:
                running = math.nan
            rows.append(BandRow(current_band, 2.0 ** (last_j / cfg.per_band), running))
            seen = False
        current_band = b
        last_j = j
        if not math.isnan(m):
            seen = True
            if m > running:
                running = float(m)
    if not seen:
        running = math.nan
    rows.append(BandRow(current_band, 2.0 ** (last_j / cfg.per_band), running))
    return rows


def _increment(a, b):
    if a == b:
        return 0.0
    return b - a


def tail_decision(seq, tail=TAIL_BANDS):
    """Classify a nondecreasing sequence of log values by its last increments."""
    if len(seq) < tail + 1:
        return GrowthTag.UNKNOWN
    if all(v == -math.inf for v in seq):
        return GrowthTag.LIKELY_FINITE
    incs = [_increment(seq[i - 1], seq[i]) for i in range(len(seq) - tail, len(seq))]
    if any(math.isnan(v) for v in incs):
        return GrowthTag.UNKNOWN
    if all(v > DIVERGE_NATS for v in incs):
        return GrowthTag.LIKELY_INFINITE
    if all(abs(v) < STABLE_NATS for v in incs) and math.isfinite(seq[-1]):
        return GrowthTag.LIKELY_FINITE
    if seq[-1] == math.inf and seq[-2] == math.inf:
        return GrowthTag.LIKELY_INFINITE
    return GrowthTag.UNKNOWN


def numeric_sup(e_num, phi, p, q, cfg=None):
    """Grid evidence for finiteness of the supremum (never an exact tag).

    >>> from wcompose.symcore import parse_expr
    >>> numeric_sup(parse_expr("exp(x)"), [parse_expr("exp(x)")], 1, 2).tag.value
    'LikelyFinite'
    """
    cfg = cfg or GridConfig()
    phi = list(phi)
    _, vals = log_ratio_samples(e_num, phi, p, q, cfg)
    rows = band_running_max(vals, cfg)
    tag = tail_decision([r.running_max for r in rows])
    witness = rows[-1].running_max if tag == GrowthTag.LIKELY_FINITE else [r.running_max for r in rows[-TAIL_BANDS - 1:]]
    return GrowthVerdict(tag, witness=witness, evidence=tuple(rows))


def smallest_numeric_q(e_num, phi, p, q_max, cfg=None):
    """Smallest integer ``q <= q_max`` with a LikelyFinite grid verdict.

    Returns ``(q or None, verdict at q_max)``; binary search relies on
    monotonicity in ``q``.
    """
    top = numeric_sup(e_num, phi, p, q_max, cfg)
    if top.tag != GrowthTag.LIKELY_FINITE:
        return None, top
    lo, hi = 0, q_max
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if numeric_sup(e_num, phi, p, mid, cfg).tag == GrowthTag.LIKELY_FINITE:
            hi = mid
        else:
            lo = mid
    return hi, top


# --- small decay ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmallDecayCertificate:
    """``inf_{|x|>=m} (1+|x|)^m (1+|phi(x)|)^m |psi(x)| >= lower_bound``."""

    m: Fraction
    lower_bound: object
    verdict: Certainty
    exact: bool = False

    def to_dict(self):
        return {
            "m": str(self.m) if self.m is not None else None,
            "lower_bound": _jsonable(self.lower_bound),
            "verdict": self.verdict.value,
            "exact": self.exact,
        }


def check_small_decay(psi, phi, cfg=None):
    """Small-decay test: exact for nonzero polynomial weights, numeric otherwise.

    >>> from wcompose.symcore import parse_expr
    >>> c = check_small_decay(parse_expr("x^2-5"), [parse_expr("x^2+1")])
    >>> (c.verdict.value, c.m)
    ('Yes', Fraction(7, 1))
    """
    phi = list(phi)
    d = max(len(phi), dim_of(psi, *phi))
    psi_f = _as_form(psi, d)
    pp = psi_f.as_polynomial()
    if pp is not None and pp.is_zero():
        return SmallDecayCertificate(Fraction(1), Fraction(0), Certainty.NO, exact=True)
    if pp is not None and pp.is_constant():
        # (1+|x|) >= 2 and (1+|phi|) >= 1 on |x| >= 1
        return SmallDecayCertificate(Fraction(1), 2 * abs(pp.constant_value()), Certainty.YES, exact=True)
    if pp is not None and d == 1:
        c = _dense(pp)
        dc = _dense(pp.diff(0))
        bound = max(cauchy_bound(c), cauchy_bound(dc) if len(dc) > 1 else Fraction(0))
        m = Fraction(math.ceil(bound) + 1)
        low = min(abs(pp.evaluate([m])), abs(pp.evaluate([-m])))
        return SmallDecayCertificate(m, low * (1 + m) ** int(m), Certainty.YES, exact=True)
    return _numeric_small_decay(psi_f, [_as_form(f, d) for f in phi], cfg)


def _numeric_small_decay(psi_f, phis, cfg):
    cfg = cfg or GridConfig()
    best = None
    for m in (1, 2, 4, 8, 16):
        # log[(1+|x|)^m (1+|phi|)^m |psi|] = ratio with p = m, q = -m
        t, vals = log_ratio_samples(psi_f, phis, m, -m, cfg)
        keep = t >= m
        if not keep.any():
            continue
        tail = vals[:, keep].min(axis=0)
        exps = [j for j, ok in zip(cfg.exponents(), keep) if ok]
        mins = []
        running = math.inf
        band = None
        for j, v in zip(exps, tail):
            b = cfg.band_of(j)
            if band is not None and b != band:
                mins.append(running)
            band = b
            running = min(running, float(v))
        mins.append(running)
        neg = [-v for v in mins]
        tag = tail_decision(neg)
        if tag == GrowthTag.LIKELY_FINITE and math.isfinite(mins[-1]):
            best = SmallDecayCertificate(Fraction(m), math.exp(mins[-1]) if mins[-1] < 700 else math.inf, Certainty.LIKELY_YES)
            break
        if tag == GrowthTag.LIKELY_INFINITE:
            best = SmallDecayCertificate(Fraction(m), 0.0, Certainty.LIKELY_NO)
    return best or SmallDecayCertificate(None, None, Certainty.UNKNOWN)


# --- suprema along the iterates (d = 1, numeric) ------------------------------------------


ITERATE_GRID = GridConfig(J=256, j_min=-64, per_band=8, stride=4)


@dataclass
class IterateJets:
    """Jets of ``phi_n`` and ``psi^{n,phi}`` over a grid, computed once.

    ``phi[n][i]`` and ``weight[n][i]`` are jets (lists of LogReals) at the
    grid point ``xs[i]``.
    """

    xs: list
    phi: list
    weight: list
    order: int

    @classmethod
    def build(cls, psi, phi, n_max, order, cfg=ITERATE_GRID):
        from .iterates import iterate_jets, weight_jets

        psi_f = _as_form(psi, 1)
        phi_f = _as_form(phi[0] if isinstance(phi, (list, tuple)) else phi, 1)
        xs = []
        for t in cfg.radii():
            xs.extend([float(t), -float(t)])
        pj = [[None] * len(xs) for _ in range(n_max + 1)]
        wj = [[None] * len(xs) for _ in range(n_max + 1)]
        for i, x in enumerate(xs):
            jets = iterate_jets(phi_f, x, n_max, order)
            ws = weight_jets(psi_f, jets, order)
            for n in range(n_max + 1):
                pj[n][i] = jets[n]
                wj[n][i] = ws[n]
        return cls(xs, pj, wj, order)

    def log_ratio(self, kind, n, alpha, p, q):
        """Per-point log of the probe ratio for iterate ``n``.

        kind ``a``: ``(1+|x|)^p |(psi^{n,phi})^(alpha)| / (1+|phi_n|)^q``;
        kind ``b``: ``|phi_n^(alpha)| / (1+|phi_n|)^q``.
        """
        out = []
        for i, x in enumerate(self.xs):
            top = (self.weight if kind == "a" else self.phi)[n][i][alpha]
            if top.sign == 0:
                out.append(-math.inf)
                continue
            terms = [(top.log, 1.0), ((abs(self.phi[n][i][0]) + LOG_ONE).log, -float(q))]
            if kind == "a":
                terms.append((Tower.of(math.log1p(abs(x))), float(p)))
            out.append(log_combination(terms))
        return out

    def per_n(self, kind, n, alpha, p, q, cfg=ITERATE_GRID):
        """``(log sup over the grid, band verdict)`` for iterate ``n``."""
        vals = self.log_ratio(kind, n, alpha, p, q)
        col = np.fmax(np.array(vals[0::2]), np.array(vals[1::2]))
        rows = band_running_max(col[None, :], cfg)
        return rows[-1].running_max, tail_decision([r.running_max for r in rows])


@dataclass(frozen=True)
class IterateRow:
    n: int
    log_sup: float
    tag: GrowthTag

    def to_dict(self):
        return {"n": self.n, "log_sup": _jsonable(self.log_sup), "tag": self.tag.value}


def iterate_sup_table(jets, kind, alpha, p, q, n_range, cfg=ITERATE_GRID):
    """Rows ``(n, sup_x log ratio, x-verdict)`` and a verdict for the sup over ``n``.

    The sup over ``n`` is judged like the bands of :func:`numeric_sup`:
    the running maximum of the per-n suprema must settle (LikelyFinite)
    or climb by more than the divergence threshold per step.
    """
    rows = []
    for n in n_range:
        s, tag = jets.per_n(kind, n, alpha, p, q, cfg)
        rows.append(IterateRow(n, s, tag))
    if any(r.tag == GrowthTag.LIKELY_INFINITE for r in rows):
        return rows, GrowthTag.LIKELY_INFINITE
    running, seq = -math.inf, []
    for r in rows:
        running = max(running, r.log_sup)
        seq.append(running)
    tag = tail_decision(seq)
    if tag == GrowthTag.LIKELY_FINITE and any(r.tag != GrowthTag.LIKELY_FINITE for r in rows):
        tag = GrowthTag.UNKNOWN
    return rows, tag


# --- the exp-tower inequality ---------------------------------------------------------------


@dataclass(frozen=True)
class InequalityRow:
    n: int
    points: int
    violations: int
    worst_gap: float

    def to_dict(self):
        return {"n": self.n, "points": self.points, "violations": self.violations,
                "worst_gap": _jsonable(self.worst_gap)}


def exp_tower_inequality(alpha, n_max=8, xs=None, rel_tol=1e-12):
    """Check ``(phi^{n,phi})^(alpha)(x) <= phi_1(x) * phi_n(x)^(2+alpha)`` for ``psi = phi = exp``.

    Works in log space through the iterate jets.  Returns the rows for
    ``n = 1..n_max`` and the smallest ``n_alpha`` such that every
    ``n`` in ``n_alpha..n_max`` holds at all points (``None`` if even
    ``n_max`` fails).  ``worst_gap`` is the largest float value of
    ``log lhs - log rhs`` seen (negative when the inequality holds).
    """
    from .iterates import iterate_jets, weight_jets

    if xs is None:
        xs = [Fraction(k, 4) for k in range(-80, 21)]
    e = Form.exp(Form.var(0, 1))
    counts = [[0, 0, -math.inf] for _ in range(n_max + 1)]
    for x in xs:
        jets = iterate_jets(e, x, n_max, alpha)
        ws = weight_jets(e, jets, alpha)
        for n in range(1, n_max + 1):
            lhs = ws[n][alpha]
            rhs = jets[1][0] * jets[n][0] ** (2 + alpha)
            c = counts[n]
            c[0] += 1
            if lhs.sign <= 0:
                continue
            slack = rhs.log + Tower.of(rel_tol)
            gap = log_combination([(lhs.log, 1.0), (rhs.log, -1.0)])
            if not math.isnan(gap):
                c[2] = max(c[2], gap)
            if lhs.log.cmp(slack) > 0:
                c[1] += 1
    rows = [InequalityRow(n, *counts[n]) for n in range(1, n_max + 1)]
    n_alpha = None
    for r in reversed(rows):
        if r.violations:
            break
        n_alpha = r.n
    return rows, n_alpha
