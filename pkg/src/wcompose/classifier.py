"""Decision rules for the operator ``f -> psi * (f o phi)`` on the Schwartz space.

Exact rules fire for univariate polynomial data and for two worked
non-polynomial examples (``exp`` with ``exp``, and ``sqrt(1+x^2)``).
Everything else falls back to grid evidence, which can only produce
LikelyYes, LikelyNo or Unknown.  The two never mix: a Yes/No verdict is
backed by exact rationale entries only.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import InternalInconsistency, NotApplicable, PreconditionViolated
from .faadibruno import F_form, deriv
from .growth import (
    GridConfig,
    GrowthTag,
    IterateJets,
    ITERATE_GRID,
    iterate_sup_table,
    smallest_numeric_q,
)
from .growth import Certainty
from .rootcheck import has_fixed_point, sturm_count
from .symcore import dim_of, parse_expr
from .symcore.form import Form, form_of
from .symcore.multiindex import MultiIndex, indices_up_to
from .symcore.polynomial import Polynomial

PropertyValue = Certainty
YES, NO = Certainty.YES, Certainty.NO
LIKELY_YES, LIKELY_NO, UNKNOWN = Certainty.LIKELY_YES, Certainty.LIKELY_NO, Certainty.UNKNOWN

PROPERTIES = (
    "acts_on_S",
    "power_bounded",
    "topologizable",
    "m_topologizable",
    "iterates_to_zero",
    "uniformly_mean_ergodic",
    "cesaro_bounded",
    "weak_supercyclicity_possible",
    "universal_schwartz_weights",
)

# Rule id -> citation.  Ids prefixed EV are numeric evidence.
CITATIONS = {
    "R1": "action criterion for a nonconstant polynomial symbol in one variable: the operator acts on S exactly when the weight is a multiplier (O_M)",
    "R2": "action criterion with alpha = 0: for a bounded (constant) symbol the weight itself must be rapidly decreasing, and a nonzero polynomial is not",
    "R3": "zero weight: the zero operator acts and all its powers vanish",
    "R4": "worked example: the weight exp with the symbol exp gives a continuous operator on S",
    "R5": "sqrt(1+x^2) is a symbol on S and a multiplier weight keeps the operator continuous",
    "P1": "polynomial symbols of degree >= 2: power bounded for every multiplier weight iff the symbol has no fixed point; with a fixed point a small-decay weight (any nonzero polynomial) forces the unweighted operator to be power bounded, which fails",
    "P2": "translations x+b, b != 0, with polynomial weight: power bounded iff the weight is a constant c with |c| < 1",
    "P3": "affine symbols ax+b with |a| not in {0,1} and a nonzero polynomial weight are never power bounded",
    "P4": "multiplication operators are power bounded iff the powers of the weight stay bounded in O_M; for a polynomial weight the degree of psi^n grows unless psi is a constant with |c| <= 1 (derived)",
    "P5": "symbols -x+b: power bounded iff the powers of psi * (psi o phi) stay bounded in O_M; deg(psi * (psi o phi)) = 2 deg psi forces a constant with |c| <= 1 (derived)",
    "P6": "worked example sqrt(1+x^2) with polynomial weight: power bounded iff psi is a constant with |c| <= 1",
    "P7": "worked example: the weight exp with the symbol exp is even power bounded",
    "P8": "zero weight: all powers vanish",
    "T1": "composition with a polynomial symbol is topologizable iff it is well defined, i.e. deg >= 1; a constant nonzero weight only rescales the powers (derived)",
    "T2": "affine symbols ax+b, a != 0: a nonconstant polynomial weight is never topologizable, while a constant weight gives an m-topologizable operator",
    "T3": "worked example sqrt(1+x^2) with polynomial weight: topologizable and m-topologizable are equivalent and hold exactly for constant weights",
    "T4": "power bounded operators are m-topologizable (take a_n = 1), hence topologizable",
    "Z1": "polynomial symbols of degree >= 2 without fixed points: the powers converge to 0 in L_b(S) for every multiplier weight",
    "Z2": "translations x+b, b != 0, with constant weight |c| < 1: the powers converge to 0",
    "Z3": "c * T with T power bounded and |c| < 1 has powers converging to 0 (derived)",
    "Z4": "the powers of c * id (or of c * C_phi with C_phi^2 = id) do not tend to 0 when |c| = 1 (derived)",
    "Z5": "iterates converging to 0 in L_b(S) force power boundedness; a not-power-bounded operator cannot have them",
    "E1": "power bounded operators on S (a Montel space) are uniformly mean ergodic and Cesaro bounded",
    "E2": "polynomial symbols of degree >= 2 with a fixed point: the composition operator is neither uniformly mean ergodic nor Cesaro bounded (equivalence with power boundedness)",
    "S1": "a real zero x0 of the weight puts the range inside the kernel of the point evaluation at x0, excluding weak supercyclicity",
    "S2": "with a multiplier weight, weak supercyclicity forces the symbol to be a translation x+b with b != 0",
    "S3": "translations with zero-free weight: only necessary conditions are known, so weak supercyclicity is not excluded",
    "U1": "every weight in S gives an operator on S iff all partial derivatives of the symbol are multipliers; polynomial derivatives are",
    "U2": "every weight in S gives an operator on S iff the derivative of the symbol is a multiplier; the exact O_M test on the derivative decides it",
    "PH": "only the modulus of the scalar weight enters the criteria; the phase is carried but ignored",
    "NA": "no exact rule covers this input",
    "AN": "the operator does not act on S",
    "EV-acts": "numeric evidence: grid suprema of (1+|x|)^p |F_{alpha,lambda}| / (1+|phi|)^q with a q search",
    "EV-pb": "numeric evidence: suprema over iterates n <= n_max of the power-boundedness conditions (a) on the weights and (b) on the iterates",
    "EV-top": "numeric evidence: per-iterate suprema of the topologizability conditions (a) and (b)",
    "EV-sd": "numeric evidence: grid scan of the small-decay infimum",
}


@dataclass(frozen=True)
class RationaleEntry:
    rule: str
    citation: str
    exact: bool = True

    def to_dict(self):
        return {"rule": self.rule, "citation": self.citation, "exact": self.exact}


def _entry(rule, note=None):
    text = CITATIONS[rule] if note is None else f"{CITATIONS[rule]} [{note}]"
    return RationaleEntry(rule, text, not rule.startswith("EV"))


@dataclass(frozen=True)
class PropertyVerdict:
    value: Certainty
    rationale: tuple = ()

    def to_dict(self):
        return {"value": self.value.value, "rationale": [r.to_dict() for r in self.rationale]}

    def with_note(self, *entries):
        return PropertyVerdict(self.value, self.rationale + tuple(entries))


def _v(value, *rules, note=None):
    return PropertyVerdict(value, tuple(_entry(r, note) for r in rules))


@dataclass
class ClassifierConfig:
    alpha_max: int = 4
    q_max: int = 16
    n_max: int = 8
    grid: GridConfig = field(default_factory=GridConfig)
    iterate_grid: GridConfig = ITERATE_GRID
    disabled_rules: frozenset = frozenset()

    def to_dict(self):
        return {
            "alpha_max": self.alpha_max,
            "q_max": self.q_max,
            "n_max": self.n_max,
            "grid_J": self.grid.J,
            "disabled_rules": sorted(self.disabled_rules),
        }


@dataclass(frozen=True)
class SymbolPair:
    """A weight ``psi`` (real modulus, optional phase flag) and a symbol ``phi``."""

    psi: object
    phi: tuple
    phase: bool = False

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(self.phi))
        if not self.phi:
            raise ValueError("a symbol needs at least one component")

    @classmethod
    def parse(cls, psi, phi, d=None, phase=False):
        """From text; ``phi`` is a string with comma-separated components or a list."""
        comps = [c for c in phi.split(",")] if isinstance(phi, str) else list(phi)
        d = d or len(comps)
        return cls(parse_expr(psi, d), tuple(parse_expr(c, d) for c in comps), phase)

    @property
    def d(self):
        return max(len(self.phi), dim_of(self.psi, *self.phi))

    @cached_property
    def facts(self):
        return _Facts(self)


class _Facts:
    """Exact structural facts about a pair, computed once."""

    def __init__(self, sp):
        d = self.d = sp.d
        if len(sp.phi) != d:
            from .errors import DimensionMismatch

            raise DimensionMismatch(f"phi has {len(sp.phi)} components but the data live on R^{d}")
        self.psi = form_of(sp.psi, d)
        self.phis = tuple(form_of(f, d) for f in sp.phi)
        self.psi_poly = self.psi.as_polynomial()
        polys = [f.as_polynomial() for f in self.phis]
        self.phi_polys = polys if all(p is not None for p in polys) else None
        self.psi_zero = self.psi_poly is not None and self.psi_poly.is_zero()
        self.psi_const = self.psi_poly.constant_value() if self.psi_poly is not None and self.psi_poly.is_constant() else None
        self.phi_constant = self.phi_polys is not None and all(p.is_constant() for p in self.phi_polys)
        self.phi_poly = self.phi_polys[0] if (d == 1 and self.phi_polys is not None) else None
        self.deg = None
        self.affine = None
        if self.phi_poly is not None:
            self.deg = max(self.phi_poly.degree(), 0)
            if self.deg <= 1:
                c = self.phi_poly.coeffs(0) + [Fraction(0)] * 2
                self.affine = (c[1], c[0])
        x = Form.var(0, 1)
        self.exp_exp = d == 1 and self.psi == Form.exp(x) and self.phis[0] == Form.exp(x)
        self.sqrt_example = d == 1 and self.phis[0] == Form.sqrt(Polynomial.from_coeffs([1, 0, 1]), 1)
        self.psi_in_om = in_OM(self.psi)

    @cached_property
    def fixed_point(self):
        return has_fixed_point(self.phi_poly)


def in_OM(f):
    """Exact multiplier test on the closed grammar: True, False or None (undecided).

    Exp-free forms are multipliers (polynomials times powers of square
    roots of positive polynomials).  A term ``P * exp(E)`` with a
    univariate polynomial ``E`` is one iff ``E`` is constant or tends to
    ``-inf`` at both ends.  Growing exponentials whose arguments differ
    by nonconstant polynomials cannot cancel, so they refute membership.
    """
    if not f.has_exp():
        return True
    if f.d != 1:
        return None
    growing = []
    for (sq, ea), coef in f.items():
        if ea is None:
            continue
        E = ea.as_polynomial()
        if E is None:
            return None
        if E.is_constant():
            continue
        deg = E.degree()
        if deg % 2 == 0 and E.leading_coefficient() < 0:
            continue
        growing.append(E)
    if not growing:
        return True
    for i, a in enumerate(growing):
        for b in growing[i + 1:]:
            if (a - b).is_constant():
                return None
    return False


# --- evidence helpers ------------------------------------------------------------------------


class _Context:
    def __init__(self, sp, cfg):
        self.sp = sp
        self.cfg = cfg
        self.f = sp.facts
        self.evidence = []
        self._jets = None

    def enabled(self, rule):
        return rule not in self.cfg.disabled_rules

    def jets(self):
        if self._jets is None:
            self._jets = IterateJets.build(self.f.psi, self.f.phis, self.cfg.n_max, self.cfg.alpha_max, self.cfg.iterate_grid)
        return self._jets


def _acts_evidence(ctx):
    f, cfg = ctx.f, ctx.cfg
    d = f.d
    amax = cfg.alpha_max if d == 1 else min(cfg.alpha_max, 2)
    result = LIKELY_YES
    for alpha in indices_up_to(d, amax):
        for lam in indices_up_to(d, alpha.order):
            F = F_form(f.psi, f.phis, alpha, lam, alpha_max=amax)
            if F.is_zero():
                continue
            # p = 4 dominates p = 1, 2 (same q); smaller p is tried only for the record
            for p in (4, 2, 1):
                q, top = smallest_numeric_q(F, f.phis, p, cfg.q_max, cfg.grid)
                ctx.evidence.append({
                    "probe": "acts", "alpha": list(alpha), "lambda": list(lam), "p": p,
                    "q": q, "tag_at_q_max": top.tag.value,
                    "bands": [[r.band, r.radius, r.running_max] for r in top.evidence[-4:]],
                })
                if q is not None:
                    break
                if top.tag == GrowthTag.LIKELY_INFINITE:
                    return LIKELY_NO
                result = UNKNOWN
    return result


def _q_search(test, q_max):
    """Smallest q in 1..q_max with ``test(q)`` LikelyFinite, or (None, tag at q_max)."""
    top = test(q_max)
    if top != GrowthTag.LIKELY_FINITE:
        return None, top
    lo, hi = 0, q_max
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if test(mid) == GrowthTag.LIKELY_FINITE:
            hi = mid
        else:
            lo = mid
    return hi, top


def _probes(ctx):
    a = [("a", al) for al in range(ctx.cfg.alpha_max + 1)]
    b = [("b", al) for al in range(1, ctx.cfg.alpha_max + 1)]
    return a + b


def _pb_evidence(ctx):
    if ctx.f.d != 1:
        return UNKNOWN
    jets = ctx.jets()
    ns = range(1, ctx.cfg.n_max + 1)
    result = LIKELY_YES
    for kind, alpha in _probes(ctx):
        q, top = _q_search(lambda q: iterate_sup_table(jets, kind, alpha, 4, q, ns, ctx.cfg.iterate_grid)[1], ctx.cfg.q_max)
        ctx.evidence.append({"probe": f"pb-{kind}", "alpha": alpha, "p": 4, "q": q, "tag_at_q_max": top.value})
        if q is None:
            if top == GrowthTag.LIKELY_INFINITE:
                return LIKELY_NO
            result = UNKNOWN
    return result


def _top_evidence(ctx):
    if ctx.f.d != 1:
        return UNKNOWN, UNKNOWN
    jets = ctx.jets()
    top_result, m_result = LIKELY_YES, LIKELY_YES
    for kind, alpha in _probes(ctx):
        qs = []
        for n in range(1, ctx.cfg.n_max + 1):
            q, t = _q_search(lambda q: jets.per_n(kind, n, alpha, 4, q, ctx.cfg.iterate_grid)[1], ctx.cfg.q_max)
            qs.append(q)
            if q is None:
                if t == GrowthTag.LIKELY_INFINITE:
                    ctx.evidence.append({"probe": f"top-{kind}", "alpha": alpha, "n": n, "q": None, "tag_at_q_max": t.value})
                    return LIKELY_NO, LIKELY_NO
                top_result = UNKNOWN
        ctx.evidence.append({"probe": f"top-{kind}", "alpha": alpha, "q_per_n": qs})
        if None in qs:
            m_result = UNKNOWN
            continue
        q = max(qs)
        sups = [jets.per_n(kind, n, alpha, 4, q, ctx.cfg.iterate_grid)[0] for n in range(1, ctx.cfg.n_max + 1)]
        incs = [b - a for a, b in zip(sups, sups[1:])]
        # sup_n M^-n * sup_x(...) < inf needs at most linear growth of the log suprema
        if len(incs) < 4 or not all(math.isfinite(v) for v in incs) or any(
            incs[i] > incs[i - 1] + 0.05 for i in range(len(incs) - 3, len(incs))
        ):
            m_result = UNKNOWN
    if top_result != LIKELY_YES:
        m_result = UNKNOWN if m_result != LIKELY_NO else m_result
    return top_result, m_result


# --- classifiers -------------------------------------------------------------------------------


def _abs_const(f):
    return abs(f.psi_const) if f.psi_const is not None else None


def _acts(ctx):
    f = ctx.f
    if f.psi_zero and ctx.enabled("R3"):
        return _v(YES, "R3")
    if f.phi_constant and f.psi_poly is not None and ctx.enabled("R2"):
        return _v(NO, "R2")
    if f.exp_exp and ctx.enabled("R4"):
        return _v(YES, "R4")
    if f.sqrt_example and f.psi_in_om is True and ctx.enabled("R5"):
        return _v(YES, "R5")
    if f.phi_poly is not None and f.deg >= 1 and f.psi_in_om is not None and ctx.enabled("R1"):
        return _v(YES if f.psi_in_om else NO, "R1")
    return _v(_acts_evidence(ctx), "EV-acts")


def _power_bounded(ctx):
    f = ctx.f
    c = _abs_const(f)
    if f.psi_zero and ctx.enabled("P8"):
        return _v(YES, "P8")
    if f.exp_exp and ctx.enabled("P7"):
        return _v(YES, "P7")
    if f.sqrt_example and f.psi_poly is not None and ctx.enabled("P6"):
        return _v(YES if c is not None and c <= 1 else NO, "P6")
    if f.affine is not None and f.psi_poly is not None:
        a, b = f.affine
        if a == 1 and b != 0 and ctx.enabled("P2"):
            return _v(YES if c is not None and c < 1 else NO, "P2")
        if abs(a) not in (0, 1) and ctx.enabled("P3"):
            return _v(NO, "P3")
        if a == 1 and b == 0 and ctx.enabled("P4"):
            return _v(YES if c is not None and c <= 1 else NO, "P4")
        if a == -1 and ctx.enabled("P5"):
            return _v(YES if c is not None and c <= 1 else NO, "P5")
    if f.phi_poly is not None and f.deg >= 2 and ctx.enabled("P1"):
        fixed, _ = f.fixed_point
        if not fixed and f.psi_in_om is True:
            return _v(YES, "P1", note="Sturm count of phi(x) - x is 0")
        if fixed and f.psi_poly is not None:
            return _v(NO, "P1", note="phi(x) - x has a real root; the weight is a nonzero polynomial")
    return _v(_pb_evidence(ctx), "EV-pb")


def _topologizable(ctx, pb):
    f = ctx.f
    if pb.value == YES:
        v = _v(YES, "T4")
        return v, v
    if f.sqrt_example and f.psi_poly is not None and ctx.enabled("T3"):
        v = _v(YES if f.psi_poly.is_constant() else NO, "T3")
        return v, v
    if f.affine is not None and f.affine[0] != 0 and f.psi_poly is not None and ctx.enabled("T2"):
        v = _v(YES if f.psi_poly.is_constant() else NO, "T2")
        return v, v
    if f.phi_poly is not None and f.deg >= 1 and f.psi_const is not None and f.psi_const != 0 and ctx.enabled("T1"):
        return _v(YES, "T1"), _v(UNKNOWN, "NA", note="m-topologizability of polynomial symbols of degree >= 2 with fixed points is open")
    if f.phi_poly is not None and f.deg >= 2 and f.fixed_point[0] and f.psi_poly is not None:
        note = "topologizability for degree >= 2 symbols with fixed points and nonconstant weights is open"
        return _v(UNKNOWN, "NA", note=note), _v(UNKNOWN, "NA", note=note)
    t, m = _top_evidence(ctx)
    return _v(t, "EV-top"), _v(m, "EV-top")


def _iterates_to_zero(ctx, pb):
    f = ctx.f
    c = _abs_const(f)
    if f.psi_zero and ctx.enabled("R3"):
        return _v(YES, "R3")
    if pb.value == NO:
        return _v(NO, "Z5")
    if pb.value != YES:
        # every rule below that concludes Yes presupposes power boundedness
        return _v(LIKELY_NO if pb.value == LIKELY_NO else UNKNOWN, "EV-pb" if pb.value == LIKELY_NO else "NA")
    if f.phi_poly is not None and f.deg >= 2 and not f.fixed_point[0] and f.psi_in_om is True and ctx.enabled("Z1"):
        return _v(YES, "Z1")
    if f.affine is not None and c is not None:
        a, b = f.affine
        if a == 1 and b != 0 and c < 1 and ctx.enabled("Z2"):
            return _v(YES, "Z2")
        if (a == 1 and b == 0) or a == -1:
            if c < 1 and ctx.enabled("Z3"):
                return _v(YES, "Z3", note="C_phi is the identity or an involution")
            if c == 1 and ctx.enabled("Z4"):
                return _v(NO, "Z4")
    if f.sqrt_example and c is not None and c < 1 and ctx.enabled("Z3"):
        return _v(YES, "Z3", note="C_phi is power bounded for phi = sqrt(1+x^2)")
    if pb.value == LIKELY_NO:
        return _v(LIKELY_NO, "EV-pb")
    return _v(UNKNOWN, "NA")


def _ergodic(ctx, pb):
    f = ctx.f
    if pb.value == YES:
        return _v(YES, "E1")
    if (
        f.phi_poly is not None and f.deg >= 2 and f.psi_const == 1
        and f.fixed_point[0] and ctx.enabled("E2")
    ):
        return _v(NO, "E2")
    return _v(UNKNOWN, "NA")


def _supercyclic(ctx):
    f = ctx.f
    if f.phi_poly is None:
        raise NotApplicable("weak supercyclicity rules need a polynomial symbol in one variable")
    if f.psi_poly is not None and (f.psi_zero or sturm_count(f.psi_poly) > 0) and ctx.enabled("S1"):
        return _v(NO, "S1")
    translation = f.affine is not None and f.affine[0] == 1 and f.affine[1] != 0
    if not translation and f.psi_in_om is True and ctx.enabled("S2"):
        return _v(NO, "S2")
    if translation:
        return _v(UNKNOWN, "S3")
    return _v(UNKNOWN, "NA")


def _universal(phi_forms, cfg):
    disabled = cfg.disabled_rules
    if all(p.is_polynomial() for p in phi_forms) and "U1" not in disabled:
        return _v(YES, "U1")
    d = len(phi_forms)
    parts = [deriv(p, tuple(1 if j == i else 0 for j in range(d))) for p in phi_forms for i in range(d)]
    tests = [in_OM(p) for p in parts]
    if "U2" not in disabled:
        if all(t is True for t in tests):
            return _v(YES, "U2")
        if d == 1 and any(t is False for t in tests):
            return _v(NO, "U2")
    return _v(UNKNOWN, "NA")


# --- public operations ------------------------------------------------------------------------


def _with_phase(sp, v):
    return v.with_note(_entry("PH")) if sp.phase else v


def classify_acts(sp, cfg=None):
    """Whether the operator acts (continuously) on S.

    >>> classify_acts(SymbolPair.parse("x^3", "x^2+1")).value.value
    'Yes'
    """
    ctx = _Context(sp, cfg or ClassifierConfig())
    return _acts(ctx)


def _require_acts(ctx, acts):
    acts = acts or _acts(ctx)
    if acts.value == NO:
        raise PreconditionViolated("the operator does not act on S")
    return acts


def classify_power_bounded(sp, cfg=None, acts=None):
    """Power boundedness.

    >>> classify_power_bounded(SymbolPair.parse("5*x^7-3", "x^2+1")).value.value
    'Yes'
    """
    ctx = _Context(sp, cfg or ClassifierConfig())
    _require_acts(ctx, acts)
    return _with_phase(sp, _power_bounded(ctx))


def classify_topologizable(sp, cfg=None, acts=None, pb=None):
    """``(topologizable, m_topologizable)``.

    >>> [v.value.value for v in classify_topologizable(SymbolPair.parse("1", "x+1"))]
    ['Yes', 'Yes']
    """
    ctx = _Context(sp, cfg or ClassifierConfig())
    _require_acts(ctx, acts)
    pb = pb or _power_bounded(ctx)
    return _topologizable(ctx, pb)


def classify_iterates_to_zero(sp, cfg=None, acts=None, pb=None):
    ctx = _Context(sp, cfg or ClassifierConfig())
    _require_acts(ctx, acts)
    pb = pb or _power_bounded(ctx)
    return _iterates_to_zero(ctx, pb)


def classify_supercyclicity(sp, cfg=None):
    """Whether weak supercyclicity is still possible (No means excluded).

    >>> classify_supercyclicity(SymbolPair.parse("1", "x^2+1")).value.value
    'No'
    """
    return _supercyclic(_Context(sp, cfg or ClassifierConfig()))


def classify_universal_weights(phi, cfg=None):
    """Whether every weight in S yields an operator on S, for the symbol ``phi``.

    >>> classify_universal_weights([parse_expr("exp(x)")]).value.value
    'No'
    """
    phi = list(phi)
    d = max(len(phi), dim_of(*phi))
    return _universal([form_of(p, d) for p in phi], cfg or ClassifierConfig())


@dataclass
class ClassificationReport:
    verdicts: dict
    evidence: list = field(default_factory=list)

    def __getattr__(self, name):
        if name in PROPERTIES:
            return self.verdicts[name]
        raise AttributeError(name)

    def to_dict(self):
        return {
            "verdicts": {k: self.verdicts[k].to_dict() for k in PROPERTIES},
            "evidence": self.evidence,
        }


# property -> properties that must also be Yes whenever it is Yes
IMPLICATIONS = {
    "power_bounded": ("m_topologizable", "uniformly_mean_ergodic", "cesaro_bounded", "acts_on_S"),
    "m_topologizable": ("topologizable", "acts_on_S"),
    "topologizable": ("acts_on_S",),
    "iterates_to_zero": ("power_bounded", "acts_on_S"),
    "uniformly_mean_ergodic": ("acts_on_S",),
    "cesaro_bounded": ("acts_on_S",),
}


def check_report(verdicts):
    """Raise :class:`InternalInconsistency` when the implication lattice or the exactness firewall breaks."""
    for prop, implied in IMPLICATIONS.items():
        if verdicts[prop].value == YES:
            for other in implied:
                if verdicts[other].value != YES:
                    raise InternalInconsistency(f"{prop} = Yes but {other} = {verdicts[other].value.value}")
    for prop, v in verdicts.items():
        if not v.rationale:
            raise InternalInconsistency(f"{prop} has no rationale")
        if any(not r.citation for r in v.rationale):
            raise InternalInconsistency(f"{prop} has an entry without citation")
        if v.value.exact and not all(r.exact for r in v.rationale):
            raise InternalInconsistency(f"{prop} = {v.value.value} rests on numeric evidence")


def full_report(sp, cfg=None):
    """Run every classifier and enforce the implication lattice."""
    cfg = cfg or ClassifierConfig()
    ctx = _Context(sp, cfg)
    out = {}
    acts = _acts(ctx)
    out["acts_on_S"] = acts
    if acts.value == NO:
        for prop in PROPERTIES[1:-2]:
            out[prop] = _v(NO, "AN")
        out["weak_supercyclicity_possible"] = _v(NO, "AN")
    else:
        pb = _power_bounded(ctx)
        out["power_bounded"] = _with_phase(sp, pb)
        out["topologizable"], out["m_topologizable"] = _topologizable(ctx, pb)
        out["iterates_to_zero"] = _iterates_to_zero(ctx, pb)
        erg = _ergodic(ctx, pb)
        out["uniformly_mean_ergodic"] = erg
        out["cesaro_bounded"] = erg
        try:
            out["weak_supercyclicity_possible"] = _supercyclic(ctx)
        except NotApplicable as e:
            out["weak_supercyclicity_possible"] = _v(UNKNOWN, "NA", note=str(e))
    out["universal_schwartz_weights"] = _universal(ctx.f.phis, cfg)
    check_report(out)
    return ClassificationReport(out, ctx.evidence)


__all__ = [
    "SymbolPair", "PropertyValue", "PropertyVerdict", "RationaleEntry", "ClassificationReport",
    "ClassifierConfig", "classify_acts", "classify_power_bounded", "classify_topologizable",
    "classify_iterates_to_zero", "classify_supercyclicity", "classify_universal_weights",
    "full_report", "in_OM", "check_report", "PROPERTIES", "CITATIONS",
]
