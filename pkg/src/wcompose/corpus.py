"""Regression corpus of worked examples with their expected verdicts.

Each entry names the pair, the verdicts it must produce, what kind of
statement backs it (``theorem``, ``worked-example``, ``derived`` or
``trivial``) and a citation string.  Entries lacking either field are
rejected.
"""

import json
from dataclasses import dataclass, field

from .classifier import PROPERTIES, ClassifierConfig, SymbolPair, full_report

KINDS = ("theorem", "worked-example", "derived", "trivial")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    psi: str
    phi: str
    expect: dict
    kind: str
    citation: str
    dim: int = 1
    phase: bool = False

    def pair(self):
        return SymbolPair.parse(self.psi, self.phi, self.dim, self.phase)

    def to_dict(self):
        return {
            "id": self.id, "psi": self.psi, "phi": self.phi, "dim": self.dim, "phase": self.phase,
            "expect": dict(self.expect), "kind": self.kind, "citation": self.citation,
        }


def _e(id, psi, phi, kind, citation, **expect):
    return CorpusEntry(id, psi, phi, expect, kind, citation)


PB_NO_FIXED = "degree >= 2 polynomial symbol without fixed points: power bounded with powers tending to 0 for every multiplier weight"
AFFINE_PB = "affine symbols: translations are power bounded only for constant weights of modulus < 1; |a| not in {0,1} never"
SQRT = "sqrt(1+x^2) with a polynomial weight: power bounded iff the weight is a constant of modulus <= 1"
NOT_TOP = "affine symbol with a nonconstant polynomial weight is not topologizable"
SUPER = "weak supercyclicity forces a translation symbol and a zero-free weight"

BUILTIN = (
    _e("xsq1-poly", "5*x^7-3", "x^2+1", "theorem", PB_NO_FIXED,
       power_bounded="Yes", iterates_to_zero="Yes", uniformly_mean_ergodic="Yes", cesaro_bounded="Yes"),
    _e("xsq1-one", "1", "x^2+1", "theorem", PB_NO_FIXED,
       power_bounded="Yes", iterates_to_zero="Yes", uniformly_mean_ergodic="Yes"),
    _e("xsq1-cubic", "x^3-2*x", "x^2+1", "theorem", PB_NO_FIXED,
       power_bounded="Yes", iterates_to_zero="Yes", uniformly_mean_ergodic="Yes"),
    _e("xsq2-x", "x", "x^2+2", "theorem", PB_NO_FIXED, iterates_to_zero="Yes"),
    _e("acts-poly", "x^3", "x^2+1", "theorem", "polynomial weights are multipliers for a nonconstant polynomial symbol",
       acts_on_S="Yes"),
    _e("acts-const-symbol", "1", "2", "derived", "a bounded symbol forces the weight into S", acts_on_S="No"),
    _e("xsq-fixed", "1", "x^2", "derived", "x^2 - x has the real roots 0 and 1, so power boundedness fails",
       power_bounded="No", uniformly_mean_ergodic="No", cesaro_bounded="No"),
    _e("half-x-half", "1/2", "1/2*x", "theorem", AFFINE_PB, power_bounded="No"),
    _e("half-x-poly", "x^2+1", "1/2*x", "theorem", AFFINE_PB, power_bounded="No"),
    _e("translation-one", "1", "x+1", "worked-example",
       "the translation operator is m-topologizable but not power bounded",
       topologizable="Yes", m_topologizable="Yes", power_bounded="No"),
    _e("translation-c-half", "1/2", "x+1", "theorem", AFFINE_PB, power_bounded="Yes", iterates_to_zero="Yes"),
    _e("translation-c-one", "1", "x+3", "theorem", AFFINE_PB, power_bounded="No"),
    _e("translation-c-two", "2", "x-1", "theorem", AFFINE_PB, power_bounded="No"),
    _e("affine-nonconst-translation", "x^2", "x+1", "theorem", NOT_TOP, topologizable="No", m_topologizable="No"),
    _e("affine-nonconst-dilation", "x", "2*x+1", "theorem", NOT_TOP, topologizable="No"),
    _e("affine-nonconst-flip", "x+1", "-x+1", "theorem", NOT_TOP, topologizable="No"),
    _e("sqrt-half", "1/2", "sqrt(1+x^2)", "worked-example", SQRT, power_bounded="Yes"),
    _e("sqrt-one", "1", "sqrt(1+x^2)", "worked-example", SQRT, power_bounded="Yes"),
    _e("sqrt-two", "2", "sqrt(1+x^2)", "worked-example", SQRT, power_bounded="No", m_topologizable="Yes"),
    _e("sqrt-x", "x", "sqrt(1+x^2)", "worked-example", SQRT, power_bounded="No"),
    _e("sqrt-cubic", "x^3", "sqrt(1+x^2)", "worked-example",
       "sqrt(1+x^2) with a nonconstant polynomial weight is not topologizable",
       topologizable="No", m_topologizable="No"),
    _e("exp-exp", "exp(x)", "exp(x)", "worked-example", "the weight exp with the symbol exp acts and is power bounded",
       acts_on_S="Yes", power_bounded="Yes"),
    _e("super-xsq", "1", "x^2", "theorem", SUPER, weak_supercyclicity_possible="No"),
    _e("super-xsq1", "1", "x^2+1", "theorem", SUPER, weak_supercyclicity_possible="No"),
    _e("super-cubic", "1", "x^3-x", "theorem", SUPER, weak_supercyclicity_possible="No"),
    _e("super-dilation", "1", "2*x+1", "theorem", SUPER, weak_supercyclicity_possible="No"),
    _e("super-zero-of-psi", "x", "x+1", "theorem", "a weight with a real zero excludes weak supercyclicity",
       weak_supercyclicity_possible="No"),
    _e("super-translation", "1+x^2", "x+1", "trivial", "only necessary conditions are known for translations",
       weak_supercyclicity_possible="Unknown"),
    _e("identity", "1", "x", "trivial", "the powers of the identity are constant", iterates_to_zero="No",
       power_bounded="Yes"),
    _e("universal-cubic", "1", "x^3", "trivial", "polynomial derivatives are multipliers",
       universal_schwartz_weights="Yes"),
    _e("universal-sqrt", "1", "sqrt(1+x^2)", "derived", "x/sqrt(1+x^2) lies in O_M",
       universal_schwartz_weights="Yes"),
    _e("universal-exp", "exp(x)", "exp(x)", "derived", "the derivative exp is not a multiplier",
       universal_schwartz_weights="No"),
)


def entry_from_dict(obj):
    if not isinstance(obj, dict):
        raise CorpusError("corpus entries must be objects")
    missing = [k for k in ("id", "psi", "phi", "expect", "kind", "citation") if not obj.get(k)]
    if missing:
        raise CorpusError(f"entry {obj.get('id', '?')!r} lacks {', '.join(missing)}")
    if obj["kind"] not in KINDS:
        raise CorpusError(f"entry {obj['id']!r} has unknown kind {obj['kind']!r}")
    bad = [k for k in obj["expect"] if k not in PROPERTIES]
    if bad:
        raise CorpusError(f"entry {obj['id']!r} expects unknown properties {bad}")
    return CorpusEntry(obj["id"], obj["psi"], obj["phi"], dict(obj["expect"]), obj["kind"], obj["citation"],
                       int(obj.get("dim", 1)), bool(obj.get("phase", False)))


def load_corpus(path):
    """Read a JSON list of entries; raises :class:`CorpusError` when malformed or empty."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise CorpusError(f"cannot read corpus {path}: {e}") from e
    if not isinstance(data, list) or not data:
        raise CorpusError("corpus is empty")
    return [entry_from_dict(o) for o in data]


@dataclass
class CorpusResult:
    rows: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.mismatches


def run_entries(entries, cfg=None):
    cfg = cfg or ClassifierConfig()
    res = CorpusResult()
    for e in entries:
        if not e.kind or not e.citation:
            raise CorpusError(f"entry {e.id!r} lacks its kind or citation")
        report = full_report(e.pair(), cfg)
        for prop, want in sorted(e.expect.items()):
            got = report.verdicts[prop].value.value
            res.rows.append((e.id, prop, want, got))
            if got != want:
                res.mismatches.append((e.id, prop, want, got))
    return res
