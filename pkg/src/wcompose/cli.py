"""Command-line front end.

    wcompose classify --psi "1" --phi "x^2+1" [--format json]
    wcompose check pb-b --phi "x^2" --alpha 1 --n 1..6
    wcompose corpus [--corpus FILE] [--disable-rule P1]

Exit codes: 0 success, 1 corpus mismatch or a violated inequality,
2 malformed input, 3 internal inconsistency.
"""

import argparse
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .classifier import PROPERTIES, ClassifierConfig, SymbolPair, full_report
from .corpus import BUILTIN, CorpusError, load_corpus, run_entries
from .errors import InternalInconsistency, WcomposeError
from .faadibruno import F_form
from .growth import (
    GridConfig,
    IterateJets,
    check_small_decay,
    exists_q,
    exp_tower_inequality,
    iterate_sup_table,
    numeric_sup,
    poly_sup_finite,
)
from .iterates import IterateCache
from .symcore.form import form_of
from .symcore.multiindex import MultiIndex, indices_up_to

CRITERIA = ("acts", "pb-a", "pb-b", "top-a", "top-b", "smalldecay", "exp-ineq")


class UsageError(Exception):
    pass


def clean(obj):
    """JSON-safe copy: infinities and NaN become strings, Fractions become text."""
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    return obj


def dumps(doc):
    return json.dumps(clean(doc), sort_keys=True, indent=2)


# --- argument parsing ------------------------------------------------------------------------


def _range(text, conv=int):
    try:
        a, b = text.split("..")
        return conv(a), conv(b)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from e


def _int_range(text):
    return _range(text, int)


def _frac_range(text):
    return _range(text, Fraction)


def _multi(text):
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--psi", default="1", help="weight expression (default 1)")
    common.add_argument("--phi", default="x", help="symbol, components separated by commas")
    common.add_argument("--dim", type=int, default=None)
    common.add_argument("--psi-phase", action="store_true", help="the weight carries a nontrivial complex phase")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--alpha-max", type=int, default=4)
    common.add_argument("--q-max", type=int, default=16)
    common.add_argument("--n-max", type=int, default=8)
    common.add_argument("--grid-J", type=int, default=512)

    ap = argparse.ArgumentParser(prog="wcompose", description="Classify weighted composition operators on S(R^d).")
    ap.add_argument("--version", action="version", version=f"wcompose {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="full property report")

    chk = sub.add_parser("check", parents=[common], help="one targeted criterion")
    chk.add_argument("criterion", choices=CRITERIA)
    chk.add_argument("--alpha", type=_multi, default=None)
    chk.add_argument("--lambda", dest="lam", type=_multi, default=None)
    chk.add_argument("--p", type=Fraction, default=Fraction(1))
    chk.add_argument("--q", type=Fraction, default=None)
    chk.add_argument("--n", type=_int_range, default=None, help="iterate range a..b")
    chk.add_argument("--xrange", type=_frac_range, default=(Fraction(-20), Fraction(5)))
    chk.add_argument("--step", type=Fraction, default=Fraction(1, 4))

    cor = sub.add_parser("corpus", parents=[common], help="run the regression corpus")
    cor.add_argument("--corpus", dest="corpus_file", default=None)
    cor.add_argument("--disable-rule", action="append", default=[])
    return ap


def config_from(args):
    return ClassifierConfig(
        alpha_max=args.alpha_max,
        q_max=args.q_max,
        n_max=args.n_max,
        grid=GridConfig(J=args.grid_J),
        disabled_rules=frozenset(getattr(args, "disable_rule", []) or []),
    )


def pair_from(args):
    return SymbolPair.parse(args.psi, args.phi, args.dim, args.psi_phase)


def _normalized(sp):
    d = sp.d
    return {
        "psi": form_of(sp.psi, d).to_expr().to_text(d),
        "phi": [form_of(f, d).to_expr().to_text(d) for f in sp.phi],
        "dim": d,
        "psi_phase": sp.phase,
    }


# --- classify ---------------------------------------------------------------------------------


def report_document(sp, cfg):
    rep = full_report(sp, cfg)
    body = rep.to_dict()
    return {
        "tool": "wcompose",
        "version": __version__,
        "input": _normalized(sp),
        "config": cfg.to_dict(),
        "verdicts": body["verdicts"],
        "evidence": body["evidence"],
    }


def format_report_text(doc):
    inp = doc["input"]
    lines = [f"psi = {inp['psi']}", f"phi = ({', '.join(inp['phi'])})", ""]
    width = max(len(p) for p in PROPERTIES)
    for prop in PROPERTIES:
        v = doc["verdicts"][prop]
        lines.append(f"{prop:<{width}}  {v['value']}")
        for r in v["rationale"]:
            lines.append(f"{'':<{width}}    [{r['rule']}] {r['citation']}")
    if doc["evidence"]:
        lines.append("")
        lines.append("evidence:")
        for e in doc["evidence"]:
            lines.append("  " + json.dumps(clean(e), sort_keys=True))
    return "\n".join(lines)


def run_classify(args, out=None):
    out = out or sys.stdout
    sp = pair_from(args)
    doc = report_document(sp, config_from(args))
    out.write((dumps(doc) if args.format == "json" else format_report_text(doc)) + "\n")
    return 0, doc


# --- check ------------------------------------------------------------------------------------


def _check_acts(args, sp, cfg):
    f = sp.facts
    d = f.d
    alphas = [MultiIndex(args.alpha)] if args.alpha else list(indices_up_to(d, cfg.alpha_max))
    rows = []
    for alpha in alphas:
        if len(alpha) != d:
            raise UsageError(f"--alpha needs {d} entries")
        lams = [MultiIndex(args.lam)] if args.lam else list(indices_up_to(d, alpha.order))
        for lam in lams:
            F = F_form(f.psi, f.phis, alpha, lam, alpha_max=max(cfg.alpha_max, alpha.order))
            row = {"alpha": list(alpha), "lambda": list(lam), "F": F.to_expr().to_text(d), "p": args.p}
            g = F.as_polynomial()
            if d == 1 and g is not None and f.phi_poly is not None:
                q0 = exists_q(g, f.phi_poly, args.p)
                row["exact_q"] = q0
                if args.q is not None:
                    row["exact"] = poly_sup_finite(g, f.phi_poly, args.p, args.q).tag.value
            q = args.q if args.q is not None else Fraction(cfg.q_max)
            nv = numeric_sup(F, f.phis, args.p, q, cfg.grid)
            row["q"] = q
            row["numeric"] = nv.tag.value
            row["bands"] = [[r.band, r.radius, r.running_max] for r in nv.evidence[-4:]]
            rows.append(row)
    return {"criterion": "acts", "rows": rows}, 0


def _n_range(args, cfg, start=1):
    a, b = args.n if args.n else (start, cfg.n_max)
    if a < 1 or b < a:
        raise UsageError("--n needs 1 <= a <= b")
    return a, b


def _exact_iterate_rows(sp, kind, alpha, p, q, a, b):
    """Per-n exact verdicts when psi and phi are univariate polynomials (small n only)."""
    f = sp.facts
    if f.phi_poly is None or f.psi_poly is None:
        return {}
    cache = IterateCache([sp.phi[0]], degree_cap=4096)
    out = {}
    for n in range(a, b + 1):
        try:
            phin = cache.iterate_forms(n)[0].as_polynomial()
            top = cache.weight_forms(f.psi, n) if kind == "a" else cache.iterate_forms(n)[0]
        except WcomposeError:
            break
        g = top.as_polynomial()
        for _ in range(alpha):
            g = g.diff(0)
        out[n] = poly_sup_finite(g, phin, p if kind == "a" else 0, q).tag.value
    return out


def _check_iterates(args, sp, cfg, crit):
    if sp.d != 1:
        raise UsageError(f"{crit} is implemented for d = 1")
    kind = crit[-1]
    alpha = args.alpha[0] if args.alpha else (0 if kind == "a" else 1)
    q = args.q if args.q is not None else Fraction(1)
    a, b = _n_range(args, cfg)
    jets = IterateJets.build(sp.facts.psi, sp.facts.phis, b, alpha)
    rows, tag = iterate_sup_table(jets, kind, alpha, args.p, q, range(a, b + 1))
    exact = _exact_iterate_rows(sp, kind, alpha, args.p, q, a, b)
    table = []
    for r in rows:
        d = r.to_dict()
        if r.n in exact:
            d["exact"] = exact[r.n]
        table.append(d)
    doc = {"criterion": crit, "alpha": alpha, "p": args.p, "q": q, "rows": table}
    if crit.startswith("pb"):
        doc["sup_over_n"] = tag.value
    else:
        doc["per_n_finite"] = all(r.tag.value == "LikelyFinite" for r in rows)
    return doc, 0


def _check_smalldecay(args, sp, cfg):
    c = check_small_decay(sp.psi, sp.phi, cfg.grid)
    return {"criterion": "smalldecay", **c.to_dict()}, 0


def _check_exp_ineq(args, sp, cfg):
    alpha = args.alpha[0] if args.alpha else 0
    lo, hi = args.xrange
    if args.step <= 0 or hi < lo:
        raise UsageError("--xrange needs a <= b and --step > 0")
    xs = []
    x = lo
    while x <= hi:
        xs.append(x)
        x += args.step
    a, b = _n_range(args, cfg)
    rows, n_alpha = exp_tower_inequality(alpha, n_max=b, xs=xs)
    chosen = [r for r in rows if r.n >= a]
    holds = all(r.violations == 0 for r in chosen)
    doc = {
        "criterion": "exp-ineq", "alpha": alpha, "n_alpha": n_alpha, "holds": holds,
        "rows": [r.to_dict() for r in chosen],
    }
    return doc, 0 if holds else 1


def format_check_text(doc):
    lines = []
    rows = doc.get("rows")
    head = {k: v for k, v in doc.items() if k != "rows"}
    for k in sorted(head):
        lines.append(f"{k}: {clean(head[k])}")
    if rows:
        keys = list(rows[0].keys())
        cells = [[json.dumps(clean(r.get(k))) if isinstance(r.get(k), list) else str(clean(r.get(k))) for k in keys] for r in rows]
        widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
        lines.append("  ".join(k.ljust(w) for k, w in zip(keys, widths)))
        for c in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)))
    return "\n".join(lines)


def run_check(args, out=None):
    out = out or sys.stdout
    cfg = config_from(args)
    sp = pair_from(args)
    crit = args.criterion
    if crit == "acts":
        doc, code = _check_acts(args, sp, cfg)
    elif crit in ("pb-a", "pb-b", "top-a", "top-b"):
        doc, code = _check_iterates(args, sp, cfg, crit)
    elif crit == "smalldecay":
        doc, code = _check_smalldecay(args, sp, cfg)
    else:
        doc, code = _check_exp_ineq(args, sp, cfg)
    doc["input"] = _normalized(sp)
    out.write((dumps(doc) if args.format == "json" else format_check_text(doc)) + "\n")
    return code, doc


# --- corpus -----------------------------------------------------------------------------------


def run_corpus(args, out=None):
    out = out or sys.stdout
    entries = load_corpus(args.corpus_file) if args.corpus_file else list(BUILTIN)
    res = run_entries(entries, config_from(args))
    if args.format == "json":
        doc = {
            "total": len(res.rows),
            "mismatches": [dict(zip(("id", "property", "expected", "got"), m)) for m in res.mismatches],
        }
        out.write(dumps(doc) + "\n")
    else:
        w = max(len(r[0]) for r in res.rows)
        for eid, prop, want, got in res.rows:
            mark = "ok" if want == got else "MISMATCH"
            out.write(f"{eid:<{w}}  {prop:<28} expected {want:<8} got {got:<10} {mark}\n")
        out.write(f"{len(res.rows) - len(res.mismatches)}/{len(res.rows)} verdicts match\n")
        for eid, prop, want, got in res.mismatches:
            out.write(f"- {eid}: {prop} expected {want}, got {got}\n")
    return (0 if res.ok else 1), res


VALUE_FLAGS = ("--psi", "--phi", "--xrange", "--alpha", "--lambda", "--p", "--q")


def _glue_values(argv):
    """``--xrange -20..5`` -> ``--xrange=-20..5`` so leading minus signs survive argparse."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    argv = _glue_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    handlers = {"classify": run_classify, "check": run_check, "corpus": run_corpus}
    try:
        code, _ = handlers[args.command](args)
        return code
    except InternalInconsistency as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return 3
    except (WcomposeError, CorpusError, UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
