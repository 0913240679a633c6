"""Acceptance suite: eight criteria, each at its stated tolerance.

Run under pytest (a PASS/FAIL line per criterion is printed in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import io
import json
import os
import sys
import time
from contextlib import redirect_stdout
from fractions import Fraction

sys.path.insert(0, os.path.dirname(__file__))

from helpers import compose_polys, pdiff, random_poly, seeded  # noqa: E402
from wcompose import cli  # noqa: E402
from wcompose.classifier import SymbolPair, classify_power_bounded, full_report  # noqa: E402
from wcompose.corpus import BUILTIN  # noqa: E402
from wcompose.faadibruno import bell, fdb_form, leibniz_fdb_rhs  # noqa: E402
from wcompose.growth import GrowthTag, exp_tower_inequality, numeric_sup, poly_sup_finite  # noqa: E402
from wcompose.rootcheck import has_fixed_point  # noqa: E402
from wcompose.symcore import Form, Polynomial, as_polynomial, indices_up_to, parse_expr, poly_to_expr  # noqa: E402

RESULTS = {}

NAMES = {
    1: "chain-rule sum equals direct differentiation",
    2: "Leibniz plus chain-rule identity",
    3: "Bell polynomial checks",
    4: "worked-example corpus",
    5: "exact and grid growth verdicts agree",
    6: "exp-tower inequality",
    7: "power boundedness independent of the weight",
    8: "deterministic machine-readable reports",
}


def _record(n, ok, detail):
    RESULTS[n] = (ok, detail)
    return ok, detail


# --- 1 -------------------------------------------------------------------------------------


def criterion_1():
    rng = seeded(101)
    t0 = time.perf_counter()
    checked = 0
    for i in range(100):
        d = 1 + i % 2
        f = random_poly(rng, d, max_deg=4, nonzero=False)
        phis = [random_poly(rng, d, max_deg=4, nonzero=False) for _ in range(d)]
        direct = compose_polys(f, phis)
        forms = [Form.poly(p) for p in phis]
        for beta in indices_up_to(d, 3):
            got = fdb_form(Form.poly(f), forms, beta).as_polynomial()
            if got != pdiff(direct, beta):
                return _record(1, False, f"mismatch at f={f!r}, phi={phis!r}, beta={tuple(beta)}")
            checked += 1
    dt = time.perf_counter() - t0
    return _record(1, dt < 30, f"{checked} derivatives over 100 pairs exact, {dt:.1f}s (limit 30s)")


# --- 2 -------------------------------------------------------------------------------------


def criterion_2():
    rng = seeded(202)
    checked = 0
    for i in range(50):
        d = 1 + i % 2
        psi = random_poly(rng, d, max_deg=3, nonzero=False)
        f = random_poly(rng, d, max_deg=3, nonzero=False)
        phis = [random_poly(rng, d, max_deg=3, nonzero=False) for _ in range(d)]
        lhs_base = psi * compose_polys(f, phis)
        forms = [Form.poly(p) for p in phis]
        for alpha in indices_up_to(d, 3):
            rhs = leibniz_fdb_rhs(Form.poly(psi), Form.poly(f), forms, alpha).as_polynomial()
            if rhs != pdiff(lhs_base, alpha):
                return _record(2, False, f"mismatch at alpha={tuple(alpha)}")
            checked += 1
    return _record(2, True, f"{checked} identities over 50 triples exact")


# --- 3 -------------------------------------------------------------------------------------


def criterion_3():
    for beta in range(1, 6):
        if bell(beta, 1).poly != Polynomial.variable(beta - 1, beta):
            return _record(3, False, f"B_{beta},1 != x_{beta}")
        if bell(beta, beta).poly != Polynomial.variable(0, 1) ** beta:
            return _record(3, False, f"B_{beta},{beta} != x_1^{beta}")
    sums = [sum(bell(b, lam)(*([1] * (b + 1))) for lam in range(b + 1)) for b in range(6)]
    ok = sums == [1, 1, 2, 5, 15, 52]
    return _record(3, ok, f"edge cases exact, row sums {[int(s) for s in sums]}")


# --- 4 -------------------------------------------------------------------------------------

POLY_WEIGHTS = ["5*x^7-3", "1", "x^3-2*x", "x", "-2*x^2+1"]


def _corpus_4():
    """(psi, phi, {property: expected}) for every case the criterion lists."""
    cases = []
    for psi in POLY_WEIGHTS:
        cases.append((psi, "x^2+1", {"power_bounded": "Yes", "iterates_to_zero": "Yes", "uniformly_mean_ergodic": "Yes"}))
        cases.append((psi, "1/2*x", {"power_bounded": "No"}))
    cases.append(("1", "x+1", {"m_topologizable": "Yes", "power_bounded": "No"}))
    for c in ("1/2", "1", "2"):
        want = "Yes" if Fraction(c) < 1 else "No"
        for b in ("+1", "-3"):
            cases.append((c, f"x{b}", {"power_bounded": want}))
    for psi in ("x", "x^2+1", "x^3-x"):
        for phi in ("x+1", "2*x+1", "-x+1", "1/2*x-3"):
            cases.append((psi, phi, {"topologizable": "No"}))
    for psi, want in (("1/2", "Yes"), ("1", "Yes"), ("2", "No"), ("x", "No")):
        cases.append((psi, "sqrt(1+x^2)", {"power_bounded": want}))
    cases.append(("exp(x)", "exp(x)", {"acts_on_S": "Yes", "power_bounded": "Yes"}))
    for phi in ("x^2", "x^2+1", "x^3-x", "2*x+1"):
        cases.append(("1", phi, {"weak_supercyclicity_possible": "No"}))
    for psi in ("1", "1+x^2", "3"):
        cases.append((psi, "x+1", {"weak_supercyclicity_possible": "Unknown"}))
    return cases


def criterion_4():
    t0 = time.perf_counter()
    cases = _corpus_4()
    bad = []
    for psi, phi, expect in cases:
        rep = full_report(SymbolPair.parse(psi, phi))
        for prop, want in expect.items():
            got = rep.verdicts[prop].value.value
            if got != want:
                bad.append(f"({psi}, {phi}) {prop}: expected {want}, got {got}")
    dt = time.perf_counter() - t0
    checks = sum(len(e) for _, _, e in cases)
    if bad:
        return _record(4, False, "; ".join(bad[:3]))
    return _record(4, dt < 10, f"{checks} verdicts on {len(cases)} pairs match, {dt:.1f}s (limit 10s)")


# --- 5 -------------------------------------------------------------------------------------


def criterion_5(count=200):
    rng = seeded(505)
    agree = unknown = 0
    wrong = []
    for _ in range(count):
        g = random_poly(rng, max_deg=6)
        phi = random_poly(rng, max_deg=4)
        p = rng.choice([Fraction(1, 2), 1, 2, 3])
        q = rng.choice([Fraction(1, 2), 1, 2, 3])
        exact = poly_sup_finite(g, phi, p, q).tag
        num = numeric_sup(poly_to_expr(g), [poly_to_expr(phi)], p, q).tag
        if num is GrowthTag.UNKNOWN:
            unknown += 1
        elif (num is GrowthTag.LIKELY_FINITE) == (exact is GrowthTag.FINITE):
            agree += 1
        else:
            wrong.append((g, phi, p, q, exact.value, num.value))
    rate = unknown / count
    ok = not wrong and rate < 0.20
    return _record(5, ok, f"{count} instances: {agree} agree, {len(wrong)} disagree, Unknown rate {rate:.1%} (limit 20%)")


# --- 6 -------------------------------------------------------------------------------------


def criterion_6():
    xs = [Fraction(k, 4) for k in range(-80, 21)]
    parts = []
    for alpha in (0, 1, 2):
        rows, n_alpha = exp_tower_inequality(alpha, n_max=8, xs=xs)
        if n_alpha is None:
            return _record(6, False, f"alpha={alpha}: fails even at n=8")
        held = [r for r in rows if r.n >= n_alpha]
        if any(r.violations or r.points != len(xs) for r in held):
            return _record(6, False, f"alpha={alpha}: violations for n >= {n_alpha}")
        parts.append(f"alpha={alpha}: n={n_alpha}..8")
    return _record(6, True, f"holds at all {len(xs)} points for " + ", ".join(parts))


# --- 7 -------------------------------------------------------------------------------------


def criterion_7():
    rng = seeded(707)
    parts = []
    for phi_text in ("x^2+1", "x^2", "x^4+x+3"):
        phi = parse_expr(phi_text)
        seen = set()
        for _ in range(10):
            psi = random_poly(rng, max_deg=rng.randint(0, 5))
            seen.add(classify_power_bounded(SymbolPair(poly_to_expr(psi), (phi,))).value.value)
        fixed, _ = has_fixed_point(as_polynomial(phi, 1))  # Sturm count of phi(x) - x
        expected = {"No" if fixed else "Yes"}
        if seen != expected:
            return _record(7, False, f"{phi_text}: verdicts {sorted(seen)}, fixed point {fixed}")
        parts.append(f"{phi_text} -> {seen.pop()}")
    return _record(7, True, "one verdict per symbol across 10 weights: " + ", ".join(parts))


# --- 8 -------------------------------------------------------------------------------------


def _classify_json(e):
    buf = io.StringIO()
    argv = ["classify", "--psi", e.psi, "--phi", e.phi, "--format", "json"]
    if e.phase:
        argv.append("--psi-phase")
    with redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def criterion_8():
    for e in BUILTIN:
        c1, a = _classify_json(e)
        c2, b = _classify_json(e)
        if c1 != 0 or c2 != 0 or a != b:
            return _record(8, False, f"{e.id}: reports differ or exit codes {c1}, {c2}")
        if cli.dumps(json.loads(a)) + "\n" != a:
            return _record(8, False, f"{e.id}: re-serialized report differs")
    return _record(8, True, f"{len(BUILTIN)} corpus entries give byte-identical reports twice")


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8}


def summary_lines():
    out = []
    for n in sorted(CRITERIA):
        if n not in RESULTS:
            continue
        ok, detail = RESULTS[n]
        out.append(f"{'PASS' if ok else 'FAIL'} criterion {n} ({NAMES[n]}): {detail}")
    return out


def _check(n):
    ok, detail = CRITERIA[n]()
    assert ok, detail


def test_criterion_1_chain_rule_sum():
    _check(1)


def test_criterion_2_leibniz_identity():
    _check(2)


def test_criterion_3_bell_polynomials():
    _check(3)


def test_criterion_4_worked_examples():
    _check(4)


def test_criterion_5_growth_agreement():
    _check(5)


def test_criterion_6_exp_tower_inequality():
    _check(6)


def test_criterion_7_weight_independence():
    _check(7)


def test_criterion_8_determinism():
    _check(8)


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        ok, _ = CRITERIA[n]()
        failed += not ok
        print(summary_lines()[-1], flush=True)
    sys.exit(1 if failed else 0)
