"""
Classifying weighted composition operators
==========================================

Each verdict comes with the rule that produced it.  Exact rules give
Yes/No; grid evidence can only say LikelyYes, LikelyNo or Unknown.
"""

from wcompose.classifier import PROPERTIES, ClassifierConfig, SymbolPair, full_report

pairs = [
    ("5*x^7-3", "x^2+1"),
    ("1", "x^2"),
    ("1", "x+1"),
    ("1/2", "x+1"),
    ("x^2", "x+1"),
    ("2", "sqrt(1+x^2)"),
    ("exp(x)", "exp(x)"),
]

short = {p: p[:10] for p in PROPERTIES}
print(f"{'psi':10} {'phi':12}", " ".join(f"{short[p]:10}" for p in PROPERTIES))
for psi, phi in pairs:
    rep = full_report(SymbolPair.parse(psi, phi))
    print(f"{psi:10} {phi:12}", " ".join(f"{rep.verdicts[p].value.value:10}" for p in PROPERTIES))

# why is the translation not power bounded?
rep = full_report(SymbolPair.parse("1", "x+1"))
for r in rep.power_bounded.rationale:
    print(f"[{r.rule}] {r.citation}")

# no exact rule applies here, so the verdicts come from the grid
rep = full_report(SymbolPair.parse("exp(-x^2)", "exp(x)"), ClassifierConfig(n_max=5))
for p in ("acts_on_S", "power_bounded"):
    v = rep.verdicts[p]
    print(p, v.value.value, [r.rule for r in v.rationale])
