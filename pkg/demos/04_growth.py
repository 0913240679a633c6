"""
Suprema of (1+|x|)^p |g| / (1+|phi|)^q, exactly and on a grid
==============================================================

For polynomials the answer is a degree count.  For anything else a
geometric grid x = +-2^(j/8) gives evidence: the running maximum of the
log ratio either settles or keeps climbing band after band.
"""

from fractions import Fraction

import numpy as np

from wcompose.growth import check_small_decay, exists_q, numeric_sup, poly_sup_finite
from wcompose.symcore import Polynomial, parse_expr, poly_to_expr

x = Polynomial.variable(0)
g, phi = 2 * x, x * x + 1
print("smallest q for g=2x, phi=x^2+1, p=2:", exists_q(g, phi, 2))
for q in (Fraction(5, 4), Fraction(3, 2), 2):
    exact = poly_sup_finite(g, phi, 2, q).tag.value
    grid = numeric_sup(poly_to_expr(g), [poly_to_expr(phi)], 2, q).tag.value
    print(f"  q = {q}: exact {exact:8}  grid {grid}")

# exp against exp: no polynomial bound, but the grid still sees a finite sup
v = numeric_sup(parse_expr("exp(x)"), [parse_expr("exp(x)")], 1, 2)
print("exp/exp, p=1, q=2:", v.tag.value)
print(" band  radius      running max")
for row in v.evidence[-5:]:
    print(f" {row.band:4d}  {row.radius:10.3g}  {row.running_max:.4f}")

# a diverging case: the running max climbs by about ln 2 per band
v = numeric_sup(parse_expr("x^3"), [parse_expr("x")], 1, 3)
incs = np.diff([r.running_max for r in v.evidence[-4:]])
print("x^3 vs x, p=1, q=3:", v.tag.value, "increments", np.round(incs, 3))

for text in ["x^2-5", "1", "exp(-x^2)"]:
    c = check_small_decay(parse_expr(text), [parse_expr("x^2+1")])
    print(f"small decay of {text:10}: {c.verdict.value:8} m = {c.m}  exact = {c.exact}")
