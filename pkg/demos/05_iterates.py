"""
Iterates, cocycle weights and the exp tower
===========================================

phi_n is the n-fold composition and psi^{n,phi} the product of psi
along the orbit.  Symbolic expansion is capped; point jets in log space
go as far as needed.
"""

from wcompose.errors import CapExceeded
from wcompose.growth import exp_tower_inequality
from wcompose.iterates import IterateCache, iterate_jets, iterate_symbol, weight_product
from wcompose.symcore import form_of, parse_expr

c = IterateCache([parse_expr("x^2+1")], degree_cap=256)
for n in range(4):
    print(f"phi_{n} =", iterate_symbol(c, n)[0].to_text())
try:
    iterate_symbol(c, 9)
except CapExceeded as err:
    print("refused:", err)

t = IterateCache([parse_expr("x+1")])
print("psi^{3} for psi = x, phi = x+1:", weight_product(t, parse_expr("x"), 3).to_text())

# derivative jets of phi_n at x = 3, far past float range
jets = iterate_jets(form_of(parse_expr("x^2+1"), 1), 3.0, 12, 1)
for n in (4, 8, 12):
    val, der = jets[n]
    print(f"n={n:2d}  log phi_n(3) = {float(val.log):.6g}   log phi_n'(3) = {float(der.log):.6g}")

# weighted powers of exp: the bound holds from n = 2 on, n = 1 fails for x < 0
for alpha in (0, 1, 2):
    rows, n_alpha = exp_tower_inequality(alpha)
    bad = [r.n for r in rows if r.violations]
    print(f"alpha={alpha}: holds for n >= {n_alpha}, failing n: {bad}")
