"""
Bell polynomials and the chain rule for weighted compositions
=============================================================

Derivatives of psi * (f o phi) split into f^(lambda)(phi) times
coefficient functions F_{alpha,lambda} built from psi and phi alone.
"""

from wcompose.faadibruno import assemble_F, bell, bell_row_sum, enumerate_p, fdb_derivative
from wcompose.symcore import parse_expr

names = ["x1", "x2", "x3", "x4", "x5"]
for beta in range(1, 5):
    row = [bell(beta, lam).poly.to_text(names[: beta - lam + 1]) for lam in range(1, beta + 1)]
    print(f"B_{beta},lam:", " | ".join(row))

# summing a row at (1,...,1) counts set partitions
print("Bell numbers:", [bell_row_sum(b) for b in range(8)])

# the multivariate index set behind the chain rule
for t in enumerate_p((2, 1), (1, 1)):
    print("k =", [tuple(k) for k in t.ks], " l =", [tuple(l) for l in t.ells])

psi, phi = parse_expr("x"), [parse_expr("x^2+1")]
for a in range(3):
    for lam in range(a + 1):
        print(f"F_{a},{lam} =", assemble_F(psi, phi, (a,), (lam,)).to_text())

print("(f o phi)'' for f = exp:", fdb_derivative(parse_expr("exp(x)"), phi, (2,)).to_text())
