"""
Fixed points by Sturm sequences
===============================

For polynomial symbols of degree >= 2 the whole classification turns on
whether phi(x) = x has a real solution.  Sturm chains answer this with
rational arithmetic only.
"""

from wcompose.rootcheck import has_fixed_point, is_positive_on_reals, root_certificate, sturm_count
from wcompose.symcore import as_polynomial, parse_expr


def poly(text):
    return as_polynomial(parse_expr(text), 1)


for text in ["x^2+1", "x^2", "x^4+x+3", "x^3-x", "x+1", "-x^2+3*x"]:
    found, cert = has_fixed_point(poly(text))
    print(f"{text:10} fixed point: {str(found):5}  roots of phi(x)-x: {cert.count}")

# isolating intervals are exact rationals
cert = root_certificate(poly("x^3 - 2*x - 1/3"))
for lo, hi in cert.intervals:
    print(f"  one root in ({lo}, {hi}]")

print("roots of x^5 - x in (0, oo):", sturm_count(poly("x^5 - x"), 0))
print("1 + x^2 positive everywhere:", is_positive_on_reals(poly("1 + x^2")))
