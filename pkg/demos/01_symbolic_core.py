"""
Expressions, normal forms and numbers too big for floats
========================================================

Weights and symbols are written in a small grammar: rational
polynomials, exp(.), sqrt(positive polynomial) and products of these.
"""

from wcompose.symcore import LogReal, differentiate, eval_logreal, form_of, parse_expr

# parse and print back; sums are sorted on normalisation
e = parse_expr("(x+1)*(x-1) + exp(x^2)")
print("parsed    :", e.to_text())
print("normalised:", form_of(e, 1).to_expr().to_text())

# exact derivatives stay inside the grammar
for text in ["exp(x^2)", "sqrt(1+x^2)", "x^3*exp(-x)"]:
    print(f"d/dx {text:12} = {differentiate(parse_expr(text), 0).to_text()}")

# sqrt needs a polynomial that is positive on the whole line
try:
    parse_expr("sqrt(x^2 - 1)")
except ValueError as err:
    print("rejected:", err)

# exp(exp(exp(x))) at x = 10 overflows any float; LogReal keeps sign and log|.|
v = eval_logreal(parse_expr("exp(exp(exp(x)))"), [10])
print("sign", v.sign, "log-level", v.log.level, "float value", float(v))

a = LogReal.of(3.0).exp().exp()  # exp(exp(3))
print("log|a*a| =", (a * a).logmag, "vs 2*exp(3) =", 2 * 2.718281828459045**3)
