"""
The wcompose command line
=========================

Same calls as ``wcompose classify ...`` from a shell; exit codes are
0 (ok), 1 (check or corpus failed), 2 (bad input), 3 (internal
inconsistency).
"""

from wcompose.cli import main

print("exit", main(["classify", "--psi", "x", "--phi", "x+1"]))
print("exit", main(["check", "smalldecay", "--psi", "x^2-5", "--phi", "x^2+1"]))
print("exit", main(["check", "pb-b", "--phi", "x^2", "--alpha", "1", "--n", "1..6"]))
print("exit", main(["check", "exp-ineq", "--alpha", "1", "--n", "3..8", "--xrange", "-20..5"]))
print("exit", main(["classify", "--psi", "x +", "--phi", "x"]))
