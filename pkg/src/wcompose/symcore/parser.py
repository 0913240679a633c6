"""Recursive-descent parser for the expression grammar.

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' int)?
    atom   := rational | var | '(' expr ')' | 'exp' '(' expr ')' | 'sqrt' '(' expr ')'
    var    := 'x' | 'x1' .. 'xd'
    rational := int ('/' posint)?

Whitespace is ignored.  A ``sqrt(...)`` atom may carry a negative
exponent (``sqrt(1+x^2)^-1``) so that printed derivatives parse back.
"""

import re
from fractions import Fraction

from ..errors import ParseError
from . import expr as ex
from .form import form_of

_TOKEN = re.compile(r"\s*(?:(\d+)|(exp|sqrt)|(x\d*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("fn", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            tokens.append(("var", m.group(3), m.start(3)))
        elif m.group(4) is not None:
            ch = m.group(4)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(4))
            tokens.append(("op", ch, m.start(4)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, d):
        self.text = text
        self.d = d
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[1] != value or t[0] not in ("op",):
            raise ParseError(f"expected {value!r}, found {t[1] or 'end of input'!r}", t[2])
        return t

    def at_op(self, value):
        t = self.peek()
        return t[0] == "op" and t[1] == value

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        e = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected {t[1]!r}", t[2])
        return e

    def expr(self):
        terms = []
        if self.at_op("-"):
            self.take()
            terms.append(ex.Product((ex.Const(-1), self.term())))
        else:
            terms.append(self.term())
        while self.at_op("+") or self.at_op("-"):
            op = self.take()[1]
            t = self.term()
            terms.append(t if op == "+" else ex.Product((ex.Const(-1), t)))
        return terms[0] if len(terms) == 1 else ex.Sum(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.at_op("*"):
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else ex.Product(tuple(factors))

    def factor(self):
        base = self.atom()
        if not self.at_op("^"):
            return base
        self.take()
        negative = False
        if self.at_op("-"):
            if not (isinstance(base, ex.SqrtPoly) and base.power == 1):
                raise ParseError("negative exponents are only allowed on sqrt(...)", self.peek()[2])
            self.take()
            negative = True
        t = self.take()
        if t[0] != "int":
            raise ParseError("exponent must be a nonnegative integer", t[2])
        k = int(t[1])
        if negative:
            if k == 0:
                raise ParseError("exponent -0 is not allowed", t[2])
            return ex.SqrtPoly(base.poly, -k)
        return ex.IntPow(base, k)

    def atom(self):
        t = self.take()
        kind, val, pos = t
        if kind == "int":
            num = int(val)
            if self.at_op("/"):
                self.take()
                den = self.take()
                if den[0] != "int":
                    raise ParseError("denominator of a rational must be a positive integer", den[2])
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2])
                return ex.Const(Fraction(num, int(den[1])))
            return ex.Const(num)
        if kind == "var":
            if val == "x":
                return ex.Var(0)
            k = int(val[1:])
            if not 1 <= k <= self.d:
                raise ParseError(f"variable {val} outside dimension {self.d}", pos)
            return ex.Var(k - 1)
        if kind == "fn":
            self.expect("(")
            inner_start = self.peek()[2]
            inner = self.expr()
            self.expect(")")
            if val == "exp":
                return ex.Exp(inner)
            return self._sqrt(inner, inner_start)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)

    def _sqrt(self, inner, pos):
        from ..errors import PositivityError
        from ..rootcheck import is_positive_on_reals

        p = form_of(inner, self.d).as_polynomial()
        if p is None:
            raise ParseError("sqrt argument must reduce to a polynomial", pos)
        if len(p.axes()) > 1:
            raise PositivityError("sqrt of a multivariate polynomial cannot be certified positive")
        if p.is_zero() or not is_positive_on_reals(p):
            raise PositivityError(f"sqrt argument {p.to_text()} is not strictly positive on the reals")
        return ex.SqrtPoly(p, 1)


def parse_expr(text, d=1):
    """Parse ``text`` into an expression tree over ``d`` variables.

    >>> parse_expr("x^2 + 1").to_text()
    'x^2 + 1'
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    return _Parser(text, d).parse()
