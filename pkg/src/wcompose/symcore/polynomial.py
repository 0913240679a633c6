"""Exact sparse polynomials over the rationals."""

import math
from fractions import Fraction
from numbers import Rational

#: Degree of the zero polynomial.  Deliberately not -1.
DEG_ZERO = -math.inf


def _frac(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"polynomial coefficients must be rational, got {type(c).__name__}")


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Immutable polynomial in ``nvars`` variables with Fraction coefficients.

    Terms are stored as a mapping from exponent tuples to nonzero
    coefficients.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars, terms=None):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError(f"exponent {exps} does not match {nvars} variables")
                c = _frac(c)
                if c:
                    clean[exps] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c, nvars=1):
        c = _frac(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def zero(cls, nvars=1):
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars=1):
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, axis, nvars=1):
        if not 0 <= axis < nvars:
            raise ValueError(f"axis {axis} out of range for {nvars} variables")
        return cls._raw(nvars, {tuple(1 if i == axis else 0 for i in range(nvars)): Fraction(1)})

    @classmethod
    def from_coeffs(cls, coeffs, nvars=1, axis=0):
        """Univariate polynomial from low-to-high coefficients in variable ``axis``."""
        terms = {}
        for k, c in enumerate(coeffs):
            e = [0] * nvars
            e[axis] = k
            terms[tuple(e)] = c
        return cls(nvars, terms)

    # --- inspection -----------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self):
        """Total degree, ``DEG_ZERO`` for the zero polynomial."""
        if not self._terms:
            return DEG_ZERO
        return max(sum(e) for e in self._terms)

    def degree_in(self, axis):
        if not self._terms:
            return DEG_ZERO
        return max(e[axis] for e in self._terms)

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    def constant_value(self):
        """The value of a constant polynomial (raises otherwise)."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def axes(self):
        """Set of variable indices that actually occur."""
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return used

    def is_univariate(self):
        return len(self.axes()) <= 1

    # --- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Polynomial.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        c = _frac(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def diff(self, axis):
        out = {}
        for e, c in self._terms.items():
            k = e[axis]
            if k:
                ne = list(e)
                ne[axis] = k - 1
                out[tuple(ne)] = c * k
        return Polynomial._raw(self.nvars, out)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def sort_key(self):
        return (self.nvars, tuple(sorted((e, (c.numerator, c.denominator)) for e, c in self._terms.items())))

    # --- evaluation / substitution ---------------------------------------

    def evaluate(self, point, one=1):
        """Evaluate at ``point`` (a sequence of ``nvars`` ring elements).

        Works for any values supporting ``+``, ``*`` and integer powers,
        e.g. Fractions, floats or normal forms.  ``one`` is the
        multiplicative identity of that ring.
        """
        if len(point) != self.nvars:
            raise ValueError("evaluation point has the wrong dimension")
        powers = [dict() for _ in range(self.nvars)]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = point[i] ** k
            return cache[k]

        total = None
        for e, c in sorted(self._terms.items()):
            term = None
            for i, k in enumerate(e):
                if k:
                    f = pw(i, k)
                    term = f if term is None else term * f
            term = (one * c) if term is None else term * c
            total = term if total is None else total + term
        return (one * 0) if total is None else total

    def __call__(self, *point):
        return self.evaluate(point)

    def compose(self, inner):
        """Substitute polynomials ``inner[i]`` for variable ``i``."""
        if len(inner) != self.nvars:
            raise ValueError("composition needs one inner polynomial per variable")
        n_out = inner[0].nvars
        return self.evaluate(list(inner), one=Polynomial.one(n_out))

    # --- univariate helpers -------------------------------------------------

    def coeffs(self, axis=0):
        """Dense low-to-high coefficients in ``axis`` (other axes must be absent)."""
        if self.axes() - {axis}:
            raise ValueError("polynomial is not univariate in the requested axis")
        if not self._terms:
            return []
        out = [Fraction(0)] * (self.degree_in(axis) + 1)
        for e, c in self._terms.items():
            out[e[axis]] = c
        return out

    def leading_coefficient(self, axis=0):
        cs = self.coeffs(axis)
        return cs[-1] if cs else Fraction(0)

    def _lead(self):
        # graded lexicographic leading term
        e = max(self._terms, key=lambda t: (sum(t), t))
        return e, self._terms[e]

    def exact_div(self, other):
        """Return ``self / other`` if the division is exact, else ``None``."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return Polynomial.zero(self.nvars)
        le, lc = other._lead()
        rem = self
        quot = {}
        while not rem.is_zero():
            e, c = rem._lead()
            if any(a < b for a, b in zip(e, le)):
                return None
            qe = tuple(a - b for a, b in zip(e, le))
            qc = c / lc
            quot[qe] = quot.get(qe, 0) + qc
            rem = rem - Polynomial._raw(self.nvars, {qe: qc}) * other
        return Polynomial(self.nvars, quot)

    # --- printing -----------------------------------------------------------

    def to_text(self, names=None):
        names = names or default_names(self.nvars)
        if not self._terms:
            return "0"
        parts = []
        ordered = sorted(self._terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-k for k in kv[0])))
        for idx, (e, c) in enumerate(ordered):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{_rat_text(mag)}*{mono}"
            else:
                body = _rat_text(mag)
            if idx == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()!r}, nvars={self.nvars})"


def _rat_text(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def default_names(d):
    return ["x"] if d == 1 else [f"x{i + 1}" for i in range(d)]
