"""Overflow-free real arithmetic in log space.

A :class:`LogReal` stores a sign and ``log|x|``.  The log itself can be
astronomically large (``exp(exp(exp(5)))`` has a log that overflows a
double), so it is stored as a :class:`Tower`: a signed number
``sign * exp^level(v)`` that never saturates.  Only the magnitude of a
tower is approximate, the ordering is exact up to float rounding.
"""

import math
from fractions import Fraction

#: Largest float whose exponential is still finite.
LOG_MAX = math.log(1.7976931348623157e308)
_LOG_EPS = -745.0


class Tower:
    """Signed real ``sign * exp^level(v)`` with ``v >= 0``.

    Canonical form: ``level >= 1`` implies ``v > LOG_MAX``; zero is
    ``(0, 0, 0.0)``.
    """

    __slots__ = ("sign", "level", "v")

    def __init__(self, sign, level, v):
        self.sign = sign
        self.level = level
        self.v = v

    @staticmethod
    def of(x):
        """Tower for a finite float (``inf`` maps to a level-1 sentinel)."""
        if x == 0:
            return ZERO_T
        s = 1 if x > 0 else -1
        a = abs(x)
        if math.isinf(a):
            return Tower(s, 1, math.inf)
        return Tower(s, 0, a)

    @staticmethod
    def mag_from_log(lg):
        """Nonnegative magnitude ``exp(lg)`` for a Tower or float ``lg``."""
        if not isinstance(lg, Tower):
            lg = Tower.of(lg)
        if lg.sign <= 0:
            val = math.exp(-lg.v) if lg.level == 0 else 0.0
            return Tower(1, 0, val) if val > 0 else ZERO_T
        if lg.level == 0:
            if lg.v <= LOG_MAX:
                return Tower(1, 0, math.exp(lg.v))
            return Tower(1, 1, lg.v)
        return Tower(1, lg.level + 1, lg.v)

    def log_mag(self):
        """``log|self|`` as a Tower; ``-inf`` float sentinel for zero."""
        if self.sign == 0:
            return Tower(-1, 1, math.inf)
        if self.level == 0:
            return Tower.of(math.log(self.v))
        return Tower(1, self.level - 1, self.v)

    def __float__(self):
        if self.level == 0:
            return self.sign * self.v
        return self.sign * math.inf

    def is_zero(self):
        return self.sign == 0

    def __neg__(self):
        return Tower(-self.sign, self.level, self.v)

    def abs(self):
        return Tower(abs(self.sign), self.level, self.v)

    def _mag_key(self):
        return (self.level, self.v)

    def cmp(self, other):
        if self.sign != other.sign:
            return -1 if self.sign < other.sign else 1
        if self.sign == 0:
            return 0
        a, b = self._mag_key(), other._mag_key()
        c = (a > b) - (a < b)
        return c * self.sign

    def __lt__(self, other):
        return self.cmp(_tw(other)) < 0

    def __le__(self, other):
        return self.cmp(_tw(other)) <= 0

    def __gt__(self, other):
        return self.cmp(_tw(other)) > 0

    def __ge__(self, other):
        return self.cmp(_tw(other)) >= 0

    def __eq__(self, other):
        if not isinstance(other, (Tower, int, float)):
            return NotImplemented
        return self.cmp(_tw(other)) == 0

    def __hash__(self):
        return hash((self.sign, self.level, self.v))

    def __add__(self, other):
        other = _tw(other)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        if self.level == 0 and other.level == 0:
            s = self.sign * self.v + other.sign * other.v
            if math.isfinite(s):
                return Tower.of(s)
        big, small = (self, other) if self.abs().cmp(other.abs()) >= 0 else (other, self)
        if big.sign == small.sign:
            mag = _add_mag(big.abs(), small.abs())
        else:
            mag = _sub_mag(big.abs(), small.abs())
        return Tower(big.sign * mag.sign, mag.level, mag.v) if mag.sign else ZERO_T

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_tw(other))

    def __rsub__(self, other):
        return _tw(other) + (-self)

    def scale(self, k):
        """``k * self`` for a finite real ``k``."""
        k = float(k)
        if k == 0 or self.sign == 0:
            return ZERO_T
        s = self.sign * (1 if k > 0 else -1)
        if self.level == 0:
            r = self.v * abs(k)
            if math.isfinite(r):
                return Tower(s, 0, r)
            return Tower(s, 1, math.log(self.v) + math.log(abs(k)))
        if self.level == 1:
            v = self.v + math.log(abs(k))
            if v > LOG_MAX:
                return Tower(s, 1, v)
            return Tower(s, 0, math.exp(v))
        return Tower(s, self.level, self.v)

    def __repr__(self):
        if self.level == 0:
            return f"Tower({self.sign * self.v!r})"
        return f"Tower({'-' if self.sign < 0 else ''}exp^{self.level}({self.v!r}))"


ZERO_T = Tower(0, 0, 0.0)


def _tw(x):
    return x if isinstance(x, Tower) else Tower.of(float(x))


def _from_log(lg):
    return Tower.mag_from_log(lg)


def _add_mag(a, b):
    # a >= b > 0
    if a.level >= 2:
        return a
    la = a.log_mag()
    lb = b.log_mag()
    d = float(lb - la)
    if d < _LOG_EPS:
        return a
    if la.level == 0:
        return _from_log(float(la) + math.log1p(math.exp(d)))
    return a


def _sub_mag(a, b):
    # a >= b > 0, result a - b >= 0
    if a.cmp(b) == 0:
        return ZERO_T
    if a.level >= 2:
        return a
    la = a.log_mag()
    lb = b.log_mag()
    d = float(lb - la)
    if d < _LOG_EPS:
        return a
    if la.level == 0:
        t = math.exp(d)
        if t >= 1.0:
            return ZERO_T
        return _from_log(float(la) + math.log1p(-t))
    return a


class LogReal:
    """A real number stored as ``sign`` and ``log|x|`` (a :class:`Tower`)."""

    __slots__ = ("sign", "log")

    def __init__(self, sign, log):
        if sign == 0:
            log = _NEG_INF_T
        self.sign = sign
        self.log = log if isinstance(log, Tower) else Tower.of(float(log))

    @staticmethod
    def of(x):
        if isinstance(x, LogReal):
            return x
        if isinstance(x, Fraction) or isinstance(x, int):
            x = Fraction(x)
            if x == 0:
                return LOG_ZERO
            s = 1 if x > 0 else -1
            n, d = abs(x.numerator), x.denominator
            return LogReal(s, Tower.of(math.log(n) - math.log(d)))
        x = float(x)
        if x == 0:
            return LOG_ZERO
        if math.isnan(x):
            raise ValueError("cannot represent NaN")
        s = 1 if x > 0 else -1
        return LogReal(s, Tower.of(math.log(abs(x))))

    @property
    def logmag(self):
        """``log|x|`` as a float (``-inf`` for zero, ``+inf`` beyond range)."""
        if self.sign == 0:
            return -math.inf
        return float(self.log)

    def is_zero(self):
        return self.sign == 0

    def __float__(self):
        if self.sign == 0:
            return 0.0
        lg = self.log
        if lg.level == 0:
            v = lg.sign * lg.v
            if v > LOG_MAX:
                return self.sign * math.inf
            return self.sign * math.exp(v)
        return self.sign * (math.inf if lg.sign > 0 else 0.0)

    def magnitude(self):
        """``|x|`` as a Tower."""
        if self.sign == 0:
            return ZERO_T
        return Tower.mag_from_log(self.log)

    def to_tower(self):
        m = self.magnitude()
        return Tower(self.sign * m.sign, m.level, m.v) if m.sign else ZERO_T

    @staticmethod
    def from_tower(t):
        if t.sign == 0:
            return LOG_ZERO
        return LogReal(t.sign, t.abs().log_mag())

    def __neg__(self):
        return LogReal(-self.sign, self.log)

    def __abs__(self):
        return LogReal(abs(self.sign), self.log)

    def __mul__(self, other):
        other = _lr(other)
        if other is NotImplemented:
            return other
        if self.sign == 0 or other.sign == 0:
            return LOG_ZERO
        return LogReal(self.sign * other.sign, self.log + other.log)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lr(other)
        if other.sign == 0:
            raise ZeroDivisionError("LogReal division by zero")
        if self.sign == 0:
            return LOG_ZERO
        return LogReal(self.sign * other.sign, self.log - other.log)

    def __add__(self, other):
        other = _lr(other)
        if other is NotImplemented:
            return other
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        big, small = (self, other) if self.log >= other.log else (other, self)
        d = float(small.log - big.log)
        if d < _LOG_EPS:
            return big
        t = math.exp(d)
        if big.sign == small.sign:
            return LogReal(big.sign, big.log + math.log1p(t))
        if t >= 1.0:
            return LOG_ZERO
        return LogReal(big.sign, big.log + math.log1p(-t))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_lr(other))

    def __rsub__(self, other):
        return _lr(other) + (-self)

    def __pow__(self, k):
        """Integer powers of any sign; rational powers of positive values."""
        if isinstance(k, int):
            if k == 0:
                return LOG_ONE
            if self.sign == 0:
                if k < 0:
                    raise ZeroDivisionError("zero to a negative power")
                return LOG_ZERO
            return LogReal(self.sign ** (k % 2) if self.sign < 0 else 1, self.log.scale(k))
        k = Fraction(k)
        if k.denominator == 1:
            return self ** int(k)
        if self.sign < 0:
            raise ValueError("fractional power of a negative value")
        if self.sign == 0:
            return LOG_ZERO
        return LogReal(1, self.log.scale(float(k)))

    def sqrt(self):
        return self ** Fraction(1, 2)

    def exp(self):
        """``exp(self)``; the result is positive and never overflows."""
        if self.sign == 0:
            return LOG_ONE
        return LogReal(1, self.to_tower())

    def cmp_abs(self, other):
        other = _lr(other)
        if self.sign == 0 or other.sign == 0:
            return (self.sign != 0) - (other.sign != 0)
        return self.log.cmp(other.log)

    def _signed_key_cmp(self, other):
        other = _lr(other)
        if self.sign != other.sign:
            return -1 if self.sign < other.sign else 1
        if self.sign == 0:
            return 0
        return self.log.cmp(other.log) * self.sign

    def __lt__(self, other):
        return self._signed_key_cmp(other) < 0

    def __le__(self, other):
        return self._signed_key_cmp(other) <= 0

    def __gt__(self, other):
        return self._signed_key_cmp(other) > 0

    def __ge__(self, other):
        return self._signed_key_cmp(other) >= 0

    def __eq__(self, other):
        o = _lr(other)
        if o is NotImplemented:
            return NotImplemented
        return self._signed_key_cmp(o) == 0

    def __hash__(self):
        return hash((self.sign, self.log))

    def __repr__(self):
        if self.sign == 0:
            return "LogReal(0)"
        return f"LogReal(sign={self.sign}, log={self.log!r})"


_NEG_INF_T = Tower(-1, 1, math.inf)
LOG_ZERO = LogReal.__new__(LogReal)
LOG_ZERO.sign = 0
LOG_ZERO.log = _NEG_INF_T
LOG_ONE = LogReal(1, ZERO_T)


def _lr(x):
    if isinstance(x, LogReal):
        return x
    if isinstance(x, (int, float, Fraction)):
        return LogReal.of(x)
    return NotImplemented
