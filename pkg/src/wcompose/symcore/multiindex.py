"""Multi indices in N_0^d with the graded-lexicographic order used by the
multivariate Faa di Bruno formula."""

from itertools import product
from math import comb, factorial

from ..errors import DimensionMismatch


class MultiIndex(tuple):
    """An element of N_0^d.

    The rich comparisons implement the strict total order ``a < b``:
    first by length ``|a|``, then lexicographically by entries.  Use
    :meth:`dominated_by` for the componentwise partial order ``a <= b``
    that appears in binomial sums.
    """

    __slots__ = ()

    def __new__(cls, entries):
        entries = tuple(int(e) for e in entries)
        if not entries:
            raise ValueError("a multi index needs at least one entry")
        if any(e < 0 for e in entries):
            raise ValueError(f"negative entry in multi index {entries}")
        return super().__new__(cls, entries)

    @classmethod
    def zero(cls, d):
        return cls((0,) * d)

    @classmethod
    def unit(cls, d, axis):
        return cls(tuple(1 if i == axis else 0 for i in range(d)))

    @property
    def dim(self):
        return len(self)

    @property
    def order(self):
        """``|alpha|``, the sum of the entries."""
        return sum(self)

    def is_zero(self):
        return not any(self)

    def _check(self, other):
        if len(self) != len(other):
            raise DimensionMismatch(f"multi index dimensions differ: {len(self)} vs {len(other)}")

    def prec(self, other):
        self._check(other)
        if self.order != other.order:
            return self.order < other.order
        return tuple(self) < tuple(other)

    def __lt__(self, other):
        return self.prec(other)

    def __gt__(self, other):
        return MultiIndex(other).prec(self)

    def __le__(self, other):
        return self == other or self.prec(other)

    def __ge__(self, other):
        return self == other or MultiIndex(other).prec(self)

    def dominated_by(self, other):
        """Componentwise ``self <= other``."""
        self._check(other)
        return all(a <= b for a, b in zip(self, other))

    def plus(self, other):
        self._check(other)
        return MultiIndex(a + b for a, b in zip(self, other))

    def minus(self, other):
        self._check(other)
        return MultiIndex(a - b for a, b in zip(self, other))

    def scaled(self, m):
        return MultiIndex(m * a for a in self)

    def factorial(self):
        out = 1
        for a in self:
            out *= factorial(a)
        return out

    def binom(self, other):
        """Multi-binomial ``(self choose other)``; zero unless dominated."""
        self._check(other)
        out = 1
        for a, b in zip(self, other):
            out *= comb(a, b)
        return out

    def __repr__(self):
        return f"MultiIndex({tuple(self)})"


def mi_prec(a, b):
    """True iff ``a`` strictly precedes ``b``."""
    return MultiIndex(a).prec(MultiIndex(b))


def indices_of_order(d, n):
    """All multi indices of dimension ``d`` and length ``n``, in increasing order."""
    if d == 1:
        return [MultiIndex((n,))]
    out = []
    for first in range(n + 1):
        for rest in indices_of_order(d - 1, n - first):
            out.append(MultiIndex((first,) + tuple(rest)))
    return sorted(out)


def indices_up_to(d, n):
    """All multi indices with ``|alpha| <= n``, in increasing order."""
    out = []
    for k in range(n + 1):
        out.extend(indices_of_order(d, k))
    return out


def dominated(alpha):
    """All ``beta`` with ``beta <= alpha`` componentwise, in increasing order."""
    return sorted(MultiIndex(b) for b in product(*(range(a + 1) for a in alpha)))
