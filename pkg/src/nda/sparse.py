"""Exact naturals stored as the positions of their set bits.

Double-exponential projector values such as 2**(2**80) cannot be
materialised, but every value the arithmetic builds from them is a sum or
product of powers of two.  ``SparseNat`` keeps only the exponents, so sums,
products and comparisons stay exact and cheap.
"""

import heapq
import sys

_HASH_MODULUS = sys.hash_info.modulus

# refuse to materialise anything wider than this many bits
MAX_MATERIALIZE_BITS = 1 << 24


def _normalize(exponents):
    """Collapse a multiset of exponents into a canonical binary form."""
    counts = {}
    for e in exponents:
        counts[e] = counts.get(e, 0) + 1
    heap = list(counts)
    heapq.heapify(heap)
    out = []
    while heap:
        e = heapq.heappop(heap)
        c = counts.pop(e)
        if c & 1:
            out.append(e)
        carry = c >> 1
        if carry:
            if e + 1 in counts:
                counts[e + 1] += carry
            else:
                counts[e + 1] = carry
                heapq.heappush(heap, e + 1)
    out.reverse()
    return tuple(out)


def _bits_of(n):
    if n < 0:
        raise ValueError(f"negative value {n} is not a natural number")
    out = []
    e = 0
    while n:
        low = (n & -n).bit_length() - 1
        e += low
        out.append(e)
        n >>= low + 1
        e += 1
    out.reverse()
    return tuple(out)


class SparseNat:
    """A natural number held as a descending tuple of distinct bit positions.

    Interoperates with ``int`` for ``+``, ``*``, equality and ordering.
    Equal values hash equally whether they are ``int`` or ``SparseNat``.
    """

    __slots__ = ("_exps",)

    def __init__(self, exponents=()):
        self._exps = _normalize(exponents)

    @classmethod
    def power_of_two(cls, e):
        obj = cls.__new__(cls)
        obj._exps = (e,)
        return obj

    @classmethod
    def from_int(cls, n):
        obj = cls.__new__(cls)
        obj._exps = _bits_of(n)
        return obj

    @property
    def exponents(self):
        return self._exps

    def bit_length(self):
        return self._exps[0] + 1 if self._exps else 0

    def _coerce(self, other):
        if isinstance(other, SparseNat):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return SparseNat.from_int(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return SparseNat(self._exps + other._exps)

    __radd__ = __add__

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return SparseNat(a + b for a in self._exps for b in other._exps)

    __rmul__ = __mul__

    # descending distinct exponents compare lexicographically in numeric order
    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._exps == other._exps

    def __lt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._exps < other._exps

    def __le__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._exps <= other._exps

    def __gt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._exps > other._exps

    def __ge__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._exps >= other._exps

    def __hash__(self):
        # matches hash(int) for positive ints: value mod the hash modulus
        return sum(pow(2, e, _HASH_MODULUS) for e in self._exps) % _HASH_MODULUS

    def __bool__(self):
        return bool(self._exps)

    def __int__(self):
        if self.bit_length() > MAX_MATERIALIZE_BITS:
            raise OverflowError(
                f"refusing to materialise a {self.bit_length()}-bit integer")
        n = 0
        for e in self._exps:
            n |= 1 << e
        return n

    __index__ = __int__

    def __repr__(self):
        if self.bit_length() <= 64:
            return f"SparseNat({int(self)})"
        terms = " + ".join(f"2**{e}" for e in self._exps)
        return f"SparseNat({terms})"

    def __str__(self):
        if self.bit_length() <= MAX_MATERIALIZE_BITS:
            return str(int(self))
        return " + ".join(f"2^{e}" for e in self._exps)
