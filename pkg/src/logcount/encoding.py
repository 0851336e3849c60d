"""Bit-string encodings of two-sorted arithmetic.

A string is a finite set of natural numbers.  Lists, grids and number
matrices are packed into a single string through the pairing function
``<x, y> = (x + y)(x + y + 1) + 2y``.  Every builder in this module emits the
canonical encoding: bits at positions that are not pair numbers are zero.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from math import isqrt
from typing import Iterable, Iterator, Mapping, Sequence


class BitString:
    """Immutable finite set of bit positions.

    ``len(X)`` is one past the largest set position (0 for the empty string)
    and ``X(i)`` is the membership query, false for every ``i >= len(X)``.
    """

    __slots__ = ("_bits", "_len")

    def __init__(self, positions: Iterable[int] = ()):
        bits = frozenset(positions)
        if any(p < 0 for p in bits):
            raise ValueError("bit positions must be natural numbers")
        self._bits = bits
        self._len = max(bits) + 1 if bits else 0

    @classmethod
    def _trusted(cls, bits: frozenset[int]) -> "BitString":
        # caller guarantees a frozenset of naturals
        obj = object.__new__(cls)
        obj._bits = bits
        obj._len = max(bits) + 1 if bits else 0
        return obj

    @classmethod
    def from_int(cls, value: int) -> "BitString":
        """The string whose set bits are the binary digits of ``value``."""
        if value < 0:
            raise ValueError("negative value has no binary string")
        out = []
        i = 0
        while value:
            low = value & -value
            i = low.bit_length() - 1
            out.append(i)
            value ^= low
        return cls._trusted(frozenset(out))

    @classmethod
    def from_literal(cls, text: str) -> "BitString":
        """Parse an LSB-first ``'0'/'1'`` literal."""
        if any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit literal: {text!r}")
        return cls(i for i, ch in enumerate(text) if ch == "1")

    def to_int(self) -> int:
        value = 0
        for p in self._bits:
            value |= 1 << p
        return value

    def to_literal(self) -> str:
        return "".join("1" if i in self._bits else "0" for i in range(self._len))

    def __call__(self, i: int) -> bool:
        return i in self._bits

    def __len__(self) -> int:
        return self._len

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._bits))

    def __contains__(self, i: object) -> bool:
        return i in self._bits

    @property
    def positions(self) -> frozenset[int]:
        return self._bits

    def popcount(self) -> int:
        return len(self._bits)

    def flip(self, i: int) -> "BitString":
        return BitString(self._bits ^ {i})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BitString):
            return self._bits == other._bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._bits)

    def __repr__(self) -> str:
        return f"BitString({self.to_literal()!r})"


EMPTY = BitString()


def pair(*xs: int) -> int:
    """``<x1, ..., xk>``, chained to the left; ``pair(x)`` is ``x``."""
    if not xs:
        raise TypeError("pair() needs at least one argument")
    acc = xs[0]
    for y in xs[1:]:
        s = acc + y
        acc = s * (s + 1) + 2 * y
    return acc


@lru_cache(maxsize=1 << 20)
def _unpair(z: int) -> tuple[int, int] | None:
    # s is the largest value with s(s+1) <= z; pair numbers of diagonal s
    # fill the even offsets 0, 2, ..., 2s above s(s+1).
    s = (isqrt(4 * z + 1) - 1) // 2
    off = z - s * (s + 1)
    if off % 2 or off // 2 > s:
        return None
    y = off // 2
    return s - y, y


def is_pair(z: int) -> bool:
    return _unpair(z) is not None


def left(z: int) -> int:
    p = _unpair(z)
    return p[0] if p else 0


def right(z: int) -> int:
    p = _unpair(z)
    return p[1] if p else 0


def unpair_search(z: int) -> tuple[int, int] | None:
    """Invert the pairing function by bounded search over ``y, w <= z``."""
    for s in range(z + 1):
        base = s * (s + 1)
        if base > z:
            break
        for y in range(s + 1):
            if base + 2 * y == z:
                return s - y, y
    return None


def unpack(z: int, k: int) -> tuple[int, ...] | None:
    """Invert the left-chained ``k``-tuple pairing, or None if ``z`` is not one."""
    out = []
    for _ in range(k - 1):
        p = _unpair(z)
        if p is None:
            return None
        z, last = p
        out.append(last)
    out.append(z)
    return tuple(reversed(out))


def row(x: int, Z: BitString) -> BitString:
    """``Z^[x]``: bit ``i`` set iff ``i < |Z|`` and ``Z(<x, i>)``."""
    out = []
    for b in Z.positions:
        p = _unpair(b)
        if p is not None and p[0] == x:
            out.append(p[1])
    return BitString._trusted(frozenset(out))


def rows(Z: BitString) -> dict[int, BitString]:
    """All non-empty rows of ``Z`` at once, keyed by row index."""
    groups: dict[int, list[int]] = defaultdict(list)
    for b in Z.positions:
        p = _unpair(b)
        if p is not None:
            groups[p[0]].append(p[1])
    return {x: BitString._trusted(frozenset(v)) for x, v in groups.items()}


def row2(x: int, y: int, Z: BitString) -> BitString:
    """``Z^[x][y]``, the (x, y) string of a grid of strings."""
    return row(y, row(x, Z))


def seq(i: int, Z: BitString) -> int:
    """Least ``y < |Z|`` with ``Z(<i, y>)``; ``|Z|`` when row ``i`` is empty."""
    r = row(i, Z)
    return min(r.positions) if r.positions else len(Z)


def entry(i: int, j: int, Z: BitString) -> int:
    return seq(j, row(i, Z))


def parity(X: BitString) -> bool:
    return X.popcount() % 2 == 1


def build_list(items: Sequence[BitString]) -> BitString:
    return BitString._trusted(
        frozenset(pair(i, b) for i, s in enumerate(items) for b in s.positions)
    )


def build_grid(items: Sequence[Sequence[BitString]]) -> BitString:
    return build_list([build_list(r) for r in items])


def build_numlist(nums: Sequence[int]) -> BitString:
    """One bit ``<i, nums[i]>`` per element."""
    if any(v < 0 for v in nums):
        raise ValueError("list entries must be natural numbers")
    return BitString(pair(i, v) for i, v in enumerate(nums))


def build_natmatrix(nums: Sequence[Sequence[int]]) -> BitString:
    return build_list([build_numlist(r) for r in nums])


def build_sparse_list(items: Mapping[int, BitString]) -> BitString:
    """Like :func:`build_list` but with explicit (possibly sparse) row indices."""
    return BitString._trusted(
        frozenset(pair(i, b) for i, s in items.items() for b in s.positions)
    )


def only_pair_bits(Z: BitString) -> bool:
    return all(is_pair(b) for b in Z.positions)
