"""Sign-magnitude integers as bit strings.

Bit 0 is the sign (set iff negative) and bit ``i + 1`` carries ``2**i`` of the
magnitude.  Zero has exactly one encoding, the empty string.  Addition and
multiplication are evaluated bit by bit from their bit-definitions rather than
by decoding to native integers.
"""

from __future__ import annotations

from typing import Sequence

from .encoding import EMPTY, BitString, build_list, build_sparse_list, rows


def encode_int(z: int) -> BitString:
    mag = BitString.from_int(abs(z))
    bits = {p + 1 for p in mag.positions}
    if z < 0:
        bits.add(0)
    return BitString(bits)


def intsize(X: BitString) -> int:
    return sum(1 << (p - 1) for p in X.positions if p > 0)


def decode_int(X: BitString) -> int:
    size = intsize(X)
    return -size if X(0) else size


def binary_part(X: BitString) -> BitString:
    return BitString._trusted(frozenset(p - 1 for p in X.positions if p > 0))


def canonical(X: BitString) -> BitString:
    """Drop a sign bit that sits on a zero magnitude."""
    if X(0) and X.popcount() == 1:
        return EMPTY
    return X


def is_canonical(X: BitString) -> bool:
    return canonical(X) == X


# The three relations below transcribe their bit-definitions literally, with
# quantifiers bounded by the string lengths involved.


def carry_z(i: int, X: BitString, Y: BitString) -> bool:
    """Same signs and a carry into bit ``i`` of the shifted magnitudes."""
    if X(0) != Y(0):
        return False
    for k in range(1, i):
        if X(k) and Y(k) and all(X(j) or Y(j) for j in range(k + 1, i)):
            return True
    return False


def first_int_dominates(X: BitString, Y: BitString) -> bool:
    """``intsize(X) > intsize(Y)``, decided by bit comparison."""
    if len(X) < len(Y):
        return False
    n = len(X)
    # k starts at 1: position 0 is the sign, not part of the magnitude.
    for k in range(1, n + 1):
        if X(k) and not Y(k) and all(X(j) for j in range(k + 1, n + 1) if Y(j)):
            return True
    return False


def borrow(i: int, X: BitString, Y: BitString) -> bool:
    """Opposite signs, X dominates, and bit ``i`` of X is borrowed from."""
    if X(0) == Y(0) or not first_int_dominates(X, Y):
        return False
    for k in range(1, i):
        if not X(k) and Y(k) and all((not X(j)) or Y(j) for j in range(k + 1, i)):
            return True
    return False


def _scan(i_max: int, gen, prop) -> list[bool]:
    # Unrolls "exists k in (0, i) with gen(k) and prop(j) for all k < j < i"
    # into the ripple recurrence; out[i] is the relation at bit i.
    out = [False] * (i_max + 1)
    for i in range(1, i_max):
        out[i + 1] = gen(i) or (prop(i) and out[i])
    return out


def add_z(X: BitString, Y: BitString) -> BitString:
    """Integer addition evaluated from the sign clauses and the bitwise XOR
    with exactly one of Carry / Borrow(X, Y) / Borrow(Y, X)."""
    X, Y = canonical(X), canonical(Y)
    top = max(len(X), len(Y)) + 1
    same = X(0) == Y(0)
    x_dom = first_int_dominates(X, Y)
    y_dom = first_int_dominates(Y, X)

    no = [False] * (top + 1)
    carry = _scan(top, lambda k: X(k) and Y(k), lambda j: X(j) or Y(j)) if same else no
    bxy = _scan(top, lambda k: not X(k) and Y(k), lambda j: not X(j) or Y(j)) if not same and x_dom else no
    byx = _scan(top, lambda k: not Y(k) and X(k), lambda j: not Y(j) or X(j)) if not same and y_dom else no

    bits = []
    if (X(0) and Y(0)) or (X(0) and x_dom) or (Y(0) and y_dom):
        bits.append(0)
    for i in range(1, top + 1):
        if X(i) ^ Y(i) ^ (carry[i] or bxy[i] or byx[i]):
            bits.append(i)
    return BitString(bits)


def _ripple(x: int, y: int) -> int:
    while y:
        x, y = x ^ y, (x & y) << 1
    return x


def add_bin(X: BitString, Y: BitString) -> BitString:
    """Natural-number binary addition with a ripple carry."""
    return BitString.from_int(_ripple(X.to_int(), Y.to_int()))


def mul_bin(X: BitString, Y: BitString) -> BitString:
    """Natural-number binary multiplication, schoolbook shift-and-add."""
    x = X.to_int()
    acc = 0
    for i in Y.positions:
        acc = _ripple(acc, x << i)
    return BitString.from_int(acc)


def mul_z(X: BitString, Y: BitString) -> BitString:
    if not X.positions or not Y.positions:
        return EMPTY
    X, Y = canonical(X), canonical(Y)
    mag = mul_bin(binary_part(X), binary_part(Y))
    if not mag.positions:
        return EMPTY
    bits = {p + 1 for p in mag.positions}
    if X(0) != Y(0):
        bits.add(0)
    return BitString(bits)


def sum_nat(n: int, m: int, Z: BitString) -> BitString:
    """Binary sum of rows ``0..n-1`` of ``Z``.

    ``m`` is the nominal row width; the sum is exact whatever its value.
    """
    acc = 0
    for i, r in rows(Z).items():
        if i < n:
            acc = _ripple(acc, r.to_int())
    return BitString.from_int(acc)


def pos_list(Z: BitString) -> BitString:
    return build_sparse_list({i: binary_part(r) for i, r in rows(Z).items() if not r(0)})


def neg_list(Z: BitString) -> BitString:
    return build_sparse_list({i: binary_part(r) for i, r in rows(Z).items() if r(0)})


def pos_sum(n: int, m: int, Z: BitString) -> BitString:
    return BitString(p + 1 for p in sum_nat(n, m, pos_list(Z)).positions)


def neg_sum(n: int, m: int, Z: BitString) -> BitString:
    """Sum of the negative entries with its sign bit; the sign bit is set even
    when there are no negative entries."""
    return BitString({0} | {p + 1 for p in sum_nat(n, m, neg_list(Z)).positions})


def sum_z(n: int, m: int, Z: BitString) -> BitString:
    return add_z(pos_sum(n, m, Z), neg_sum(n, m, Z))


def build_intlist(values: Sequence[int]) -> BitString:
    return build_list([encode_int(v) for v in values])
