"""Matrix powering over Z_2 and Z on bit-string encoded matrices.

A Boolean ``n x n`` matrix is a string with bit ``<i, j>`` set iff entry
``(i, j)`` is 1.  An integer matrix stores the sign-magnitude string of entry
``(i, j)`` as ``Row2(i, j, X)``.  A power sequence stores ``X^l`` as row ``l``,
for ``l = 0..k``, so row 0 is always the identity.
"""

from __future__ import annotations

from typing import Sequence

from .encoding import (
    EMPTY,
    BitString,
    _unpair,
    build_grid,
    build_list,
    build_sparse_list,
    pair,
    parity,
    row,
    rows,
    seq,
)
from .intcode import decode_int, encode_int, is_canonical, mul_z, sum_z


class MatrixError(ValueError):
    """A string does not encode a matrix of the stated shape."""


# --- Boolean matrices -------------------------------------------------------


def bool_matrix(entries: Sequence[Sequence[int]]) -> BitString:
    return BitString(
        pair(i, j) for i, r in enumerate(entries) for j, v in enumerate(r) if v % 2
    )


def bool_matrix_rows(n: int, X: BitString) -> list[list[int]]:
    return [[int(X(pair(i, j))) for j in range(n)] for i in range(n)]


def _check_bool(n: int, X: BitString, name: str = "X") -> None:
    for b in X.positions:
        p = _unpair(b)
        if p is None or p[0] >= n or p[1] >= n:
            raise MatrixError(f"{name} has bit {b} outside an {n}x{n} Boolean matrix")


def _masks(n: int, X: BitString) -> tuple[list[int], list[int]]:
    rws = [0] * n
    cols = [0] * n
    for b in X.positions:
        p = _unpair(b)
        if p is not None and p[0] < n and p[1] < n:
            i, j = p
            rws[i] |= 1 << j
            cols[j] |= 1 << i
    return rws, cols


def _from_masks(rws: Sequence[int]) -> BitString:
    out = []
    for i, m in enumerate(rws):
        j = 0
        while m:
            if m & 1:
                out.append(pair(i, j))
            m >>= 1
            j += 1
    return BitString(out)


def id2(n: int) -> BitString:
    return BitString(pair(i, i) for i in range(n))


def g2(n: int, i: int, j: int, X1: BitString, X2: BitString) -> BitString:
    """Bit ``b`` set iff ``b < n`` and ``X1(i, b)`` and ``X2(b, j)``."""
    if not (0 <= i < n and 0 <= j < n):
        raise MatrixError(f"entry ({i}, {j}) out of range for n={n}")
    return BitString(b for b in range(n) if X1(pair(i, b)) and X2(pair(b, j)))


def _prod2_masks(n: int, r1: Sequence[int], c2: Sequence[int]) -> list[int]:
    # entry (i, j) is PARITY of the string G(n, i, j, X1, X2) = r1[i] & c2[j]
    out = [0] * n
    for i in range(n):
        ri = r1[i]
        acc = 0
        for j in range(n):
            if (ri & c2[j]).bit_count() & 1:
                acc |= 1 << j
        out[i] = acc
    return out


def prod2(n: int, X1: BitString, X2: BitString) -> BitString:
    _check_bool(n, X1, "X1")
    _check_bool(n, X2, "X2")
    r1, _ = _masks(n, X1)
    _, c2 = _masks(n, X2)
    return _from_masks(_prod2_masks(n, r1, c2))


def _power_rows(n: int, k: int, X: BitString) -> list[list[int]]:
    rx, _ = _masks(n, X)
    cur = [1 << i for i in range(n)]
    out = [cur]
    for _ in range(k):
        cols = [0] * n
        for i, m in enumerate(cur):
            for j in range(n):
                if m >> j & 1:
                    cols[j] |= 1 << i
        cur = _prod2_masks(n, rx, cols)
        out.append(cur)
    return out


def powseq2(n: int, k: int, X: BitString) -> BitString:
    """``[ID(n), X, X^2, ..., X^k]`` as rows ``0..k`` of one string."""
    _check_bool(n, X)
    mats = _power_rows(n, k, X)
    return build_list([_from_masks(m) for m in mats])


def pow2(n: int, k: int, X: BitString) -> BitString:
    """Row ``k`` of the power sequence, cut at ``<n, n>``."""
    bound = pair(n, n)
    return BitString(i for i in row(k, powseq2(n, k, X)).positions if i < bound)


def powseq2_via_pow(n: int, k: int, X: BitString) -> BitString:
    """The power sequence rebuilt bit by bit from ``pow2`` of each power."""
    return BitString(
        pair(l, b) for l in range(k + 1) for b in pow2(n, l, X).positions
    )


def _delta_size_ok(Y: BitString, bound: int) -> bool:
    # An empty Y can only meet a zero bound (n = k = 0) with equality.
    return len(Y) < bound or not Y.positions


def _powseq_domain_ok(n: int, k: int, Y: BitString) -> bool:
    for b in Y.positions:
        p = _unpair(b)
        if p is None or p[0] > k:
            return False
        q = _unpair(p[1])
        if q is None or q[0] >= n or q[1] >= n:
            return False
    return True


def check_delta_powseq2(n: int, k: int, X: BitString, Y: BitString) -> bool:
    """Decide whether ``Y = PowSeq2(n, k, X)`` from the graph relation.

    Checks the size bound, that set bits are pair numbers lying in rows
    ``0..k`` of ``n x n`` matrices, ``Y^[0] = ID(n)`` and
    ``Y^[i+1] = Prod2(n, X, Y^[i])`` for ``i < k``.
    """
    if not _delta_size_ok(Y, pair(k, pair(n, n))):
        return False
    if not _powseq_domain_ok(n, k, Y):
        return False
    by_row = rows(Y)
    if by_row.get(0, EMPTY) != id2(n):
        return False
    rx, _ = _masks(n, X)
    for i in range(k):
        _, cols = _masks(n, by_row.get(i, EMPTY))
        expect = _from_masks(_prod2_masks(n, rx, cols))
        if by_row.get(i + 1, EMPTY) != expect:
            return False
    return True


def explicit_witness2(n: int, k: int, X: BitString) -> tuple[BitString, BitString]:
    """Power sequence ``Y`` plus the string ``Z`` of every bitwise product.

    ``Row2(l + 1, <i, j>, Z)`` has bit ``b`` iff ``X(i, b)`` and
    ``Y^[l](b, j)``; ``Y^[l + 1](i, j)`` is the parity of that string.
    """
    _check_bool(n, X)
    ys = [id2(n)]
    zbits = []
    for l in range(k):
        prev = ys[-1]
        cur = []
        for i in range(n):
            for j in range(n):
                w = g2(n, i, j, X, prev)
                zbits.extend(pair(l + 1, pair(pair(i, j), b)) for b in w.positions)
                if parity(w):
                    cur.append(pair(i, j))
        ys.append(BitString(cur))
    return build_list(ys), BitString(zbits)


def check_explicit_witness2(
    n: int, k: int, X: BitString, Y: BitString, Z: BitString
) -> bool:
    if not _powseq_domain_ok(n, k, Y):
        return False
    for b in Z.positions:
        p = _unpair(b)
        if p is None or not 1 <= p[0] <= k:
            return False
        q = _unpair(p[1])
        if q is None or q[1] >= n:
            return False
        ij = _unpair(q[0])
        if ij is None or ij[0] >= n or ij[1] >= n:
            return False
    ys = rows(Y)
    zs = rows(Z)
    if ys.get(0, EMPTY) != id2(n):
        return False
    for l in range(k):
        prev = ys.get(l, EMPTY)
        nxt = ys.get(l + 1, EMPTY)
        zl = rows(zs.get(l + 1, EMPTY))
        for i in range(n):
            for j in range(n):
                w = zl.get(pair(i, j), EMPTY)
                if w != BitString(b for b in range(n) if X(pair(i, b)) and prev(pair(b, j))):
                    return False
                if nxt(pair(i, j)) != parity(w):
                    return False
    return True


def decide_pow2_entry(n: int, k: int, i: int, j: int, X: BitString) -> bool:
    if not (0 <= i < n and 0 <= j < n):
        raise MatrixError(f"entry ({i}, {j}) out of range for n={n}")
    return pow2(n, k, X)(pair(i, j))


# --- aggregate powering -------------------------------------------------------


def max_list(n: int, W: BitString) -> int:
    return max((seq(i, W) for i in range(n)), default=0)


def block_diag(b: int, W1: BitString, X: BitString) -> BitString:
    """Matrices ``X^[a]`` (``a < b``) zero-padded to ``m x m`` on the diagonal,
    ``m = max(b, W1)``; block ``a`` starts at row and column ``a * m``."""
    m = max_list(b, W1)
    out = []
    for a in range(b):
        na = seq(a, W1)
        xa = row(a, X)
        _check_bool(na, xa, f"X^[{a}]")
        for pos in xa.positions:
            i, j = _unpair(pos)
            out.append(pair(a * m + i, a * m + j))
    return BitString(out)


def _star_direct(b, W1, W2, X, single) -> BitString:
    return build_list([single(seq(a, W1), seq(a, W2), row(a, X)) for a in range(b)])


def powseq2_star(b: int, W1: BitString, W2: BitString, X: BitString) -> BitString:
    """Power sequences of ``b`` matrices at once, read off the powers of their
    block-diagonal matrix.  Row ``m`` is ``PowSeq2(n_m, k_m, X^[m])`` with
    ``n_m = (W1)^m`` and ``k_m = (W2)^m``."""
    if b == 0:
        return EMPTY
    nmax, kmax = max_list(b, W1), max_list(b, W2)
    A = rows(powseq2(b * nmax, kmax, block_diag(b, W1, X)))
    out = []
    for m in range(b):
        nm, km = seq(m, W1), seq(m, W2)
        for p in range(km + 1):
            ap = A.get(p, EMPTY)
            for i in range(nm):
                for j in range(nm):
                    if ap(pair(nmax * m + i, nmax * m + j)):
                        out.append(pair(m, pair(p, pair(i, j))))
    return BitString(out)


def powseq2_star_direct(b: int, W1: BitString, W2: BitString, X: BitString) -> BitString:
    return _star_direct(b, W1, W2, X, powseq2)


# --- integer matrices -------------------------------------------------------


def int_matrix(entries: Sequence[Sequence[int]]) -> BitString:
    return build_grid([[encode_int(v) for v in r] for r in entries])


def _int_grid(n: int, X: BitString, name: str = "X") -> list[list[BitString]]:
    grid = [[EMPTY] * n for _ in range(n)]
    for i, ri in rows(X).items():
        for j, e in rows(ri).items():
            if i >= n or j >= n:
                raise MatrixError(f"{name} has entry ({i}, {j}) outside {n}x{n}")
            if not is_canonical(e):
                raise MatrixError(f"{name} entry ({i}, {j}) is not a canonical integer")
            grid[i][j] = e
    for b in X.positions:
        p = _unpair(b)
        if p is None or _unpair(p[1]) is None:
            raise MatrixError(f"{name} has bit {b} outside the Row2 layout")
    return grid


def int_matrix_rows(n: int, X: BitString) -> list[list[int]]:
    return [[decode_int(e) for e in r] for r in _int_grid(n, X)]


def _from_grid(grid: Sequence[Sequence[BitString]]) -> BitString:
    return build_grid(grid)


def id_z(n: int) -> BitString:
    return BitString(pair(i, pair(i, 1)) for i in range(n))


def _g_z(n, row_i: Sequence[BitString], col_j: Sequence[BitString]) -> BitString:
    return build_sparse_list(
        {l: mul_z(row_i[l], col_j[l]) for l in range(n) if row_i[l].positions and col_j[l].positions}
    )


def g_z(n: int, i: int, j: int, X1: BitString, X2: BitString) -> BitString:
    """Row ``l`` is ``X1^[i][l] x_Z X2^[l][j]``."""
    if not (0 <= i < n and 0 <= j < n):
        raise MatrixError(f"entry ({i}, {j}) out of range for n={n}")
    a, c = _int_grid(n, X1, "X1"), _int_grid(n, X2, "X2")
    return _g_z(n, a[i], [c[l][j] for l in range(n)])


def _prod_z_grid(n, a, c, m) -> list[list[BitString]]:
    cols = [[c[l][j] for l in range(n)] for j in range(n)]
    return [[sum_z(n, m, _g_z(n, a[i], cols[j])) for j in range(n)] for i in range(n)]


def prod_z(n: int, X1: BitString, X2: BitString) -> BitString:
    a, c = _int_grid(n, X1, "X1"), _int_grid(n, X2, "X2")
    return _from_grid(_prod_z_grid(n, a, c, len(X1) + len(X2)))


def powseq_z(n: int, k: int, X: BitString) -> BitString:
    a = _int_grid(n, X)
    cur = _int_grid(n, id_z(n))
    mats = [id_z(n)]
    for _ in range(k):
        cur = _prod_z_grid(n, a, cur, len(X) + len(mats[-1]))
        mats.append(_from_grid(cur))
    return build_list(mats)


def pow_z(n: int, k: int, X: BitString) -> BitString:
    return row(k, powseq_z(n, k, X))


def check_delta_powseq_z(n: int, k: int, X: BitString, Y: BitString) -> bool:
    """Decide whether ``Y = PowSeqZ(n, k, X)``.

    Every set bit must be ``<l, <i, <j, c>>>`` with ``l <= k`` and
    ``i, j < n``; ``Y^[0] = ID_Z(n)`` and ``Y^[l+1] = ProdZ(n, X, Y^[l])``.
    """
    for b in Y.positions:
        p = _unpair(b)
        if p is None or p[0] > k:
            return False
        q = _unpair(p[1])
        if q is None or q[0] >= n:
            return False
        r = _unpair(q[1])
        if r is None or r[0] >= n:
            return False
    by_row = rows(Y)
    if by_row.get(0, EMPTY) != id_z(n):
        return False
    for l in range(k):
        try:
            expect = prod_z(n, X, by_row.get(l, EMPTY))
        except MatrixError:
            return False
        if by_row.get(l + 1, EMPTY) != expect:
            return False
    return True


def block_diag_z(b: int, W1: BitString, X: BitString) -> BitString:
    m = max_list(b, W1)
    grid: dict[int, dict[int, BitString]] = {}
    for a in range(b):
        na = seq(a, W1)
        xa = _int_grid(na, row(a, X), f"X^[{a}]")
        for i in range(na):
            for j in range(na):
                if xa[i][j].positions:
                    grid.setdefault(a * m + i, {})[a * m + j] = xa[i][j]
    return build_sparse_list({i: build_sparse_list(r) for i, r in grid.items()})


def powseq_z_star(b: int, W1: BitString, W2: BitString, X: BitString) -> BitString:
    if b == 0:
        return EMPTY
    nmax, kmax = max_list(b, W1), max_list(b, W2)
    A = rows(powseq_z(b * nmax, kmax, block_diag_z(b, W1, X)))
    out = {}
    for m in range(b):
        nm, km = seq(m, W1), seq(m, W2)
        powers = {}
        for p in range(km + 1):
            ap = rows(A.get(p, EMPTY))
            block = {}
            for i in range(nm):
                ri = rows(ap.get(nmax * m + i, EMPTY))
                r = {j: ri[nmax * m + j] for j in range(nm) if nmax * m + j in ri}
                if r:
                    block[i] = build_sparse_list(r)
            powers[p] = build_sparse_list(block)
        out[m] = build_sparse_list(powers)
    return build_sparse_list(out)


def powseq_z_star_direct(b: int, W1: BitString, W2: BitString, X: BitString) -> BitString:
    return _star_direct(b, W1, W2, X, powseq_z)
