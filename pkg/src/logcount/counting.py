"""Counting s-t walks, and the reductions between #STCON and matrix powering.

Walks may revisit vertices, including ``t``; a walk of length ``l`` is a
sequence of ``l`` edge traversals.  Every count is produced by exhaustive
enumeration of a nondeterministic traversal and, where the statement allows
it, cross-checked against sums of matrix powers computed by :mod:`matpow`.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .encoding import BitString, _unpair, build_grid, build_natmatrix, entry, pair, rows
from .intcode import decode_int, intsize
from .matpow import MatrixError, _int_grid, int_matrix, powseq_z

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """Enumeration visited more branch nodes than the configured cap."""


class CountMismatch(AssertionError):
    """Two independent counting routes disagreed."""


def default_budget() -> int:
    value = os.environ.get("LOGCOUNT_BUDGET")
    return int(value) if value else DEFAULT_BUDGET


class _Budget:
    __slots__ = ("left", "cap")

    def __init__(self, cap: int | None):
        self.cap = default_budget() if cap is None else cap
        self.left = self.cap

    def tick(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise BudgetExceeded(f"enumeration exceeded {self.cap} branch nodes")


@dataclass(frozen=True)
class PathCount:
    value: int
    binary: BitString = field(compare=False)

    @classmethod
    def of(cls, value: int) -> "PathCount":
        return cls(value, BitString.from_int(value))


@dataclass(frozen=True)
class SimpleGraph:
    """Directed graph on an explicit (possibly sparse) set of labels.

    Labels 0 and 1 play ``s`` and ``t``.  ``n`` is one past the largest
    label, so the graph is also an ``n x n`` Boolean matrix in which unused
    labels have no edges.
    """

    nodes: frozenset[int]
    edges: frozenset[tuple[int, int]]

    @classmethod
    def dense(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        edges = frozenset((int(u), int(v)) for u, v in edges)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside {n} vertices")
        return cls(frozenset(range(n)), edges)

    @classmethod
    def from_matrix(cls, entries: Sequence[Sequence[int]]) -> "SimpleGraph":
        n = len(entries)
        return cls.dense(n, ((i, j) for i in range(n) for j in range(n) if entries[i][j]))

    @classmethod
    def from_adjacency(cls, n: int, X: BitString) -> "SimpleGraph":
        edges = []
        for b in X.positions:
            u, v = _pair_or_raise(b)
            edges.append((u, v))
        return cls.dense(n, edges)

    @property
    def n(self) -> int:
        return max(self.nodes) + 1 if self.nodes else 0

    @cached_property
    def adjacency(self) -> BitString:
        return BitString(pair(u, v) for u, v in self.edges)

    @cached_property
    def succ(self) -> Mapping[int, tuple[int, ...]]:
        out: dict[int, list[int]] = defaultdict(list)
        for u, v in self.edges:
            out[u].append(v)
        return {u: tuple(sorted(vs)) for u, vs in out.items()}

    def dense_matrix(self) -> tuple[list[int], list[list[int]]]:
        """Labels in increasing order and the 0/1 matrix over that order."""
        order = sorted(self.nodes)
        idx = {v: i for i, v in enumerate(order)}
        m = [[0] * len(order) for _ in order]
        for u, v in self.edges:
            m[idx[u]][idx[v]] = 1
        return order, m


def _pair_or_raise(b: int) -> tuple[int, int]:
    p = _unpair(b)
    if p is None:
        raise MatrixError(f"bit {b} is not a pair number")
    return p


@dataclass(frozen=True)
class MultiGraph:
    """Edge multiplicities, stored as a number matrix read with ``entry``."""

    n: int
    raw: BitString

    @classmethod
    def from_matrix(cls, mult: Sequence[Sequence[int]]) -> "MultiGraph":
        n = len(mult)
        if any(len(r) != n for r in mult):
            raise ValueError("multiplicity matrix must be square")
        return cls(n, build_natmatrix(mult))

    def mult(self, i: int, j: int) -> int:
        return entry(i, j, self.raw)

    def matrix(self) -> list[list[int]]:
        return [[self.mult(i, j) for j in range(self.n)] for i in range(self.n)]

    def binary_entries(self) -> BitString:
        """Row2 encoding with each multiplicity written in binary."""
        return build_grid(
            [[BitString.from_int(self.mult(i, j)) for j in range(self.n)] for i in range(self.n)]
        )


def _check_st(n: int, s: int, t: int, distinct: bool = True) -> None:
    if not (0 <= s < n and 0 <= t < n):
        raise IndexError(f"s={s}, t={t} out of range for n={n}")
    if distinct and s == t:
        raise ValueError("s and t must differ")


# --- walk enumeration -------------------------------------------------------


def walk_tally(G: SimpleGraph, s: int, p: int, budget: int | None = None) -> list[dict[int, int]]:
    """Enumerate every walk of length ``<= p`` from ``s`` one branch at a time.

    ``out[l][v]`` is the number of walks of length exactly ``l`` ending at
    ``v``.  Each branch guesses the next vertex; a guess without an edge
    rejects, so only edge-following branches are expanded.
    """
    tally: list[dict[int, int]] = [defaultdict(int) for _ in range(p + 1)]
    meter = _Budget(budget)
    succ = G.succ
    stack = [(s, 0)]
    while stack:
        v, depth = stack.pop()
        meter.tick()
        tally[depth][v] += 1
        if depth < p:
            for w in succ.get(v, ()):
                stack.append((w, depth + 1))
    return [dict(t) for t in tally]


def count_walks_dfs(G: SimpleGraph, s: int, t: int, p: int, budget: int | None = None) -> int:
    return sum(layer.get(t, 0) for layer in walk_tally(G, s, p, budget))


def walk_sums_matpow(G: SimpleGraph, p: int) -> tuple[list[int], list[list[list[int]]]]:
    """``A^0, ..., A^p`` over the dense relabelling of ``G``, via PowSeqZ."""
    order, m = G.dense_matrix()
    N = len(order)
    Y = rows(powseq_z(N, p, int_matrix(m)))
    powers = []
    for l in range(p + 1):
        grid = _int_grid(N, Y.get(l, BitString()))
        powers.append([[decode_int(e) for e in r] for r in grid])
    return order, powers


def count_walks_matpow(G: SimpleGraph, s: int, t: int, p: int) -> int:
    order, powers = walk_sums_matpow(G, p)
    idx = {v: i for i, v in enumerate(order)}
    if s not in idx or t not in idx:
        return 0
    return sum(P[idx[s]][idx[t]] for P in powers)


def _as_graph(n: int, G: SimpleGraph | BitString) -> SimpleGraph:
    if isinstance(G, SimpleGraph):
        return G
    return SimpleGraph.from_adjacency(n, G)


def stcon_count(
    n: int,
    s: int,
    t: int,
    p: int,
    G: SimpleGraph | BitString,
    via: str = "both",
    budget: int | None = None,
) -> PathCount:
    """Number of ``s``-``t`` walks of length ``<= p``.

    ``via`` selects enumeration (``"dfs"``), summed matrix powers
    (``"matpow"``) or both, in which case the two must agree.
    """
    _check_st(n, s, t)
    graph = _as_graph(n, G)
    if via not in ("dfs", "matpow", "both"):
        raise ValueError(f"unknown route {via!r}")
    dfs = count_walks_dfs(graph, s, t, p, budget) if via != "matpow" else None
    mp = count_walks_matpow(graph, s, t, p) if via != "dfs" else None
    if dfs is not None and mp is not None and dfs != mp:
        raise CountMismatch(f"enumeration gives {dfs}, matrix powers give {mp}")
    return PathCount.of(dfs if dfs is not None else mp)


def stcon_via_matpow(n: int, s: int, t: int, p: int, G: SimpleGraph | BitString) -> PathCount:
    _check_st(n, s, t)
    return PathCount.of(count_walks_matpow(_as_graph(n, G), s, t, p))


# --- reductions -------------------------------------------------------------


def layer_node(v: int, layer: int) -> int:
    # layers are numbered from 1 so that no copy collides with s' = 0, t' = 1
    return pair(v, layer + 1)


def layered_graph(p: int, G: SimpleGraph) -> SimpleGraph:
    """Graph whose ``0``-``1`` walks of length exactly ``p + 2`` correspond
    one-to-one with the ``s``-``t`` walks of ``G`` of length ``<= p``."""
    nodes = {0, 1}
    nodes.update(layer_node(v, l) for v in G.nodes for l in range(p + 1))
    edges = {(0, layer_node(0, 0)), (1, 1)}
    edges.update((layer_node(1, l), 1) for l in range(p + 1))
    edges.update(
        (layer_node(v, l), layer_node(w, l + 1)) for (v, w) in G.edges for l in range(p)
    )
    return SimpleGraph(frozenset(nodes), frozenset(edges))


def convert(X: MultiGraph) -> SimpleGraph:
    """Bisect every parallel edge: the ``c``-th copy of ``(i, j)`` becomes
    ``i -> <i, j, c + n> -> j``."""
    n = X.n
    nodes = set(range(n))
    edges = set()
    for i in range(n):
        for j in range(n):
            for c in range(X.mult(i, j)):
                mid = pair(i, j, c + n)
                nodes.add(mid)
                edges.add((i, mid))
                edges.add((mid, j))
    return SimpleGraph(frozenset(nodes), frozenset(edges))


# --- multigraphs and signed matrices ---------------------------------------


def _guess_branches(g: BitString, meter: _Budget):
    """Run the bit-guessing loop for multiplicity string ``g``, yielding once
    per surviving branch.  Bits are guessed from position ``|g|`` down to 0
    and a branch survives iff its guessed number is below ``g``."""
    frontier = [(len(g), False)]
    while frontier:
        i, reachable = frontier.pop()
        meter.tick()
        if i < 0:
            if reachable:
                yield None
            continue
        for b in (0, 1):
            r = reachable
            if not r:
                if b == 0 and g(i):
                    r = True
                elif b == 1 and not g(i):
                    continue  # halt and reject
            frontier.append((i - 1, r))


def multigraph_stcon_count(
    n: int, s: int, t: int, p: int, G: MultiGraph, budget: int | None = None
) -> PathCount:
    """Walk count weighted by multiplicities, by expanding every branch of the
    multigraph traversal including its per-hop bit guessing.

    On reaching ``t`` a branch may halt and accept or keep walking, so walks
    that pass through ``t`` are counted too.
    """
    _check_st(n, s, t)
    meter = _Budget(budget)
    grid = rows(G.binary_entries())
    entries = {(i, j): e for i, r in grid.items() for j, e in rows(r).items()}
    empty = BitString()
    accepted = 0
    stack = [(s, 0)]
    while stack:
        cur, count = stack.pop()
        meter.tick()
        if cur == t:
            accepted += 1
        if count >= p:
            continue
        for nxt in range(n):
            for _ in _guess_branches(entries.get((cur, nxt), empty), meter):
                stack.append((nxt, count + 1))
    return PathCount.of(accepted)


def multigraph_via_matpow(n: int, s: int, t: int, p: int, G: MultiGraph) -> PathCount:
    """``sum_{l <= p} A^l[s, t]`` for the multiplicity matrix ``A``."""
    _check_st(n, s, t)
    Y = rows(powseq_z(n, p, int_matrix(G.matrix())))
    total = 0
    for l in range(p + 1):
        grid = _int_grid(n, Y.get(l, BitString()))
        total += decode_int(grid[s][t])
    return PathCount.of(total)


def chain_multigraph(mults: Sequence[int]) -> MultiGraph:
    """``s = 0 -> 2 -> 3 -> ... -> t = 1`` with the given hop multiplicities."""
    q = len(mults)
    path = [0] + list(range(2, q + 1)) + [1]
    n = max(path) + 1
    m = [[0] * n for _ in range(n)]
    for h, g in enumerate(mults):
        m[path[h]][path[h + 1]] = g
    return MultiGraph.from_matrix(m)


def signed_power_row(
    n: int, i: int, k: int, X: BitString, budget: int | None = None
) -> list[tuple[int, int]]:
    """``signed_power_entry`` for every target ``j`` from one enumeration; the
    branch tree of both machines does not depend on ``j``."""
    if not 0 <= i < n:
        raise IndexError(f"i={i} out of range for n={n}")
    meter = _Budget(budget)
    grid = _int_grid(n, X)
    mags = [[BitString.from_int(intsize(e)) for e in r] for r in grid]
    counts = [[0, 0] for _ in range(n)]
    stack = [(i, 0, 0)]
    while stack:
        cur, sign, count = stack.pop()
        meter.tick()
        if count == k:
            counts[cur][sign] += 1
            continue
        for nxt in range(n):
            flip = int(grid[cur][nxt](0))
            for _ in _guess_branches(mags[cur][nxt], meter):
                stack.append((nxt, sign ^ flip, count + 1))
    return [(c[0], c[1]) for c in counts]


def signed_power_entry(
    n: int, i: int, j: int, k: int, X: BitString, budget: int | None = None
) -> tuple[int, int]:
    """Accepting-path counts of the positive and negative product machines.

    Both walk exactly ``k`` hops from ``i``, branching into
    ``intsize(X^[cur][next])`` paths per hop and XOR-ing the entry signs; the
    positive machine accepts at ``j`` with sign 0, the negative with sign 1.
    ``A^k[i, j]`` is the first count minus the second.
    """
    _check_st(n, i, j, distinct=False)
    return signed_power_row(n, i, k, X, budget)[j]
