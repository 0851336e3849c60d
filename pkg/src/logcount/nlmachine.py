"""Nondeterministic logspace machines and their configuration graphs.

A configuration is the 5-tuple ``(a, b, c, d, e)``: state, input-head
position, step counter, the work tape left of the head read as a binary
number, and the rest of the work tape reversed (so ``e % 2`` is the scanned
cell).  The machine runs for at most ``|X|**k + 1`` steps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, NamedTuple

from .counting import PathCount, SimpleGraph, _Budget, stcon_count
from .encoding import BitString, pair, unpack

SYMBOLS = ("0", "1", "$")


class MachineError(ValueError):
    """Malformed machine description or an illegal head move."""


class Configuration(NamedTuple):
    a: int
    b: int
    c: int
    d: int
    e: int


@dataclass(frozen=True)
class Transition:
    src: int
    read: str
    work: int
    dst: int
    write: int
    work_move: str
    input_move: str

    def __post_init__(self):
        if self.read not in SYMBOLS:
            raise MachineError(f"bad input symbol {self.read!r}")
        if self.work not in (0, 1) or self.write not in (0, 1):
            raise MachineError("work-tape bits must be 0 or 1")
        if self.work_move not in ("L", "R"):
            raise MachineError(f"bad work-tape move {self.work_move!r}")
        if self.input_move not in ("L", "R", "S"):
            raise MachineError(f"bad input-head move {self.input_move!r}")


@dataclass(frozen=True)
class Machine:
    """Start state 0, a single accepting state, time bound ``|X|**k + 1``."""

    states: int
    accept: int
    k: int
    delta: tuple[Transition, ...]

    def __post_init__(self):
        if self.states < 1 or not 0 <= self.accept < self.states:
            raise MachineError("accept state out of range")
        if self.k < 1:
            raise MachineError("time exponent k must be at least 1")
        for t in self.delta:
            if not (0 <= t.src < self.states and 0 <= t.dst < self.states):
                raise MachineError(f"transition {t} uses an unknown state")
            if t.src == self.accept:
                raise MachineError("the accepting state must halt")

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Machine":
        try:
            delta = tuple(
                Transition(
                    int(t["from"]), str(t["read"]), int(t["work"]), int(t["to"]),
                    int(t["write"]), str(t["workMove"]), str(t["inputMove"]),
                )
                for t in data["delta"]
            )
            return cls(int(data["states"]), int(data["accept"]), int(data["k"]), delta)
        except (KeyError, TypeError) as exc:
            raise MachineError(f"malformed machine description: {exc}") from exc

    @classmethod
    def load(cls, path) -> "Machine":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict[str, Any]:
        return {
            "states": self.states,
            "accept": self.accept,
            "k": self.k,
            "delta": [
                {"from": t.src, "read": t.read, "work": t.work, "to": t.dst,
                 "write": t.write, "workMove": t.work_move, "inputMove": t.input_move}
                for t in self.delta
            ],
        }

    def time_bound(self, X: BitString) -> int:
        return len(X) ** self.k + 1

    def table(self) -> dict[tuple[int, str, int], list[Transition]]:
        out: dict[tuple[int, str, int], list[Transition]] = {}
        for t in self.delta:
            out.setdefault((t.src, t.read, t.work), []).append(t)
        return out


START = Configuration(0, 0, 0, 0, 0)


def encode_config(cfg: Configuration) -> int:
    return pair(*cfg)


def decode_config(v: int) -> Configuration:
    parts = unpack(v, 5)
    if parts is None:
        raise ValueError(f"{v} does not encode a 5-tuple")
    return Configuration(*parts)


def _symbol(X: BitString, b: int) -> str:
    if b == len(X):
        return "$"
    if b > len(X):
        raise MachineError(f"input head at {b}, past the end marker")
    return "1" if X(b) else "0"


def _step(cfg: Configuration, t: Transition, at_end: bool) -> Configuration | None:
    a, b, c, d, e = cfg
    if t.input_move == "L":
        if b == 0:
            return None
        b2 = b - 1
    elif t.input_move == "R":
        if at_end:
            raise MachineError(f"transition {t} moves right past the end marker")
        b2 = b + 1
    else:
        b2 = b
    w = t.write
    if t.work_move == "R":
        d2, e2 = 2 * d + w, e // 2
    else:
        d2, e2 = d // 2, 2 * (e - e % 2 + w) + d % 2
    return Configuration(t.dst, b2, c + 1, d2, e2)


def successors(
    M: Machine, X: BitString, cfg: Configuration, table=None
) -> list[Configuration]:
    """The set of next configurations, one per applicable transition, sorted.

    Two transitions that land in the same configuration (for instance moving
    either way over blank tape) give one successor: a computation path is a
    sequence of configurations.  No successors once the counter is over the
    time bound.
    """
    if cfg.c > M.time_bound(X) or cfg.a == M.accept:
        return []
    table = M.table() if table is None else table
    sym = _symbol(X, cfg.b)
    out = set()
    for t in table.get((cfg.a, sym, cfg.e % 2), ()):
        nxt = _step(cfg, t, sym == "$")
        if nxt is not None:
            out.add(nxt)
    return sorted(out)


def count_accepting_paths(M: Machine, X: BitString, budget: int | None = None) -> int:
    """Number of accepting computation paths (configuration sequences that
    reach the accepting state within the time bound), by depth-first
    expansion of the branch tree."""
    meter = _Budget(budget)
    table = M.table()
    bound = M.time_bound(X)
    count = 0
    stack = [START]
    while stack:
        cfg = stack.pop()
        meter.tick()
        if cfg.a == M.accept:
            if cfg.c <= bound:
                count += 1
            continue
        stack.extend(successors(M, X, cfg, table))
    return count


def config_node(cfg: Configuration) -> int:
    # shifted by 2 so the start configuration <0,0,0,0,0> = 0 is not s itself
    return encode_config(cfg) + 2


def node_config(v: int) -> Configuration:
    if v < 2:
        raise ValueError(f"node {v} is a distinguished node, not a configuration")
    return decode_config(v - 2)


def config_graph(M: Machine, X: BitString, budget: int | None = None) -> SimpleGraph:
    """Configuration graph with ``s = 0`` wired to the start configuration and
    every in-time accepting configuration wired to ``t = 1``.  Only
    configurations reachable from the start are materialised."""
    meter = _Budget(budget)
    table = M.table()
    bound = M.time_bound(X)
    start = config_node(START)
    nodes = {0, 1, start}
    edges = {(0, start)}
    seen = {START}
    frontier = [START]
    while frontier:
        cfg = frontier.pop()
        meter.tick()
        u = config_node(cfg)
        if cfg.a == M.accept and cfg.c <= bound:
            edges.add((u, 1))
        for nxt in successors(M, X, cfg, table):
            v = config_node(nxt)
            edges.add((u, v))
            nodes.add(v)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return SimpleGraph(frozenset(nodes), frozenset(edges))


def path_bound(M: Machine, X: BitString) -> int:
    return M.time_bound(X) + 3


def f_via_config_graph(M: Machine, X: BitString, budget: int | None = None) -> PathCount:
    G = config_graph(M, X, budget)
    return stcon_count(G.n, 0, 1, path_bound(M, X), G, via="dfs", budget=budget)


def machine_from_edges(
    states: int, accept: int, k: int, delta: Iterable[tuple]
) -> Machine:
    """Shorthand: ``delta`` holds ``(from, read, work, to, write, workMove,
    inputMove)`` tuples."""
    return Machine(states, accept, k, tuple(Transition(*t) for t in delta))
