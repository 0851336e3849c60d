"""Seeded cross-oracle suites, one per acceptance criterion.

Every suite draws its instances from ``random.Random(seed)``, compares the
construction under test with an independent oracle and stops at the first
counterexample.  The textual report depends only on ``(seed, cases)``;
wall-clock times are kept on the result objects but left out of the report.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .counting import (
    MultiGraph,
    SimpleGraph,
    chain_multigraph,
    convert,
    layered_graph,
    multigraph_stcon_count,
    signed_power_row,
    stcon_count,
    walk_sums_matpow,
    walk_tally,
)
from .encoding import BitString, build_list, build_numlist, pair, rows
from .intcode import add_z, decode_int, encode_int, mul_z
from .matpow import (
    bool_matrix,
    bool_matrix_rows,
    check_delta_powseq2,
    check_explicit_witness2,
    explicit_witness2,
    int_matrix,
    int_matrix_rows,
    pow2,
    pow_z,
    powseq2,
    powseq2_star,
    powseq2_star_direct,
    powseq_z_star,
    powseq_z_star_direct,
)
from .nlmachine import (
    Machine,
    Transition,
    config_graph,
    count_accepting_paths,
    f_via_config_graph,
    node_config,
)


class Counterexample(Exception):
    pass


@dataclass
class CriterionResult:
    number: int
    title: str
    cases: int
    limit: float
    elapsed: float
    counterexample: str | None = None

    @property
    def within_limit(self) -> bool:
        return self.elapsed < self.limit

    @property
    def passed(self) -> bool:
        return self.counterexample is None and self.within_limit

    def line(self, timing: bool = False) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.number:2d}. {self.title} ({self.cases} cases)"
        if timing:
            text += f" {self.elapsed:.2f}s / {self.limit:g}s"
        if self.counterexample is not None:
            text += f"\n      counterexample: {self.counterexample}"
        elif not self.within_limit:
            text += f"\n      over the {self.limit:g}s limit"
        return text


def _expect(ok: bool, msg: str) -> None:
    if not ok:
        raise Counterexample(msg)


# --- native oracles ---------------------------------------------------------


def _matmul(a, b, mod=None):
    n = len(a)
    out = [[sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    if mod:
        out = [[v % mod for v in r] for r in out]
    return out


def _matpow(a, k, mod=None):
    n = len(a)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = _matmul(a, out, mod)
    return out


def _rand_matrix(rng, n, lo, hi):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


def _rand_bool(rng, n):
    density = rng.random()
    return [[int(rng.random() < density) for _ in range(n)] for _ in range(n)]


def _mutation_sites(rng: random.Random, Y: BitString, domain: list[int], count: int) -> list[int]:
    """Positions to flip: set bits, in-domain clear bits and arbitrary
    positions up to a little past ``|Y|``."""
    pool = set(Y.positions) | set(domain)
    pool.update(rng.randrange(len(Y) + 64) for _ in range(count))
    sites = sorted(pool)
    rng.shuffle(sites)
    return sites[:count]


# --- the ten suites ---------------------------------------------------------


def crit_int_arith(rng: random.Random, cases: int) -> None:
    lim = 1 << 16
    for c in range(cases):
        a, b = rng.randint(-lim, lim), rng.randint(-lim, lim)
        X, Y = encode_int(a), encode_int(b)
        got = decode_int(add_z(X, Y))
        _expect(got == a + b, f"case {c}: {a} + {b} gave {got}")
        got = decode_int(mul_z(X, Y))
        _expect(got == a * b, f"case {c}: {a} * {b} gave {got}")
        cancel = add_z(X, encode_int(-a))
        _expect(not cancel.positions, f"case {c}: {a} + {-a} left bits {sorted(cancel.positions)}")


def crit_mod2_powering(rng: random.Random, cases: int) -> None:
    for c in range(cases):
        n, k = rng.randint(1, 8), rng.randint(0, 16)
        m = _rand_bool(rng, n)
        X = bool_matrix(m)
        got = bool_matrix_rows(n, pow2(n, k, X))
        _expect(got == _matpow(m, k, 2), f"case {c}: pow2 of {m} to {k} gave {got}")
        Y = powseq2(n, k, X)
        _expect(check_delta_powseq2(n, k, X, Y), f"case {c}: checker rejects the true sequence of {m}, k={k}")
        domain = [pair(l, pair(i, j)) for l in range(k + 1) for i in range(n) for j in range(n)]
        for pos in _mutation_sites(rng, Y, domain, 50):
            _expect(
                not check_delta_powseq2(n, k, X, Y.flip(pos)),
                f"case {c}: checker accepts {m}, k={k} with bit {pos} flipped",
            )


def crit_int_powering(rng: random.Random, cases: int) -> None:
    for c in range(cases):
        n, k = rng.randint(1, 6), rng.randint(0, 8)
        m = _rand_matrix(rng, n, -8, 8)
        got = int_matrix_rows(n, pow_z(n, k, int_matrix(m)))
        _expect(got == _matpow(m, k), f"case {c}: pow_z of {m} to {k} gave {got}")


def crit_explicit_witness(rng: random.Random, cases: int) -> None:
    for c in range(cases):
        n, k = rng.randint(1, 6), rng.randint(0, 8)
        m = _rand_bool(rng, n)
        X = bool_matrix(m)
        Y, Z = explicit_witness2(n, k, X)
        _expect(Y == powseq2(n, k, X), f"case {c}: witness Y differs from the power sequence of {m}, k={k}")
        _expect(check_explicit_witness2(n, k, X, Y, Z), f"case {c}: checker rejects the witness of {m}, k={k}")
        ydom = [pair(l, pair(i, j)) for l in range(k + 1) for i in range(n) for j in range(n)]
        zdom = [
            pair(l + 1, pair(pair(i, j), b))
            for l in range(k) for i in range(n) for j in range(n) for b in range(n)
        ]
        for pos in _mutation_sites(rng, Y, ydom, 25):
            _expect(
                not check_explicit_witness2(n, k, X, Y.flip(pos), Z),
                f"case {c}: checker accepts Y with bit {pos} flipped ({m}, k={k})",
            )
        for pos in _mutation_sites(rng, Z, zdom, 25):
            _expect(
                not check_explicit_witness2(n, k, X, Y, Z.flip(pos)),
                f"case {c}: checker accepts Z with bit {pos} flipped ({m}, k={k})",
            )


def crit_aggregate(rng: random.Random, cases: int) -> None:
    for c in range(cases):
        b = rng.randint(1, 4)
        dims = [rng.randint(1, 4) for _ in range(b)]
        ks = [rng.randint(0, 6) for _ in range(b)]
        bools = [_rand_bool(rng, d) for d in dims]
        ints = [_rand_matrix(rng, d, -3, 3) for d in dims]
        W1, W2 = build_numlist(dims), build_numlist(ks)
        Xb = build_list([bool_matrix(m) for m in bools])
        Xz = build_list([int_matrix(m) for m in ints])
        got = powseq2_star(b, W1, W2, Xb)
        _expect(got == powseq2_star_direct(b, W1, W2, Xb), f"case {c}: Z2 batch dims={dims} ks={ks} disagrees")
        got = powseq_z_star(b, W1, W2, Xz)
        _expect(got == powseq_z_star_direct(b, W1, W2, Xz), f"case {c}: Z batch dims={dims} ks={ks} disagrees")
        # and each extracted block against the native power
        blocks = rows(got)
        for a, (d, k, m) in enumerate(zip(dims, ks, ints)):
            seqs = rows(blocks.get(a, BitString()))
            for p in range(k + 1):
                have = int_matrix_rows(d, seqs.get(p, BitString()))
                _expect(have == _matpow(m, p), f"case {c}: block {a} power {p} is {have}")


def _rand_graph(rng: random.Random, n: int) -> SimpleGraph:
    density = rng.uniform(0.2, 0.7)
    return SimpleGraph.dense(
        n, [(u, v) for u in range(n) for v in range(n) if rng.random() < density]
    )


def crit_layered(rng: random.Random, cases: int) -> None:
    for c in range(cases):
        n, p = rng.randint(2, 5), rng.randint(0, 5)
        G = _rand_graph(rng, n)
        want = stcon_count(n, 0, 1, p, G, via="both").value
        H = layered_graph(p, G)
        order, powers = walk_sums_matpow(H, p + 2)
        idx = {v: i for i, v in enumerate(order)}
        got = powers[p + 2][idx[0]][idx[1]]
        _expect(got == want, f"case {c}: edges={sorted(G.edges)} p={p}: layered gives {got}, stcon {want}")


def crit_convert(rng: random.Random, cases: int) -> None:
    for c in range(cases):
        n, k = rng.randint(1, 4), rng.randint(0, 3)
        mult = _rand_matrix(rng, n, 0, 3)
        A = int_matrix_rows(n, pow_z(n, k + 1, int_matrix(mult)))
        _expect(A == _matpow(mult, k + 1), f"case {c}: pow_z disagrees with native on {mult}")
        H = convert(MultiGraph.from_matrix(mult))
        for i in range(n):
            tally = walk_tally(H, i, 2 * (k + 1))
            for j in range(n):
                upto = [sum(layer.get(j, 0) for layer in tally[: q + 1]) for q in range(len(tally))]
                diff = upto[2 * (k + 1)] - upto[2 * k]
                _expect(
                    diff == A[i][j],
                    f"case {c}: {mult}, k={k}, ({i},{j}): walk difference {diff}, power entry {A[i][j]}",
                )


def random_machine(rng: random.Random) -> Machine:
    states = rng.randint(2, 5)
    accept = states - 1
    delta = []
    for s in range(states):
        if s == accept:
            continue
        for sym in ("0", "1", "$"):
            for w in (0, 1):
                for _ in range(rng.choice((0, 1, 2, 2, 3))):
                    delta.append(Transition(
                        s, sym, w, rng.randrange(states), rng.randint(0, 1),
                        rng.choice("LR"), rng.choice("LS" if sym == "$" else "LRS"),
                    ))
    return Machine(states, accept, 1, tuple(delta))


def crit_machines(rng: random.Random, cases: int) -> None:
    for c in range(cases):
        M = random_machine(rng)
        length = rng.randint(0, 6)
        X = BitString.from_int(rng.randrange(1 << length) | (1 << length >> 1))
        want = count_accepting_paths(M, X)
        got = f_via_config_graph(M, X).value
        _expect(got == want, f"case {c}: input {X.to_literal()!r}: graph gives {got}, enumeration {want}")
        G = config_graph(M, X)
        for u, v in G.edges:
            if u >= 2 and v >= 2:
                _expect(node_config(v).c == node_config(u).c + 1, f"case {c}: counter does not advance on ({u}, {v})")
            if v == 1:
                _expect(node_config(u).a == M.accept, f"case {c}: non-accepting node {u} feeds t")


def crit_signed(rng: random.Random, cases: int) -> None:
    for c in range(cases):
        n, k = rng.randint(1, 4), rng.randint(0, 4)
        m = _rand_matrix(rng, n, -3, 3)
        X = int_matrix(m)
        A = int_matrix_rows(n, pow_z(n, k, X))
        for i in range(n):
            row_counts = signed_power_row(n, i, k, X)
            for j, (pos, neg) in enumerate(row_counts):
                _expect(
                    pos - neg == A[i][j],
                    f"case {c}: {m}, k={k}, ({i},{j}): {pos} - {neg} != {A[i][j]}",
                )


def crit_chains(rng: random.Random, cases: int) -> None:
    for c in range(cases):
        q = rng.randint(1, 4)
        mults = [rng.randint(0, 5) for _ in range(q)]
        G = chain_multigraph(mults)
        got = multigraph_stcon_count(G.n, 0, 1, q, G).value
        want = 1
        for g in mults:
            want *= g
        _expect(got == want, f"case {c}: hops {mults}: {got} paths, product {want}")


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    run: Callable[[random.Random, int], None]
    cases: int
    limit: float


CRITERIA: tuple[Criterion, ...] = (
    Criterion(1, "integer arithmetic vs native", crit_int_arith, 10_000, 5),
    Criterion(2, "mod-2 powering and checker", crit_mod2_powering, 200, 10),
    Criterion(3, "integer powering vs native", crit_int_powering, 100, 30),
    Criterion(4, "explicit witness coherence", crit_explicit_witness, 50, 10),
    Criterion(5, "aggregate block extraction", crit_aggregate, 50, 10),
    Criterion(6, "layered graph identity", crit_layered, 100, 20),
    Criterion(7, "multigraph conversion identity", crit_convert, 50, 30),
    Criterion(8, "machine paths vs configuration graph", crit_machines, 30, 60),
    Criterion(9, "signed product machines vs pow_z", crit_signed, 50, 30),
    Criterion(10, "branching product law", crit_chains, 100, 5),
)


def run_criterion(crit: Criterion, seed: int = 1, cases: int | None = None) -> CriterionResult:
    n = crit.cases if cases is None else cases
    # each suite gets its own stream so they can be run in isolation
    rng = random.Random(seed * 1000 + crit.number)
    start = time.perf_counter()
    failure = None
    try:
        crit.run(rng, n)
    except Counterexample as exc:
        failure = str(exc)
    elapsed = time.perf_counter() - start
    return CriterionResult(crit.number, crit.title, n, crit.limit, elapsed, failure)


def run_all(seed: int = 1, cases: int | None = None) -> list[CriterionResult]:
    return [run_criterion(c, seed, cases) for c in CRITERIA]


def report(results: list[CriterionResult], seed: int, timing: bool = False) -> str:
    lines = [f"seed {seed}"]
    lines += [r.line(timing) for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"
