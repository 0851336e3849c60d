"""Command-line entry point: ``logcount <subcommand> ...``.

Exit status is 0 on success, 1 when two independent computations disagree or
a checker rejects, and 2 on malformed input or an exhausted enumeration
budget.  Bit strings are written LSB-first as ``0``/``1`` literals.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import counting, encoding, intcode, matpow, nlmachine, verify
from .counting import BudgetExceeded, CountMismatch, MultiGraph, SimpleGraph
from .encoding import BitString


class InputError(ValueError):
    """Malformed command-line or file input (exit status 2)."""


class Mismatch(Exception):
    """A cross-check failed (exit status 1)."""


# --- parsing helpers --------------------------------------------------------


def parse_bits(text: str) -> BitString:
    try:
        return BitString.from_literal(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_intarg(text: str) -> BitString:
    """A bit literal, or a decimal integer when the text has a sign or any
    digit other than 0/1."""
    if text == "" or (text[0] not in "+-" and set(text) <= {"0", "1"}):
        return parse_bits(text)
    try:
        return intcode.encode_int(int(text))
    except ValueError:
        raise InputError(f"not an integer or bit literal: {text!r}") from None


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from None


def write_json(path: str, data: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, separators=(",", ":"))
        fh.write("\n")


def _square(entries: Any, n: int, what: str) -> list[list[int]]:
    if not isinstance(entries, list) or len(entries) != n:
        raise InputError(f"{what} must be a list of {n} rows")
    out = []
    for r in entries:
        if not isinstance(r, list) or len(r) != n:
            raise InputError(f"{what} rows must have {n} entries")
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in r):
            raise InputError(f"{what} entries must be integers")
        out.append(list(r))
    return out


def load_matrix(path: str, ring: str | None = None, n: int | None = None) -> tuple[str, int, list[list[int]]]:
    data = load_json(path)
    if not isinstance(data, dict) or "entries" not in data:
        raise InputError("matrix JSON needs 'entries'")
    file_ring = data.get("ring", ring or "z")
    if file_ring not in ("z2", "z"):
        raise InputError(f"unknown ring {file_ring!r}")
    if ring is not None and ring != file_ring:
        raise InputError(f"matrix file is over {file_ring}, not {ring}")
    size = data.get("n", len(data["entries"]))
    if not isinstance(size, int) or size < 0:
        raise InputError("'n' must be a natural number")
    if n is not None and n != size:
        raise InputError(f"--n {n} does not match the file's n = {size}")
    m = _square(data["entries"], size, "entries")
    if file_ring == "z2" and any(v not in (0, 1) for r in m for v in r):
        raise InputError("z2 entries must be 0 or 1")
    return file_ring, size, m


def load_graph(path: str) -> tuple[int, SimpleGraph | MultiGraph]:
    """Graph JSON with either an edge list or a multiplicity matrix.  Only
    labels that carry an edge (plus 0 and 1) are materialised, so very
    sparse label spaces are fine."""
    data = load_json(path)
    if not isinstance(data, dict) or not isinstance(data.get("n"), int) or data["n"] < 0:
        raise InputError("graph JSON needs a natural number 'n'")
    n = data["n"]
    if "multiplicities" in data:
        m = _square(data["multiplicities"], n, "multiplicities")
        if any(v < 0 for r in m for v in r):
            raise InputError("multiplicities must be natural numbers")
        return n, MultiGraph.from_matrix(m)
    edges = data.get("edges")
    if not isinstance(edges, list):
        raise InputError("graph JSON needs 'edges' or 'multiplicities'")
    pairs = set()
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            raise InputError(f"bad edge {e!r}")
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) outside {n} vertices")
        pairs.add((u, v))
    nodes = {v for e in pairs for v in e} | {x for x in (0, 1) if x < n}
    return n, SimpleGraph(frozenset(nodes), frozenset(pairs))


def graph_json(n: int, G: SimpleGraph) -> dict[str, Any]:
    return {"n": n, "edges": [list(e) for e in sorted(G.edges)]}


def _out(text: str = "") -> None:
    sys.stdout.write(text + "\n")


def _dump(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _show_int(X: BitString) -> None:
    _out(X.to_literal())
    _out(f"{intcode.decode_int(X):+d}")


def _show_count(c: counting.PathCount) -> None:
    _out(f"count {c.value}")
    _out(f"binary {c.binary.to_literal()}")


# --- subcommands ------------------------------------------------------------


def cmd_encode(a: argparse.Namespace) -> int:
    op = a.op
    if op == "pair":
        _out(str(encoding.pair(*a.nums)))
    elif op == "unpair":
        p = encoding._unpair(a.z)
        if p is None:
            raise InputError(f"{a.z} is not a pair number")
        _out(f"{p[0]} {p[1]}")
    elif op == "row":
        _out(encoding.row(a.x, parse_bits(a.Z)).to_literal())
    elif op == "row2":
        _out(encoding.row2(a.x, a.y, parse_bits(a.Z)).to_literal())
    elif op == "seq":
        _out(str(encoding.seq(a.i, parse_bits(a.Z))))
    elif op == "entry":
        _out(str(encoding.entry(a.i, a.j, parse_bits(a.Z))))
    elif op == "list":
        _out(encoding.build_list([parse_bits(t) for t in a.items]).to_literal())
    elif op == "numlist":
        _out(encoding.build_numlist(a.nums).to_literal())
    elif op == "natmatrix":
        try:
            m = json.loads(a.matrix)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON matrix ({exc.msg})") from None
        _out(encoding.build_natmatrix(_square(m, len(m), "matrix")).to_literal())
    return 0


def cmd_int(a: argparse.Namespace) -> int:
    vals = [parse_intarg(t) for t in a.values]
    if a.op in ("add", "mul"):
        if len(vals) != 2:
            raise InputError(f"int {a.op} takes exactly two operands")
        f = intcode.add_z if a.op == "add" else intcode.mul_z
        _show_int(f(*vals))
    elif a.op == "sum":
        Z = encoding.build_list(vals)
        _show_int(intcode.sum_z(len(vals), max((len(v) for v in vals), default=0), Z))
    elif a.op == "encode":
        for v in vals:
            _show_int(v)
    return 0


def cmd_matpow(a: argparse.Namespace) -> int:
    ring, n, m = load_matrix(a.input, a.ring, a.n)
    k = a.k
    if ring == "z2":
        X = matpow.bool_matrix(m)
        _out(_dump(matpow.bool_matrix_rows(n, matpow.pow2(n, k, X))))
        Y = None
        if a.witness:
            Y, Z = matpow.explicit_witness2(n, k, X)
            write_json(a.witness, {"Y": Y.to_literal(), "Z": Z.to_literal()})
            if a.check and not matpow.check_explicit_witness2(n, k, X, Y, Z):
                raise Mismatch("explicit-witness checker rejected the witness")
        if a.check:
            Y = matpow.powseq2(n, k, X)
            if not matpow.check_delta_powseq2(n, k, X, Y):
                raise Mismatch("power-sequence checker rejected the sequence")
            _out("check ok")
    else:
        if a.witness:
            raise InputError("--witness is only defined over z2")
        X = matpow.int_matrix(m)
        Y = matpow.powseq_z(n, k, X)
        _out(_dump(matpow.int_matrix_rows(n, encoding.row(k, Y))))
        if a.check:
            if not matpow.check_delta_powseq_z(n, k, X, Y):
                raise Mismatch("power-sequence checker rejected the sequence")
            _out("check ok")
    return 0


def _input_bits(text: str) -> BitString:
    X = parse_bits(text)
    if len(X) != len(text):
        # |X| counts up to the last 1, so trailing zeros cannot be represented
        raise InputError("input literal must not end in 0 (trailing zeros are not part of a string)")
    return X


def cmd_machine(a: argparse.Namespace) -> int:
    try:
        M = nlmachine.Machine.from_json(load_json(a.machine))
    except nlmachine.MachineError as exc:
        raise InputError(str(exc)) from None
    X = _input_bits(a.input)
    if a.op == "count":
        direct = nlmachine.count_accepting_paths(M, X, a.budget) if a.via != "graph" else None
        graph = nlmachine.f_via_config_graph(M, X, a.budget).value if a.via != "enum" else None
        if direct is not None and graph is not None and direct != graph:
            raise Mismatch(f"enumeration gives {direct}, configuration graph gives {graph}")
        _out(str(direct if direct is not None else graph))
    else:
        G = nlmachine.config_graph(M, X, a.budget)
        if a.out:
            write_json(a.out, graph_json(G.n, G))
        _out(f"nodes {len(G.nodes)}")
        _out(f"edges {len(G.edges)}")
        _out(f"path bound {nlmachine.path_bound(M, X)}")
    return 0


def cmd_stcon(a: argparse.Namespace) -> int:
    n, G = load_graph(a.graph)
    if isinstance(G, MultiGraph):
        dfs = counting.multigraph_stcon_count(n, a.s, a.t, a.p, G, a.budget) if a.via != "matpow" else None
        mp = counting.multigraph_via_matpow(n, a.s, a.t, a.p, G) if a.via != "dfs" else None
        if dfs is not None and mp is not None and dfs != mp:
            raise Mismatch(f"enumeration gives {dfs.value}, matrix powers give {mp.value}")
        _show_count(dfs or mp)
    else:
        _show_count(counting.stcon_count(n, a.s, a.t, a.p, G, via=a.via, budget=a.budget))
    return 0


def cmd_reduce(a: argparse.Namespace) -> int:
    if a.op == "layered":
        n, G = load_graph(a.graph)
        if isinstance(G, MultiGraph):
            raise InputError("layered reduction takes an edge-list graph")
        H = counting.layered_graph(a.p, G)
        if a.out:
            write_json(a.out, graph_json(H.n, H))
        want = counting.stcon_count(n, 0, 1, a.p, G, via="dfs", budget=a.budget).value
        order, powers = counting.walk_sums_matpow(H, a.p + 2)
        idx = {v: i for i, v in enumerate(order)}
        got = powers[a.p + 2][idx[0]][idx[1]]
        _out(f"stcon {want}")
        _out(f"layered power entry {got}")
        if got != want:
            raise Mismatch("layered graph does not preserve the walk count")
    elif a.op == "convert":
        n, G = load_graph(a.graph)
        if not isinstance(G, MultiGraph):
            raise InputError("convert takes a multiplicity graph")
        H = counting.convert(G)
        if a.out:
            write_json(a.out, graph_json(H.n, H))
        _out(f"nodes {len(H.nodes)}")
        _out(f"edges {len(H.edges)}")
        if a.k is not None:
            A = matpow.int_matrix_rows(n, matpow.pow_z(n, a.k + 1, matpow.int_matrix(G.matrix())))
            diffs = []
            for i in range(n):
                tally = counting.walk_tally(H, i, 2 * (a.k + 1), a.budget)
                diffs.append([tally[2 * (a.k + 1)].get(j, 0) for j in range(n)])
            _out(_dump(diffs))
            if diffs != A:
                raise Mismatch(f"walk differences {diffs} differ from the power {A}")
    else:
        _, n, m = load_matrix(a.input, "z")
        X = matpow.int_matrix(m)
        A = matpow.int_matrix_rows(n, matpow.pow_z(n, a.k, X))
        pos, neg = [], []
        for i in range(n):
            r = counting.signed_power_row(n, i, a.k, X, a.budget)
            pos.append([c[0] for c in r])
            neg.append([c[1] for c in r])
        diff = [[p - q for p, q in zip(pr, nr)] for pr, nr in zip(pos, neg)]
        _out(_dump({"pos": pos, "neg": neg, "power": A}))
        if diff != A:
            raise Mismatch("positive minus negative counts differ from the power")
    return 0


def cmd_verify(a: argparse.Namespace) -> int:
    if a.which == "all":
        crits = verify.CRITERIA
    else:
        crits = tuple(c for c in verify.CRITERIA if str(c.number) == a.which)
        if not crits:
            raise InputError(f"no criterion {a.which!r}")
    results = [verify.run_criterion(c, a.seed, a.cases) for c in crits]
    sys.stdout.write(verify.report(results, a.seed, a.timing))
    return 0 if all(r.passed for r in results) else 1


# --- argument parser --------------------------------------------------------


def _nat(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a natural number")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="logcount", description="Bit-string encodings, matrix powering and walk counting.")
    p.add_argument("--budget", type=_nat, default=None,
                   help="enumeration cap in branch nodes (default: $LOGCOUNT_BUDGET or 10^7)")
    sub = p.add_subparsers(dest="cmd", required=True)

    e = sub.add_parser("encode", help="pairing function and list/matrix encodings")
    esub = e.add_subparsers(dest="op", required=True)
    q = esub.add_parser("pair")
    q.add_argument("nums", type=_nat, nargs="+")
    q = esub.add_parser("unpair")
    q.add_argument("z", type=_nat)
    q = esub.add_parser("row")
    q.add_argument("x", type=_nat)
    q.add_argument("Z")
    q = esub.add_parser("row2")
    q.add_argument("x", type=_nat)
    q.add_argument("y", type=_nat)
    q.add_argument("Z")
    q = esub.add_parser("seq")
    q.add_argument("i", type=_nat)
    q.add_argument("Z")
    q = esub.add_parser("entry")
    q.add_argument("i", type=_nat)
    q.add_argument("j", type=_nat)
    q.add_argument("Z")
    q = esub.add_parser("list")
    q.add_argument("items", nargs="*")
    q = esub.add_parser("numlist")
    q.add_argument("nums", type=_nat, nargs="*")
    q = esub.add_parser("natmatrix")
    q.add_argument("matrix", help="JSON list of rows")
    e.set_defaults(func=cmd_encode)

    i = sub.add_parser("int", help="sign-magnitude integer arithmetic")
    i.add_argument("op", choices=("add", "mul", "sum", "encode"))
    i.add_argument("values", nargs="*", help="bit literals or signed decimals")
    i.set_defaults(func=cmd_int)

    m = sub.add_parser("matpow", help="k-th power of a matrix over z2 or z")
    m.add_argument("--ring", choices=("z2", "z"))
    m.add_argument("--n", type=_nat)
    m.add_argument("--k", type=_nat, required=True)
    m.add_argument("--in", dest="input", required=True)
    m.add_argument("--witness", help="write the explicit witness (z2) here")
    m.add_argument("--check", action="store_true", help="run the graph-relation checker")
    m.set_defaults(func=cmd_matpow)

    mc = sub.add_parser("machine", help="nondeterministic machine path counting")
    mc.add_argument("op", choices=("count", "graph"))
    mc.add_argument("--machine", required=True)
    mc.add_argument("--input", required=True)
    mc.add_argument("--via", choices=("enum", "graph", "both"), default="both")
    mc.add_argument("--out")
    mc.set_defaults(func=cmd_machine)

    s = sub.add_parser("stcon", help="count s-t walks of length at most p")
    s.add_argument("--graph", required=True)
    s.add_argument("--p", type=_nat, required=True)
    s.add_argument("--s", type=_nat, default=0)
    s.add_argument("--t", type=_nat, default=1)
    s.add_argument("--via", choices=("dfs", "matpow", "both"), default="both")
    s.set_defaults(func=cmd_stcon)

    r = sub.add_parser("reduce", help="graph reductions with their identity checks")
    r.add_argument("op", choices=("layered", "convert", "signed"))
    r.add_argument("--graph")
    r.add_argument("--in", dest="input")
    r.add_argument("--p", type=_nat)
    r.add_argument("--k", type=_nat)
    r.add_argument("--out")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="seeded cross-oracle suites")
    v.add_argument("which", nargs="?", default="all", help="'all' or a criterion number")
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--cases", type=_nat)
    v.add_argument("--timing", action="store_true", help="append wall-clock times")
    v.set_defaults(func=cmd_verify)
    return p


def _require(a: argparse.Namespace) -> None:
    if a.cmd != "reduce":
        return
    need = {"layered": ("graph", "p"), "convert": ("graph",), "signed": ("input", "k")}[a.op]
    for name in need:
        if getattr(a, name) is None:
            flag = "--in" if name == "input" else f"--{name}"
            raise InputError(f"reduce {a.op} needs {flag}")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _require(args)
        return args.func(args)
    except Mismatch as exc:
        _out(f"mismatch: {exc}")
        return 1
    except CountMismatch as exc:
        _out(f"mismatch: {exc}")
        return 1
    except BudgetExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (InputError, ValueError, IndexError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
