import json
import os
import subprocess
import sys

import pytest

from logcount.cli import main


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run(
        [sys.executable, "-m", "logcount", *args],
        capture_output=True, text=True, env=full_env, timeout=120,
    )


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


GUESSER = {
    "states": 2, "accept": 1, "k": 1,
    "delta": [
        {"from": 0, "read": s, "work": w, "to": 0, "write": b, "workMove": "R", "inputMove": "R"}
        for s in "01" for w in (0, 1) for b in (0, 1)
    ] + [
        {"from": 0, "read": "$", "work": w, "to": 1, "write": 0, "workMove": "R", "inputMove": "S"}
        for w in (0, 1)
    ],
}


def test_help():
    r = run("--help")
    assert r.returncode == 0
    assert "usage:" in r.stdout


def test_int_add_example():
    r = run("int", "add", "0101", "111")
    assert r.returncode == 0
    assert r.stdout == "001\n+2\n"


def test_int_decimal_operands(capsys):
    assert main(["int", "mul", "-3", "+7"]) == 0
    assert capsys.readouterr().out == "110101\n-21\n"
    assert main(["int", "sum", "+2", "+3", "-4"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "+1"


def test_int_bad_operand():
    r = run("int", "add", "01x", "1")
    assert r.returncode == 2
    assert "error" in r.stderr


def test_encode(capsys):
    assert main(["encode", "pair", "1", "2"]) == 0
    assert capsys.readouterr().out == "16\n"
    assert main(["encode", "unpair", "16"]) == 0
    assert capsys.readouterr().out == "1 2\n"
    assert main(["encode", "unpair", "1"]) == 2
    assert main(["encode", "natmatrix", "[[1,2],[3,4]]"]) == 0
    M = capsys.readouterr().out.strip()
    assert main(["encode", "entry", "1", "0", M]) == 0
    assert capsys.readouterr().out == "3\n"


def test_matpow_flip(tmp_path):
    f = write(tmp_path / "flip.json", {"ring": "z2", "n": 2, "entries": [[0, 1], [1, 0]]})
    r = run("matpow", "--ring", "z2", "--n", "2", "--k", "2", "--in", f)
    assert r.returncode == 0
    assert r.stdout.splitlines()[0] == "[[1,0],[0,1]]"


def test_matpow_witness_and_check(tmp_path, capsys):
    f = write(tmp_path / "m.json", {"ring": "z2", "n": 2, "entries": [[1, 1], [0, 1]]})
    w = tmp_path / "w.json"
    assert main(["matpow", "--ring", "z2", "--k", "3", "--in", f, "--witness", str(w), "--check"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["[[1,1],[0,1]]", "check ok"]
    data = json.loads(w.read_text())
    assert set(data) == {"Y", "Z"}
    assert set(data["Y"]) <= {"0", "1"}


def test_matpow_integer(tmp_path, capsys):
    f = write(tmp_path / "m.json", {"ring": "z", "n": 2, "entries": [[1, 1], [0, 1]]})
    assert main(["matpow", "--ring", "z", "--k", "5", "--in", f, "--check"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "[[1,5],[0,1]]"


@pytest.mark.parametrize("obj,extra", [
    ({"ring": "z2", "n": 2, "entries": [[0, 2], [1, 0]]}, []),
    ({"ring": "z2", "n": 3, "entries": [[0, 1], [1, 0]]}, []),
    ({"ring": "z", "n": 2, "entries": [[0, 1], [1, 0]]}, ["--ring", "z2"]),
    ({"ring": "q", "n": 1, "entries": [[1]]}, []),
])
def test_matpow_malformed(tmp_path, obj, extra):
    f = write(tmp_path / "bad.json", obj)
    assert main(["matpow", "--k", "1", "--in", f, *extra]) == 2


def test_matpow_not_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{nope")
    assert main(["matpow", "--k", "1", "--in", str(p)]) == 2


def test_machine_count_and_graph(tmp_path, capsys):
    m = write(tmp_path / "m.json", GUESSER)
    assert main(["machine", "count", "--machine", m, "--input", "0101"]) == 0
    assert capsys.readouterr().out == "16\n"
    out = tmp_path / "g.json"
    assert main(["machine", "graph", "--machine", m, "--input", "0101", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["stcon", "--graph", str(out), "--p", "8", "--via", "dfs"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "count 16"


def test_machine_rejects_bad_description(tmp_path):
    bad = dict(GUESSER, accept=7)
    m = write(tmp_path / "m.json", bad)
    assert main(["machine", "count", "--machine", m, "--input", "01"]) == 2


def test_machine_input_with_trailing_zero(tmp_path):
    m = write(tmp_path / "m.json", GUESSER)
    assert main(["machine", "count", "--machine", m, "--input", "010"]) == 2


def test_stcon(tmp_path, capsys):
    g = write(tmp_path / "g.json", {"n": 3, "edges": [[0, 1], [0, 2], [2, 1]]})
    assert main(["stcon", "--graph", g, "--p", "2"]) == 0
    assert capsys.readouterr().out == "count 2\nbinary 01\n"
    mg = write(tmp_path / "mg.json", {"n": 2, "multiplicities": [[0, 5], [0, 0]]})
    assert main(["stcon", "--graph", mg, "--p", "1"]) == 0
    assert capsys.readouterr().out == "count 5\nbinary 101\n"


def test_stcon_edge_out_of_range(tmp_path):
    g = write(tmp_path / "g.json", {"n": 2, "edges": [[0, 3]]})
    assert main(["stcon", "--graph", g, "--p", "2"]) == 2


def test_budget_env(tmp_path):
    # the complete digraph has far more than 100 walks of length <= 12
    g = write(tmp_path / "g.json", {"n": 3, "edges": [[u, v] for u in range(3) for v in range(3)]})
    r = run("stcon", "--graph", g, "--p", "12", "--via", "dfs", env={"LOGCOUNT_BUDGET": "100"})
    assert r.returncode == 2
    assert "exceeded" in r.stderr


def test_reduce_layered(tmp_path, capsys):
    g = write(tmp_path / "g.json", {"n": 3, "edges": [[0, 1], [0, 2], [2, 1]]})
    out = tmp_path / "h.json"
    assert main(["reduce", "layered", "--graph", g, "--p", "2", "--out", str(out)]) == 0
    assert capsys.readouterr().out == "stcon 2\nlayered power entry 2\n"
    assert json.loads(out.read_text())["edges"]


def test_reduce_convert(tmp_path, capsys):
    mg = write(tmp_path / "mg.json", {"n": 2, "multiplicities": [[1, 2], [3, 0]]})
    assert main(["reduce", "convert", "--graph", mg, "--k", "2"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "[[13,14],[21,6]]"


def test_reduce_signed(tmp_path, capsys):
    f = write(tmp_path / "rot.json", {"ring": "z", "n": 2, "entries": [[0, -1], [1, 0]]})
    assert main(["reduce", "signed", "--in", f, "--k", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {"pos": [[0, 0], [0, 0]], "neg": [[1, 0], [0, 1]], "power": [[-1, 0], [0, -1]]}


def test_reduce_missing_option(tmp_path):
    g = write(tmp_path / "g.json", {"n": 2, "edges": [[0, 1]]})
    assert main(["reduce", "layered", "--graph", g]) == 2


def test_verify_small_run_is_reproducible():
    a = run("verify", "all", "--seed", "3", "--cases", "3")
    b = run("verify", "all", "--seed", "3", "--cases", "3")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert a.stdout.splitlines()[-1] == "10/10 criteria passed"


def test_verify_unknown_criterion():
    assert main(["verify", "11"]) == 2


def test_unknown_subcommand():
    assert run("frobnicate").returncode == 2
