import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logcount.counting import (
    BudgetExceeded,
    MultiGraph,
    PathCount,
    SimpleGraph,
    chain_multigraph,
    convert,
    count_walks_dfs,
    layer_node,
    layered_graph,
    multigraph_stcon_count,
    multigraph_via_matpow,
    signed_power_entry,
    signed_power_row,
    stcon_count,
    stcon_via_matpow,
    walk_tally,
)
from logcount.encoding import BitString, pair
from logcount.matpow import id_z, int_matrix

S, T, A = 0, 1, 2


def brute_walks(n, edges, s, t, p, weight=None):
    """Sum over all vertex sequences s = v0, ..., vl = t with l <= p of the
    product of edge weights."""
    w = weight or {e: 1 for e in edges}
    total = 0
    for l in range(p + 1):
        for mid in itertools.product(range(n), repeat=max(l - 1, 0)):
            seq = (s, *mid, t) if l else (s,)
            if l == 0 and s != t:
                continue
            prod = 1
            for e in zip(seq, seq[1:]):
                prod *= w.get(e, 0)
            total += prod
    return total


def native_pow(m, k):
    n = len(m)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = [[sum(m[i][x] * out[x][j] for x in range(n)) for j in range(n)] for i in range(n)]
    return out


graphs = st.integers(2, 5).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
)


# --- stcon ----------------------------------------------------------------------


def test_stcon_examples():
    assert stcon_count(2, S, T, 1, SimpleGraph.dense(2, [(S, T)])).value == 1
    G = SimpleGraph.dense(3, [(S, T), (S, A), (A, T)])
    assert stcon_count(3, S, T, 2, G).value == 2
    assert stcon_via_matpow(3, S, T, 2, G).value == 2
    assert stcon_via_matpow(3, S, T, 0, G).value == 0


def test_walks_through_t_count():
    G = SimpleGraph.dense(2, [(S, T), (T, T)])
    assert stcon_count(2, S, T, 3, G).value == 3


def test_complete_graph_counts():
    G = SimpleGraph.dense(3, [(u, v) for u in range(3) for v in range(3)])
    # every walk of length l has 3^(l-1) choices of interior vertices
    assert stcon_count(3, S, T, 4, G).value == 1 + 3 + 9 + 27


def test_path_count_binary():
    c = PathCount.of(6)
    assert c.binary.to_literal() == "011"
    assert c.binary.to_int() == c.value


def test_stcon_bad_indices():
    G = SimpleGraph.dense(2, [(S, T)])
    with pytest.raises(IndexError):
        stcon_count(2, S, 2, 1, G)
    with pytest.raises(ValueError):
        stcon_count(2, S, S, 1, G)


def test_stcon_accepts_adjacency_strings():
    X = BitString([pair(S, A), pair(A, T)])
    assert stcon_count(3, S, T, 2, X).value == 1


@settings(max_examples=60)
@given(graphs, st.integers(0, 6))
def test_stcon_matches_brute_force(g, p):
    n, edges = g
    G = SimpleGraph.dense(n, edges)
    want = brute_walks(n, edges, S, T, p)
    assert stcon_count(n, S, T, p, G, via="both").value == want


@settings(max_examples=30)
@given(graphs, st.integers(0, 5))
def test_stcon_monotone_in_p(g, p):
    n, edges = g
    G = SimpleGraph.dense(n, edges)
    assert count_walks_dfs(G, S, T, p) <= count_walks_dfs(G, S, T, p + 1)


def test_budget_is_enforced(monkeypatch):
    G = SimpleGraph.dense(3, [(u, v) for u in range(3) for v in range(3)])
    with pytest.raises(BudgetExceeded):
        count_walks_dfs(G, S, T, 10, budget=100)
    monkeypatch.setenv("LOGCOUNT_BUDGET", "50")
    with pytest.raises(BudgetExceeded):
        stcon_count(3, S, T, 10, G, via="dfs")


# --- layered graph ------------------------------------------------------------------


def layered_power_entry(p, G):
    H = layered_graph(p, G)
    order, m = H.dense_matrix()
    idx = {v: i for i, v in enumerate(order)}
    return native_pow(m, p + 2)[idx[0]][idx[1]]


def test_layered_single_edge():
    G = SimpleGraph.dense(2, [(S, T)])
    assert layered_power_entry(1, G) == 1


def test_layered_empty_graph():
    G = SimpleGraph.dense(3, [])
    assert layered_power_entry(2, G) == 0 == stcon_count(3, S, T, 2, G).value


def test_layered_labels_avoid_s_and_t():
    H = layered_graph(2, SimpleGraph.dense(2, [(S, T)]))
    assert layer_node(0, 0) not in (0, 1)
    assert (0, layer_node(0, 0)) in H.edges
    assert (1, 1) in H.edges


@settings(max_examples=40)
@given(graphs, st.integers(0, 4))
def test_layered_identity(g, p):
    n, edges = g
    G = SimpleGraph.dense(n, edges)
    assert layered_power_entry(p, G) == brute_walks(n, edges, S, T, p)


# --- convert ----------------------------------------------------------------------


def test_convert_zero_multiplicities():
    H = convert(MultiGraph.from_matrix([[0, 0], [0, 0]]))
    assert not H.edges


def test_convert_triple_edge():
    H = convert(MultiGraph.from_matrix([[0, 3], [0, 0]]))
    tally = walk_tally(H, 0, 2)
    assert tally[2].get(1, 0) == 3


def test_convert_uses_fresh_labels():
    X = MultiGraph.from_matrix([[1, 2], [0, 1]])
    H = convert(X)
    mids = H.nodes - {0, 1}
    assert len(mids) == 4
    assert pair(0, 1, 1 + 2) in mids


@settings(max_examples=30)
@given(st.integers(1, 3).flatmap(lambda n: st.lists(
    st.lists(st.integers(0, 3), min_size=n, max_size=n), min_size=n, max_size=n)), st.integers(0, 3))
def test_convert_identity(mult, k):
    n = len(mult)
    H = convert(MultiGraph.from_matrix(mult))
    power = native_pow(mult, k + 1)
    for i in range(n):
        tally = walk_tally(H, i, 2 * (k + 1))
        for j in range(n):
            assert all(tally[l].get(j, 0) == 0 for l in range(1, len(tally), 2))
            upto = [sum(tally[l].get(j, 0) for l in range(q + 1)) for q in range(len(tally))]
            assert upto[2 * (k + 1)] - upto[2 * k] == power[i][j]


# --- multigraphs ------------------------------------------------------------------


def test_multiplicity_five():
    G = MultiGraph.from_matrix([[0, 5], [0, 0]])
    assert multigraph_stcon_count(2, S, T, 1, G).value == 5


def test_two_hops():
    G = chain_multigraph([2, 3])
    assert multigraph_stcon_count(G.n, S, T, 2, G).value == 6


def test_unit_multigraph_equals_simple():
    edges = {(0, 1), (0, 2), (2, 1), (1, 2), (2, 2)}
    m = [[int((i, j) in edges) for j in range(3)] for i in range(3)]
    G = MultiGraph.from_matrix(m)
    for p in range(5):
        assert multigraph_stcon_count(3, S, T, p, G).value == stcon_count(3, S, T, p, SimpleGraph.dense(3, edges)).value


@pytest.mark.parametrize("mults", [[1], [4], [0, 3], [5, 5, 5, 5], [2, 1, 3], [3, 0, 2, 1]])
def test_chain_product_law(mults):
    G = chain_multigraph(mults)
    want = 1
    for g in mults:
        want *= g
    assert multigraph_stcon_count(G.n, S, T, len(mults), G).value == want


@settings(max_examples=30)
@given(st.integers(2, 3).flatmap(lambda n: st.lists(
    st.lists(st.integers(0, 3), min_size=n, max_size=n), min_size=n, max_size=n)), st.integers(0, 3))
def test_multigraph_matches_brute_force(mult, p):
    n = len(mult)
    G = MultiGraph.from_matrix(mult)
    w = {(i, j): mult[i][j] for i in range(n) for j in range(n)}
    want = brute_walks(n, w, S, T, p, weight=w)
    assert multigraph_stcon_count(n, S, T, p, G).value == want
    assert multigraph_via_matpow(n, S, T, p, G).value == want


# --- signed ---------------------------------------------------------------------


def test_signed_identity_matrix():
    X = id_z(3)
    for i in range(3):
        for j in range(3):
            assert signed_power_entry(3, i, j, 4, X) == ((1, 0) if i == j else (0, 0))


def test_signed_rotation():
    X = int_matrix([[0, -1], [1, 0]])
    assert signed_power_entry(2, 0, 0, 2, X) == (0, 1)


def test_signed_random_against_native():
    rng = random.Random(2)
    for _ in range(25):
        n, k = rng.randint(1, 3), rng.randint(0, 4)
        m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        power = native_pow(m, k)
        X = int_matrix(m)
        for i in range(n):
            for j, (pos, neg) in enumerate(signed_power_row(n, i, k, X)):
                assert pos - neg == power[i][j]


def test_signed_rejects_bad_index():
    with pytest.raises(IndexError):
        signed_power_entry(2, 0, 2, 1, id_z(2))
