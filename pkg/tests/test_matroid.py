import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from matroid_lrc import catalog
from matroid_lrc.errors import (
    BadParams,
    GroundTooLarge,
    LabelCollision,
    NotAForest,
    NotARelaxableCircuit,
    UnknownLabel,
)
from matroid_lrc.gf import gf
from matroid_lrc.linalg import Matrix
from matroid_lrc.matroid import (
    Digraph,
    Graph,
    Matroid,
    check_axioms,
    contraction,
    deletion,
    direct_sum,
    dual,
    from_gammoid,
    from_graph,
    from_matrix,
    free_matroid,
    graph_representation,
    matroid_from_json,
    relaxation,
    restriction,
    truncation,
    uniform,
)

from generators import random_gammoid, random_graphic, random_linear
from oracles import column_rank, graph_rank


def subsets(ground):
    for r in range(len(ground) + 1):
        yield from itertools.combinations(ground, r)


def test_dss_rank_and_closure(dss_matroid):
    M = dss_matroid
    assert M.rank({1, 2, 5}) == 2
    assert M.closure({1, 2, 5}) == frozenset({1, 2, 5})
    assert M.cyclic_core({1, 2, 3}) == frozenset()
    bases = set(M.bases())
    assert frozenset({1, 2, 3, 4}) in bases and frozenset({1, 2, 6, 8}) in bases


def test_rank_matches_reference_on_all_subsets(dss_matroid):
    rows = catalog.DSS_ROWS
    for X in subsets(range(1, 10)):
        assert dss_matroid.rank(X) == column_rank(rows, 3, [x - 1 for x in X])


def test_free_and_uniform():
    I = from_matrix(Matrix.identity(gf(5), 4))
    assert I.equals(free_matroid([1, 2, 3, 4]))
    assert uniform(4, 2).rank({1, 2, 3}) == 2
    assert uniform(5, 5).equals(free_matroid(range(1, 6)))
    with pytest.raises(BadParams):
        uniform(3, 4)


def test_uniform_is_vandermonde_matroid():
    F = gf(7)
    n, k = 6, 3
    rows = [[pow(a, i, 7) for a in range(1, n + 1)] for i in range(k)]
    assert from_matrix(Matrix(F, rows, cols=n)).equals(uniform(n, k))


def test_indexed_graph():
    G = catalog.indexed_graph()
    M = from_graph(G)
    assert M.is_independent({3, 4, 6})
    assert not M.is_independent({5, 6, 7})
    R = graph_representation(G, gf(7), [1, 2, 3, 4])
    expected = [[1, 0, 0, 0, 0, 1, 1], [0, 1, 0, 0, 0, 1, 1], [0, 0, 1, 0, 6, 6, 0], [0, 0, 0, 1, 1, 0, 6]]
    assert [list(r) for r in R.data] == expected
    assert from_matrix(R).rank({5, 6, 7}) == 2
    assert from_matrix(R).equals(M)


def test_graph_representation_errors_and_tree():
    G = catalog.indexed_graph()
    with pytest.raises(NotAForest):
        graph_representation(G, gf(3), [5, 6, 7])
    with pytest.raises(BadParams):
        graph_representation(G, gf(3), [1, 2])
    tree = Graph("abc", [(1, ("a", "b")), (2, ("b", "c"))])
    R = graph_representation(tree, gf(2))
    assert R == Matrix.identity(gf(2), 2)


def test_loop_edge_has_rank_zero():
    M = from_graph(Graph(["a"], [(1, ("a", "a"))]))
    assert M.rank({1}) == 0


@pytest.mark.parametrize("seed", range(15))
def test_random_graphs_rank_and_representation(seed):
    rng = random.Random(seed)
    nv, n = rng.randint(2, 6), rng.randint(3, 9)
    edges = {lab: (rng.randrange(nv), rng.randrange(nv)) for lab in range(1, n + 1)}
    G = Graph(range(nv), list(edges.items()))
    M = from_graph(G)
    for X in subsets(M.ground):
        assert M.rank(X) == graph_rank(edges, X)
    for q in (2, 3):
        assert from_matrix(graph_representation(G, gf(q))).equals(M)


@pytest.mark.parametrize("seed", range(10))
def test_random_gammoids_match_max_flow(seed):
    M, ref, _ = random_gammoid(random.Random(seed))
    for X in subsets(M.ground):
        assert M.rank(X) == ref(X)


def test_small_gammoids():
    dg = Digraph(["a", "b", "c", "t"], [("a", "t"), ("b", "t")])
    M = from_gammoid(dg, ["a", "b", "c"], ["t"])
    assert M.rank({"a", "b"}) == 1 and M.rank({"c"}) == 0
    dg = Digraph(["a", "b", "c"], [])
    assert from_gammoid(dg, ["a", "b", "c"], ["a", "b", "c"]).equals(free_matroid(["a", "b", "c"]))


def test_gammoid_of_construction_matches(construction_z):
    from matroid_lrc.construct import construct_matroid, gammoid_graph

    g = gammoid_graph(construction_z)
    assert g.matroid().equals(construct_matroid(construction_z).matroid)


def test_restriction(dss_matroid):
    M = dss_matroid
    assert restriction(M, M.ground).equals(M)
    R = restriction(M, {1, 2, 3, 7})
    assert R.rank() == 3 and R.ground == (1, 2, 3, 7)
    assert restriction(M, []).rank() == 0
    with pytest.raises(UnknownLabel):
        restriction(M, {42})


def test_contraction_and_deletion():
    U = uniform(4, 2)
    assert contraction(U, []).equals(U)
    assert contraction(U, {1}).equals(uniform(3, 1, [2, 3, 4]))
    assert deletion(U, {1}).equals(uniform(3, 2, [2, 3, 4]))


def test_graphic_contraction_matches_edge_contraction():
    G = catalog.indexed_graph()
    M = from_graph(G)
    for e in G.edge_labels:
        assert contraction(M, {e}).equals(from_graph(G.contract(e)))


@pytest.mark.parametrize("n", range(1, 7))
def test_dual_of_uniform(n):
    for k in range(n + 1):
        assert dual(uniform(n, k)).equals(uniform(n, n - k))


def test_dual_of_free_is_zero_and_involution(dss_matroid):
    D = dual(free_matroid([1, 2, 3]))
    assert D.rank() == 0
    assert dual(dual(dss_matroid)).equals(dss_matroid)


@pytest.mark.parametrize("seed", range(10))
def test_dual_is_orthogonal_complement(seed):
    rng = random.Random(seed)
    p, n = rng.choice([2, 3, 5]), rng.randint(2, 8)
    G = Matrix(gf(p), [[rng.randrange(p) for _ in range(n)] for _ in range(rng.randint(1, n))], cols=n)
    M = from_matrix(G)
    assert dual(M).equals(from_matrix(G.orthogonal_complement()))
    X = {x for x in M.ground if rng.random() < 0.5}
    # (M / X)* = M* \ X
    assert dual(contraction(M, X)).equals(deletion(dual(M), X))


def test_truncation():
    U = uniform(5, 5)
    assert truncation(U, 3).equals(uniform(5, 3))
    assert truncation(uniform(5, 3), 3).equals(uniform(5, 3))


def test_truncated_direct_sum_distance():
    from matroid_lrc.construct import truncated_direct_sum
    from oracles import drop_set_distance

    M = truncated_direct_sum(8, 4, 2, 2)
    assert M.rank() == 4
    assert drop_set_distance(M.rank, M.ground) == 3


def test_direct_sum():
    A, B = uniform(2, 1), uniform(2, 1)
    S = direct_sum(A, B)
    assert S.rank() == 2
    assert S.ground == ("L.1", "L.2", "R.1", "R.2")
    with pytest.raises(LabelCollision):
        direct_sum(A, B, prefix=False)
    empty = Matroid((), lambda m: 0)
    assert direct_sum(A, empty, prefix=False).equals(A)


def test_direct_sum_submodular_on_random_pairs():
    S = direct_sum(uniform(4, 2), from_graph(catalog.indexed_graph()))
    rng = random.Random(0)
    for _ in range(200):
        X = {e for e in S.ground if rng.random() < 0.5}
        Y = {e for e in S.ground if rng.random() < 0.5}
        assert S.rank(X) + S.rank(Y) >= S.rank(X | Y) + S.rank(X & Y)


def test_pappus_relaxation():
    for q in (7, 11):
        M = from_matrix(catalog.pappus_matrix(gf(q)))
        assert M.rank({4, 5, 6}) == 2
        N = relaxation(M, {4, 5, 6})
        assert N.is_independent({4, 5, 6})
        C = frozenset({4, 5, 6})
        cl = M.closure(C)
        for X in subsets(M.ground):
            X = frozenset(X)
            differs = M.is_independent(X) != N.is_independent(X)
            assert differs == (X == C), X
            if M.rank(X) != N.rank(X):
                assert C <= X <= cl
    with pytest.raises(NotARelaxableCircuit):
        relaxation(M, {1, 2})


def test_check_axioms_passes_and_detects():
    assert check_axioms(from_matrix(catalog.dss_matrix())).ok
    from matroid_lrc.construct import construct_matroid

    assert check_axioms(construct_matroid(catalog.construction_z()).matroid).ok
    bad = Matroid((1, 2, 3), lambda m: m.bit_count() + 1 if m == 0b111 else m.bit_count())
    report = check_axioms(bad)
    assert not report["R.1"].ok
    assert report["R.1"].witness == frozenset({1, 2, 3})


def test_independent_sets_match_rank(dss_matroid):
    indep = set(dss_matroid.independent_sets())
    for X in subsets(dss_matroid.ground):
        assert (frozenset(X) in indep) == (dss_matroid.rank(X) == len(X))


def test_circuits_are_minimal_dependent():
    M = from_graph(catalog.indexed_graph())
    for C in M.circuits():
        assert not M.is_independent(C)
        assert all(M.is_independent(C - {c}) for c in C)


def test_equality_refuses_large_grounds():
    with pytest.raises(GroundTooLarge):
        uniform(17, 3).equals(uniform(17, 3))


def test_json_round_trip(dss_matroid):
    for M in (dss_matroid, uniform(5, 2), from_graph(catalog.indexed_graph())):
        assert matroid_from_json(M.to_json()).equals(M)
