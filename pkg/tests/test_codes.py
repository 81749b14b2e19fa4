import itertools
import math
import random
from fractions import Fraction

import pytest

from matroid_lrc import catalog
from matroid_lrc.codes import (
    GeneralCode,
    LinearCode,
    Polymatroid,
    information_sets,
    non_degenerate,
    params,
    polymatroid_from_code,
    polymatroid_params,
    puncture,
)
from matroid_lrc.errors import BadParams, EmptyX, TopNotCyclicFlat, UnknownCoordinate, ZeroCode
from matroid_lrc.gf import gf
from matroid_lrc.linalg import Matrix
from matroid_lrc.matroid import restriction

from oracles import codewords_mod_p, entropy_rank, min_distance_mod_p


def test_dss_params(dss_code):
    assert params(dss_code) == (9, 4, 3)
    assert dss_code.params([1, 2, 3, 5, 6, 7]) == (6, 3, 3)
    assert dss_code.params([1, 2, 5]) == (3, 2, 2)
    assert dss_code.params([2, 6, 7]) == (3, 2, 2)
    assert non_degenerate(dss_code)


def test_puncture(dss_code):
    P = puncture(dss_code, [1, 2, 5])
    assert P.params() == (3, 2, 2)
    assert puncture(dss_code, dss_code.labels).params() == dss_code.params()
    with pytest.raises(EmptyX):
        puncture(dss_code, [])
    with pytest.raises(UnknownCoordinate):
        puncture(dss_code, [10])


def test_code_12_7():
    assert LinearCode(catalog.code_12_7_matrix()).params() == (12, 7, 3)


@pytest.mark.parametrize("n", [2, 5, 8])
def test_repetition_code(n):
    C = LinearCode(Matrix(gf(2), [[1] * n]))
    assert C.params() == (n, 1, n)


def test_degenerate_codes():
    G = Matrix(gf(3), [[1, 0, 1], [0, 0, 1]])
    assert not LinearCode(G).non_degenerate()
    g = GeneralCode(2, [(0, 0, 1), (0, 1, 0)])
    assert not g.non_degenerate()
    with pytest.raises(ZeroCode):
        LinearCode(Matrix.zeros(gf(2), 1, 3)).distance()


def test_information_sets(dss_code):
    infos = set(information_sets(dss_code))
    assert frozenset({1, 2, 3, 4}) in infos and frozenset({1, 2, 6, 8}) in infos
    rs = LinearCode(Matrix(gf(7), [[pow(a, i, 7) for a in range(1, 7)] for i in range(3)]))
    assert set(rs.information_sets()) == {frozenset(c) for c in itertools.combinations(range(1, 7), 3)}


def test_full_space_is_systematic():
    g = GeneralCode(3, itertools.product(range(3), repeat=2))
    assert g.is_systematic([1, 2])
    assert g.information_sets() == [frozenset({1, 2})]


def test_general_code_puncture():
    g = GeneralCode(2, [(0, 0, 0), (0, 1, 1)])
    p = g.puncture([1])
    assert p.size == 1


@pytest.mark.parametrize("seed", range(20))
def test_distance_is_min_weight(seed):
    rng = random.Random(seed)
    p, n = rng.choice([2, 3, 5]), rng.randint(2, 8)
    k = rng.randint(1, min(4, n))
    rows = [[rng.randrange(p) for _ in range(n)] for _ in range(k)]
    C = LinearCode(Matrix(gf(p), rows, cols=n))
    if C.k == 0:
        return
    assert C.distance() == min_distance_mod_p(rows, p) == C.min_weight()
    assert set(C.codewords()) == codewords_mod_p(rows, p)
    X = [x for x in C.labels if rng.random() < 0.6] or [1]
    assert C.puncture(X).matroid.equals(restriction(C.matroid, X))


def test_linear_entropy_equals_matroid_rank(dss_code):
    P = polymatroid_from_code(dss_code)
    assert P.rank([1, 2, 5]) == 2
    for r in range(10):
        for X in itertools.combinations(range(1, 10), r):
            assert P.rank(X) == dss_code.matroid.rank(X)
    assert (polymatroid_params(P).n, polymatroid_params(P).k, polymatroid_params(P).d) == (9, 4, 3)


def test_full_space_polymatroid_is_free():
    g = GeneralCode(2, itertools.product(range(2), repeat=3))
    P = polymatroid_from_code(g)
    assert all(P.rank(X) == len(X) for r in range(4) for X in itertools.combinations(range(1, 4), r))
    with pytest.raises(TopNotCyclicFlat):
        polymatroid_params(P)


def test_nonlinear_entropy_value():
    g = GeneralCode(3, [(0, 0), (0, 1), (1, 2)])
    P = polymatroid_from_code(g)
    expected = (2 / 3) * math.log(3 / 2, 3) + (1 / 3) * math.log(3, 3)
    assert abs(P.rank([1]) - expected) < 1e-12
    assert abs(P.rank([1]) - 0.5793) < 1e-4
    assert P.rank([1, 2]) == 1


def test_scaling_halves_k(dss_code):
    P = polymatroid_from_code(dss_code)
    H = P.scaled(Fraction(1, 2))
    assert H.rank() == 2
    # cyclic flats are recomputed on the scaled oracle: only the unit-drop test changes
    assert {X for X, _ in polymatroid_params(H).cyclic_flats} >= {frozenset()}
    assert P.scaled().scale == 1


def test_polymatroid_axiom_checks():
    too_big = Polymatroid([1, 2], lambda X: Fraction(2 * len(X)))
    assert not too_big.check_axioms()["R5"]
    # singletons at 1/2, the pair at 2: 1/2 + 1/2 < 2 + 0
    supermodular = Polymatroid([1, 2], lambda X: {0: Fraction(0), 1: Fraction(1, 2), 2: Fraction(2)}[len(X)])
    result = supermodular.check_axioms()
    assert not result["R3"] and result["R1"] and result["R2"]


def test_general_code_validation():
    with pytest.raises(BadParams):
        GeneralCode(1, [(0,)])
    with pytest.raises(BadParams):
        GeneralCode(2, [(0, 1), (1,)])
    with pytest.raises(BadParams):
        GeneralCode(2, [(0, 2)])
    g = GeneralCode(3, [(0, 1), (2, 2)])
    assert g.k_exact == (2, 3)
    assert GeneralCode.from_json(g.to_json()).words == g.words


def test_nonlinear_entropy_matches_reference():
    rng = random.Random(7)
    words = {tuple(rng.randrange(3) for _ in range(4)) for _ in range(10)}
    g = GeneralCode(3, words)
    P = polymatroid_from_code(g)
    wl = list(g.words)
    for r in range(5):
        for X in itertools.combinations(range(1, 5), r):
            assert abs(float(P.rank(X)) - entropy_rank(wl, [x - 1 for x in X], 3)) < 1e-9


def test_json_round_trip(dss_code):
    assert LinearCode.from_json(dss_code.to_json()).params() == (9, 4, 3)
