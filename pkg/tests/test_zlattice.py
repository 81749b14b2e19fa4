import itertools
import random

import pytest

from matroid_lrc import catalog
from matroid_lrc.errors import DegenerateLattice, GroundTooLarge, NotCyclic, ZAxiomViolation
from matroid_lrc.matroid import Matroid, free_matroid, restriction, uniform
from matroid_lrc.zlattice import (
    CyclicFlatLattice,
    check_z_axioms,
    cyclic_flats,
    is_cyclic_set,
    is_information_set,
    matroid_from_z,
    non_degenerate,
    params_via_z,
    restricted_lattice,
)

from generators import random_matroid
from oracles import drop_set_distance

Y1 = frozenset({1, 2, 3, 5, 6, 7})
Y2 = frozenset({1, 2, 4, 5, 8, 9})
ATOMS = [frozenset(s) for s in ({1, 2, 5}, {2, 6, 7}, {3, 5, 7}, {1, 3, 6}, {4, 8, 9})]


def brute_cyclic_flats(M):
    out = set()
    for r in range(M.n + 1):
        for X in itertools.combinations(M.ground, r):
            X = frozenset(X)
            rank = M.rank(X)
            if all(M.rank(X - {x}) == rank for x in X) and all(
                    M.rank(X | {y}) > rank for y in M.ground if y not in X):
                out.add((X, rank))
    return out


def test_dss_lattice_matches_figure(dss_lattice):
    expected = {(frozenset(), 0), (frozenset(range(1, 10)), 4), (Y1, 3), (Y2, 3)}
    expected |= {(a, 2) for a in ATOMS}
    assert set(dss_lattice.flats) == expected
    assert check_z_axioms(dss_lattice).ok


def test_uniform_and_free_lattices():
    Z = cyclic_flats(uniform(6, 3))
    assert set(Z.flats) == {(frozenset(), 0), (frozenset(range(1, 7)), 3)}
    assert non_degenerate(Z)
    F = cyclic_flats(free_matroid([1, 2, 3]))
    assert F.flats == [(frozenset(), 0)]
    assert not non_degenerate(F)


def test_join_meet_follow_closure_and_core(dss_matroid, dss_lattice):
    M, Z = dss_matroid, dss_lattice
    for (X, _), (Y, _) in itertools.product(Z.flats, repeat=2):
        assert Z.join(X, Y) == M.closure(X | Y)
        assert Z.meet(X, Y) == M.cyclic_core(X & Y)


def test_z2_violation_has_witness(dss_lattice):
    flats = [(X, 3 if X == frozenset({1, 2, 5}) else r) for X, r in dss_lattice.flats]
    report = check_z_axioms(CyclicFlatLattice(range(1, 10), flats))
    assert "Z2" in report.failures()
    lo, hi = report["Z2"].witness
    assert lo == dss_lattice.mask({1, 2, 5}) or hi == dss_lattice.mask({1, 2, 5})
    with pytest.raises(ZAxiomViolation):
        matroid_from_z(CyclicFlatLattice(range(1, 10), flats))


def test_round_trip_dss(dss_matroid, dss_lattice):
    assert matroid_from_z(dss_lattice).equals(dss_matroid)


def test_uniform_from_two_flats():
    Z = CyclicFlatLattice(range(1, 6), [(set(), 0), (set(range(1, 6)), 2)])
    assert matroid_from_z(Z).equals(uniform(5, 2))


def test_singleton_lattice(singleton_lattice):
    Z = singleton_lattice
    assert len(Z.flats) == 12
    assert check_z_axioms(Z).ok
    assert params_via_z(Z) == (16, 7, 6)


def test_cyclic_sets(dss_lattice):
    Z = dss_lattice
    ok, F = is_cyclic_set(Z, {1, 2, 3, 7})
    assert ok and F == Y1
    ok, F = is_cyclic_set(Z, {1, 2, 3})
    assert not ok and F == Y1
    assert is_cyclic_set(Z, [])[0]


def test_cyclic_sets_agree_with_brute_force(dss_matroid, dss_lattice):
    for r in range(10):
        for X in itertools.combinations(range(1, 10), r):
            assert is_cyclic_set(dss_lattice, X)[0] == (dss_matroid.cyclic_core(X) == frozenset(X))


def test_restricted_lattice(dss_matroid, dss_lattice):
    R = restricted_lattice(dss_lattice, {1, 2, 3, 7})
    assert set(R.flats) == {(frozenset(), 0), (frozenset({1, 2, 3, 7}), 3)}
    assert restricted_lattice(dss_lattice, range(1, 10)) == dss_lattice
    R1 = restricted_lattice(dss_lattice, Y1)
    assert set(R1.flats) == brute_cyclic_flats(restriction(dss_matroid, Y1))
    assert len(R1.flats) == 6
    with pytest.raises(NotCyclic):
        restricted_lattice(dss_lattice, {1, 2, 3})


def test_params_via_z(dss_lattice):
    assert params_via_z(dss_lattice) == (9, 4, 3)
    assert params_via_z(dss_lattice, {1, 2, 3, 7}) == (4, 3, 2)
    assert params_via_z(dss_lattice, Y1) == (6, 3, 3)


def test_params_via_z_rejects_degenerate():
    Z = cyclic_flats(free_matroid([1, 2]))
    with pytest.raises(DegenerateLattice):
        params_via_z(Z)


def test_information_sets(dss_lattice):
    assert is_information_set(dss_lattice, {1, 2, 3, 4})
    assert not is_information_set(dss_lattice, {1, 2, 8, 9})
    assert not is_information_set(dss_lattice, {1, 2, 3})


def test_information_sets_match_bases(dss_matroid, dss_lattice):
    bases = set(dss_matroid.bases())
    for X in itertools.combinations(range(1, 10), 4):
        assert is_information_set(dss_lattice, X) == (frozenset(X) in bases)


@pytest.mark.parametrize("seed", range(40))
def test_random_matroids(seed):
    M, _, _ = random_matroid(random.Random(1000 + seed))
    Z = cyclic_flats(M)
    assert set(Z.flats) == brute_cyclic_flats(M)
    assert check_z_axioms(Z).ok
    assert cyclic_flats(matroid_from_z(Z)) == Z
    assert matroid_from_z(Z).equals(M)
    if non_degenerate(Z):
        assert params_via_z(Z)[2] == drop_set_distance(M.rank, M.ground)


def test_cl_and_cyc_land_in_lattice(dss_matroid, dss_lattice):
    flats = {X for X, _ in dss_lattice.flats}
    for r in range(10):
        for X in itertools.combinations(range(1, 10), r):
            X = frozenset(X)
            if dss_matroid.cyclic_core(X) == X:
                assert dss_matroid.closure(X) in flats
            if dss_matroid.closure(X) == X:
                assert dss_matroid.cyclic_core(X) in flats


def test_bfs_enumeration_above_raw_scan_limit():
    # 14 elements forces the closure-expansion path; compare with the known lattice
    M = matroid_from_z(CyclicFlatLattice(range(1, 15), [(set(), 0), ({1, 2, 3}, 2), (set(range(1, 15)), 5)]))
    plain = Matroid(M.ground, M.rank_of_mask)
    assert set(cyclic_flats(plain).flats) == {(frozenset(), 0), (frozenset({1, 2, 3}), 2),
                                              (frozenset(range(1, 15)), 5)}


def test_too_large():
    with pytest.raises(GroundTooLarge):
        cyclic_flats(Matroid(range(25), lambda m: min(m.bit_count(), 3)))


def test_exports(dss_lattice):
    dot = dss_lattice.to_dot()
    assert dot.count("label=") == 9
    assert '"({1,2,5},2)"' in dot and '"(∅,0)"' in dot
    assert dot.count("->") == len(dss_lattice.hasse())
    assert CyclicFlatLattice.from_json(dss_lattice.to_json()) == dss_lattice
    assert dss_lattice.to_text().splitlines()[0] == "(∅,0)"
