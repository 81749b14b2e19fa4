"""Small named codes, matroids and systems used by the tests, docs and CLI."""

from __future__ import annotations

from fractions import Fraction

from .construct import RepairSetSystem
from .gf import FieldSpec, gf
from .linalg import Matrix
from .matroid import Graph
from .zlattice import CyclicFlatLattice

DSS_ROWS = [
    [1, 0, 0, 0, 1, 1, 1, 1, 1],
    [0, 1, 0, 0, 1, 0, 1, 2, 2],
    [0, 0, 1, 0, 0, 1, 1, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 1, 2],
]

CODE_12_7_ROWS = [
    [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 3],
    [0, 2, 1, 0, 0, 1, 0, 0, 0, 0, 1, 3],
    [0, 3, 0, 1, 0, 3, 0, 0, 0, 0, 1, 3],
    [0, 0, 0, 0, 1, 2, 0, 0, 0, 0, 1, 3],
    [0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 3],
    [0, 0, 0, 0, 0, 0, 0, 1, 2, 0, 1, 3],
    [0, 0, 0, 0, 0, 0, 0, 0, 3, 1, 1, 1],
]


def dss_matrix() -> Matrix:
    """4 x 9 generator over GF(3) of a [9,4,3] storage code with (2,2)-locality."""
    return Matrix.from_rows(gf(3), DSS_ROWS)


def dss_atoms() -> list[frozenset]:
    """The rank-2 cyclic flats of the storage code; each is a [3,2,2] repair set."""
    return [frozenset(s) for s in ({1, 2, 5}, {2, 6, 7}, {3, 5, 7}, {1, 3, 6}, {4, 8, 9})]


def code_12_7_matrix() -> Matrix:
    """7 x 12 generator over GF(5) realizing the construction_z system."""
    return Matrix.from_rows(gf(5), CODE_12_7_ROWS)


def construction_z() -> RepairSetSystem:
    """Four overlapping repair sets on [12] giving a (12,7,3,3,2) matroid."""
    return RepairSetSystem([(range(1, 5), 3), (range(3, 7), 3), (range(7, 11), 3), (range(10, 13), 2)], 7)


def singleton_optimal_lattice() -> CyclicFlatLattice:
    """Cyclic flats of a (16,7,6,3,3) matroid meeting the locality bound with equality."""
    X1, X2, X3, X4 = {1, 2, 3, 4, 5}, {5, 6, 7, 8, 9}, {9, 10, 11, 12, 13}, {1, 13, 14, 15, 16}
    E = set(range(1, 17))
    flats = [
        (set(), 0), (X1, 3), (X2, 3), (X3, 3), (X4, 3),
        (X1 | X2, 5), (X1 | X3, 6), (X1 | X4, 5), (X2 | X3, 5), (X2 | X4 | {1}, 6), (X3 | X4, 5),
        (E, 7),
    ]
    return CyclicFlatLattice(sorted(E), flats)


def singleton_optimal_repair_sets() -> dict:
    X = [frozenset(range(1, 6)), frozenset(range(5, 10)), frozenset(range(9, 14)), frozenset({1, 13, 14, 15, 16})]
    return {x: X[0] if x <= 5 else X[1] if x <= 9 else X[2] if x <= 13 else X[3] for x in range(1, 17)}


def indexed_graph() -> Graph:
    """Five vertices, seven labelled edges; the forest {1,2,3,4} spans it."""
    return Graph(["u", "w", "v", "a", "b"],
                 [(1, ("u", "w")), (2, ("w", "v")), (3, ("a", "v")), (4, ("b", "v")),
                  (5, ("b", "a")), (6, ("u", "a")), (7, ("u", "b"))])


def pappus_matrix(spec: FieldSpec | None = None) -> Matrix:
    """3 x 9 Pappus configuration; its lines are the 3-subsets of rank 2.

    {4,5,6} is a circuit-hyperplane, and relaxing it gives the non-Pappus
    matroid. The field must have odd characteristic.
    """
    spec = spec or gf(7)
    if spec.m != 1 or spec.p == 2:
        raise ValueError("the Pappus configuration needs an odd prime field")
    half = Fraction(1, 2)
    rows = [[1, 0, -1, half, 0, -half, 1, 0, -1],
            [1, 1, 1, 0, 0, 0, -1, -1, -1],
            [1] * 9]
    p = spec.p
    data = [[(x.numerator * pow(x.denominator, -1, p)) % p if isinstance(x, Fraction) else x % p for x in row]
            for row in rows]
    return Matrix(spec, data, cols=9)
