import random

import pytest
from hypothesis import given, settings, strategies as st

from matroid_lrc import catalog
from matroid_lrc.errors import ParseError, SpecMismatch
from matroid_lrc.gf import gf
from matroid_lrc.linalg import Matrix, vectors_rank

from oracles import column_rank, rank_mod_p


def test_dss_rank_and_rref():
    G = catalog.dss_matrix()
    assert G.rank() == 4
    R, pivots = G.rref()
    assert pivots == [1, 2, 3, 4]
    assert R == G  # already in reduced form


def test_code_12_7_rank():
    assert catalog.code_12_7_matrix().rank() == 7


def test_trivial_shapes():
    F = gf(5)
    assert Matrix.zeros(F, 3, 4).rank() == 0
    I = Matrix.identity(F, 4)
    R, piv = I.rref()
    assert R == I and piv == [1, 2, 3, 4]
    Z, piv = Matrix.zeros(F, 1, 3).rref()
    assert piv == [] and Z.rank() == 0


def test_submatrix_cols():
    G = catalog.dss_matrix()
    assert G.submatrix_cols(G.labels) == G
    S = G.submatrix_cols([5, 6, 7])
    assert S.shape == (4, 3)
    assert [list(S.column(c)) for c in (5, 6, 7)] == [[1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 1, 0]]
    E = G.submatrix_cols([])
    assert E.shape == (4, 0) and E.rank() == 0


def _random_matrix(rng, p, rows, cols):
    return [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 5), st.integers(1, 7), st.integers(0, 10 ** 6))
def test_rank_matches_reference(p, rows, cols, seed):
    rng = random.Random(seed)
    data = _random_matrix(rng, p, rows, cols)
    G = Matrix(gf(p), data, cols=cols)
    assert G.rank() == rank_mod_p(data, p)
    assert G.rank() == G.transpose().rank()
    assert G.row_basis().rank() == G.rank()
    X = [c + 1 for c in range(cols) if rng.random() < 0.5]
    assert G.rank_of(X) == column_rank(data, p, [c - 1 for c in X])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_column_rank_is_submodular(seed):
    rng = random.Random(seed)
    p, n = 3, 7
    G = Matrix(gf(p), _random_matrix(rng, p, 4, n), cols=n)
    X = {c for c in range(1, n + 1) if rng.random() < 0.5}
    Y = {c for c in range(1, n + 1) if rng.random() < 0.5}
    assert G.rank_of(X) + G.rank_of(Y) >= G.rank_of(X | Y) + G.rank_of(X & Y)
    assert G.rank_of(X & Y) <= G.rank_of(X)


def test_orthogonal_complement():
    G = catalog.dss_matrix()
    H = G.orthogonal_complement()
    assert H.rows == 5
    assert all(x == 0 for row in G.matmul(H.transpose()).data for x in row)


def test_extension_field_rank():
    F = gf(4)
    # rows (1, a) and (a, a^2) are proportional
    a = 2
    G = Matrix(F, [[1, a], [a, F.mul(a, a)]])
    assert G.rank() == 1
    assert vectors_rank(F, [[1, 0], [0, 1], [1, 1]]) == 2


def test_json_round_trip_and_errors():
    G = catalog.dss_matrix().relabel(list("abcdefghi"))
    assert Matrix.from_json(G.to_json()) == G
    with pytest.raises(ParseError):
        Matrix.from_json({"field": {"p": 3}, "rows": 2, "cols": 2, "entries": [[1, 0]]})
    with pytest.raises(SpecMismatch):
        catalog.dss_matrix().matmul(Matrix.identity(gf(5), 9))


def test_hstack_vstack():
    F = gf(3)
    A = Matrix.identity(F, 2)
    B = Matrix.identity(F, 2, labels=[3, 4])
    assert A.hstack(B).shape == (2, 4)
    assert A.vstack(A).rank() == 2
