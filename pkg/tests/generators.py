"""Seeded random matroids for property tests, each with a reference rank oracle."""

from __future__ import annotations

import random

from matroid_lrc.gf import gf
from matroid_lrc.linalg import Matrix
from matroid_lrc.matroid import Digraph, Graph, from_gammoid, from_graph, from_matrix

from oracles import column_rank, gammoid_rank, graph_rank


def random_linear(rng: random.Random, n: int | None = None):
    p = rng.choice([2, 3, 5])
    n = n or rng.randint(3, 10)
    k = rng.randint(1, min(5, n))
    data = [[rng.randrange(p) for _ in range(n)] for _ in range(k)]
    M = from_matrix(Matrix(gf(p), data, cols=n))

    def ref(X):
        return column_rank(data, p, [x - 1 for x in X])

    return M, ref, f"GF({p}) {k}x{n}"


def random_graphic(rng: random.Random):
    nv = rng.randint(2, 6)
    n = rng.randint(3, 10)
    edges = {lab: (rng.randrange(nv), rng.randrange(nv)) for lab in range(1, n + 1)}
    M = from_graph(Graph(range(nv), list(edges.items())))
    return M, (lambda X: graph_rank(edges, X)), f"graph {nv}v {n}e"


def random_gammoid(rng: random.Random):
    n = rng.randint(3, 8)
    E = [f"e{i}" for i in range(n)]
    mid = [f"h{i}" for i in range(rng.randint(1, 4))]
    T = [f"t{i}" for i in range(rng.randint(1, 4))]
    arcs = set()
    for u in E + mid:
        for v in mid + T:
            if u != v and rng.random() < 0.35:
                arcs.add((u, v))
    arcs = sorted(arcs)
    dg = Digraph(E + mid + T, arcs)
    M = from_gammoid(dg, E, T)
    return M, (lambda X: gammoid_rank(arcs, X, T)), f"gammoid |E|={n}"


def random_matroid(rng: random.Random):
    kind = rng.choice([random_linear, random_linear, random_graphic, random_gammoid])
    return kind(rng)
