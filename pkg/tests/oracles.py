"""Brute-force reference computations that share no code with the package.

Everything here works over prime fields with plain Python integers and
networkx, so agreement with the library is an independent check.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

import networkx as nx


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [[x % p for x in r] for r in rows if r]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def column_rank(rows: list[list[int]], p: int, cols) -> int:
    cols = list(cols)
    if not cols:
        return 0
    return rank_mod_p([[r[c] for c in cols] for r in rows], p)


def codewords_mod_p(rows: list[list[int]], p: int) -> set[tuple[int, ...]]:
    n = len(rows[0])
    words = set()
    for msg in itertools.product(range(p), repeat=len(rows)):
        words.add(tuple(sum(m * r[j] for m, r in zip(msg, rows)) % p for j in range(n)))
    return words


def min_distance_mod_p(rows: list[list[int]], p: int, cols=None) -> int:
    """Minimum nonzero weight of the code punctured to ``cols`` (0-based)."""
    cols = list(range(len(rows[0]))) if cols is None else list(cols)
    punct = [[r[c] for c in cols] for r in rows]
    words = codewords_mod_p(punct, p)
    return min(sum(1 for x in w if x) for w in words if any(w))


def graph_rank(edges: list[tuple], subset) -> int:
    """|V(X)| - #components of the edge subgraph, via networkx."""
    g = nx.MultiGraph()
    for lab in subset:
        u, v = edges[lab]
        g.add_edge(u, v)
    if g.number_of_nodes() == 0:
        return 0
    return g.number_of_nodes() - nx.number_connected_components(g)


def gammoid_rank(arcs, X, T) -> int:
    """Maximum number of vertex-disjoint X-T paths via node-split max flow."""
    g = nx.DiGraph()
    verts = {u for a in arcs for u in a} | set(X) | set(T)
    for v in verts:
        g.add_edge(("in", v), ("out", v), capacity=1)
    for u, v in arcs:
        g.add_edge(("out", u), ("in", v), capacity=1)
    for x in X:
        g.add_edge("S", ("in", x), capacity=1)
    for t in T:
        g.add_edge(("out", t), "T", capacity=1)
    if not X or not T:
        return 0
    return int(nx.maximum_flow_value(g, "S", "T"))


def entropy_rank(words, idx, s) -> float:
    counts = Counter(tuple(w[i] for i in idx) for w in words)
    total = len(words)
    return sum(c / total * math.log(total / c, s) for c in counts.values())


def drop_set_distance(rank, ground) -> int:
    """Smallest |Y| with rank(E - Y) < rank(E), for any rank oracle on frozensets."""
    E = frozenset(ground)
    full = rank(E)
    for size in range(1, len(E) + 1):
        for Y in itertools.combinations(sorted(E), size):
            if rank(E - set(Y)) < full:
                return size
    raise ValueError("rank-0 object")
