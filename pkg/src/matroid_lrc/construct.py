"""Constructions of locally repairable codes: matroids from repair-set systems
(with their gammoid digraph and a verified linear representation),
evaluation codes on additive cosets, and random codes."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .codes import LinearCode
from .errors import (
    BadParams,
    ConditionViolated,
    DivisibilityViolated,
    OutsideP,
    ParseError,
    RepresentationNotFound,
    SubgroupUnavailable,
)
from .gf import FieldSpec, gf
from .linalg import Matrix, vectors_rank
from .lrc import d_max_lower_bound, in_region_p
from .matroid import Digraph, Matroid, _hashable, _jsonable, direct_sum, from_gammoid, from_matrix, truncation, uniform
from .zlattice import CyclicFlatLattice, matroid_from_z

# --- repair-set systems ------------------------------------------------------------


class RepairSetSystem:
    """Sets F_1..F_m covering E with assigned ranks rho(F_i) and rho(E).

    Construction validates conditions (i)-(iv) and raises ConditionViolated
    naming the first one that fails.
    """

    def __init__(self, sets: Sequence[tuple[Iterable, int]], rank_E: int, E: Sequence | None = None):
        self.sets = [frozenset(F) for F, _ in sets]
        self.ranks = [int(r) for _, r in sets]
        self.rank_E = int(rank_E)
        union = frozenset().union(*self.sets) if self.sets else frozenset()
        if E is None:
            E = sorted(union, key=_order_key)
        self.E = tuple(E)
        if frozenset(self.E) != union:
            raise BadParams("E must be the union of the repair sets")
        if not self.sets:
            raise BadParams("at least one repair set is needed")
        self._validate()

    @property
    def m(self) -> int:
        return len(self.sets)

    def eta(self, i: int) -> int:
        return len(self.sets[i]) - self.ranks[i]

    def s(self, x) -> frozenset:
        """Indices (1-based) of the repair sets containing x."""
        return frozenset(i + 1 for i, F in enumerate(self.sets) if x in F)

    def _validate(self):
        for i, (F, r) in enumerate(zip(self.sets, self.ranks), start=1):
            if not 0 < r < len(F):
                raise ConditionViolated("i", f"F_{i} has rank {r} but needs 0 < rank < |F_{i}| = {len(F)}")
        for i, r in enumerate(self.ranks, start=1):
            if not r < self.rank_E:
                raise ConditionViolated("ii", f"rank(F_{i}) = {r} is not below rank(E) = {self.rank_E}")
        total_eta = sum(self.eta(i) for i in range(self.m))
        if self.rank_E > len(self.E) - total_eta:
            raise ConditionViolated("iii", f"rank(E) = {self.rank_E} exceeds |E| - sum of nullities = "
                                           f"{len(self.E) - total_eta}")
        for j in range(self.m):
            others = frozenset().union(*(F for i, F in enumerate(self.sets) if i != j))
            if len(others & self.sets[j]) >= self.ranks[j]:
                raise ConditionViolated("iv", f"F_{j + 1} meets the other sets in "
                                              f"{len(others & self.sets[j])} >= rank {self.ranks[j]} elements")

    def union_rank(self, I: Iterable[int]) -> int:
        """rho(F_I) = min(|F_I| - sum of eta(F_i) over I, rho(E)), with 0-based indices."""
        I = list(I)
        F = frozenset().union(*(self.sets[i] for i in I)) if I else frozenset()
        return min(len(F) - sum(self.eta(i) for i in I), self.rank_E)

    def lattice(self) -> CyclicFlatLattice:
        flats: dict[frozenset, int] = {}
        for size in range(self.m + 1):
            for I in itertools.combinations(range(self.m), size):
                rank = self.union_rank(I)
                if rank < self.rank_E:
                    F = frozenset().union(*(self.sets[i] for i in I)) if I else frozenset()
                    flats.setdefault(F, rank)
        flats[frozenset(self.E)] = self.rank_E
        return CyclicFlatLattice(self.E, list(flats.items()))

    def params(self) -> dict:
        """(n, k, d, r, delta) of the constructed matroid."""
        n, k = len(self.E), self.rank_E
        worst = 0
        for size in range(self.m + 1):
            for I in itertools.combinations(range(self.m), size):
                if self.union_rank(I) < k:
                    worst = max(worst, sum(self.eta(i) for i in I))
        return {"n": n, "k": k, "d": n - k + 1 - worst,
                "r": max(self.ranks), "delta": 1 + min(self.eta(i) for i in range(self.m))}

    def to_json(self) -> dict:
        order = {e: i for i, e in enumerate(self.E)}
        return {"E": [_jsonable(e) for e in self.E],
                "sets": [{"F": [_jsonable(e) for e in sorted(F, key=order.__getitem__)], "rank": r}
                         for F, r in zip(self.sets, self.ranks)],
                "rankE": self.rank_E}

    @classmethod
    def from_json(cls, obj) -> "RepairSetSystem":
        try:
            sets = [([_hashable(e) for e in s["F"]], int(s["rank"])) for s in obj["sets"]]
            E = [_hashable(e) for e in obj["E"]] if "E" in obj else None
            return cls(sets, int(obj["rankE"]), E)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad repair-set system JSON: {exc}") from exc


def _order_key(x):
    return (0, x, "") if isinstance(x, (int, float)) else (1, 0, str(x))


@dataclass
class ConstructedMatroid:
    system: RepairSetSystem
    matroid: Matroid
    lattice: CyclicFlatLattice
    params: dict

    @property
    def repair_sets(self) -> list[frozenset]:
        return list(self.system.sets)


def construct_matroid(system: RepairSetSystem) -> ConstructedMatroid:
    Z = system.lattice()
    return ConstructedMatroid(system, matroid_from_z(Z), Z, system.params())


# --- gammoid -------------------------------------------------------------------------


@dataclass
class GammoidGraph:
    digraph: Digraph
    E: tuple
    H: tuple
    T: tuple
    H_blocks: dict = field(default_factory=dict)

    def matroid(self) -> Matroid:
        return from_gammoid(self.digraph, self.E, self.T)

    def to_json(self) -> dict:
        return {"digraph": self.digraph.to_json(), "E": [_jsonable(e) for e in self.E],
                "H": [_jsonable(h) for h in self.H], "T": [_jsonable(t) for t in self.T]}

    def to_dot(self) -> str:
        return self.digraph.to_dot([self.E, self.H, self.T])


def gammoid_graph(system: RepairSetSystem) -> GammoidGraph:
    """Three-layer digraph E -> H -> T whose gammoid is the constructed matroid.

    H holds rho(F_i) - |{x in F_i : |s(x)| >= 2}| vertices ("H", i, c) per set
    and one vertex ("h", y) per element y lying in two or more sets; T holds
    ("T", 1) .. ("T", k).
    """
    s = {x: system.s(x) for x in system.E}
    blocks: dict = {}
    H: list = []
    for i in range(1, system.m + 1):
        shared = sum(1 for x in system.sets[i - 1] if len(s[x]) >= 2)
        count = system.ranks[i - 1] - shared
        blocks[i] = [("H", i, c) for c in range(1, count + 1)]
        H.extend(blocks[i])
    multi = [y for y in system.E if len(s[y]) >= 2]
    blocks[">=2"] = [("h", y) for y in multi]
    H.extend(blocks[">=2"])
    T = [("T", j) for j in range(1, system.rank_E + 1)]
    if set(system.E) & (set(H) | set(T)):
        raise BadParams("element labels collide with the H/T vertex names")

    arcs = []
    for x in system.E:
        if len(s[x]) == 1:
            (i,) = s[x]
            arcs.extend((x, h) for h in blocks[i])
        arcs.extend((x, ("h", y)) for y in multi if s[x] <= s[y])
    arcs.extend((h, t) for h in H for t in T)
    dg = Digraph(list(system.E) + H + T, arcs)
    return GammoidGraph(dg, tuple(system.E), tuple(H), tuple(T), blocks)


# --- linear representation ----------------------------------------------------------


@dataclass
class Representation:
    matrix: Matrix
    seed: int
    attempt: int

    @property
    def code(self) -> LinearCode:
        return LinearCode(self.matrix)


def _random_codes(rng: np.random.Generator, spec: FieldSpec, shape, nonzero: bool = False) -> np.ndarray:
    low = 1 if nonzero else 0
    return rng.integers(low, spec.q, size=shape)


def represent(system: RepairSetSystem, spec: FieldSpec, seed: int = 0, attempts: int = 10,
              target: Matroid | None = None) -> Representation:
    """A k x n matrix over ``spec`` whose matroid equals the constructed one.

    Draws random nonzero weights on the E -> H arcs (matrix A, |H| x n) and
    random H -> T weights (matrix B, k x |H|) and takes G = B A, the path-sum
    matrix of the layered digraph. Each draw is checked against the target
    matroid on every subset; up to ``attempts`` draws are made from one
    generator seeded with ``seed``.
    """
    if attempts < 1:
        raise BadParams("attempts must be at least 1")
    graph = gammoid_graph(system)
    if target is None:
        target = construct_matroid(system).matroid
    h_index = {h: i for i, h in enumerate(graph.H)}
    e_index = {e: j for j, e in enumerate(graph.E)}
    mask = np.zeros((len(graph.H), len(graph.E)), dtype=bool)
    for u, v in graph.digraph.arcs:
        if u in e_index and v in h_index:
            mask[h_index[v], e_index[u]] = True
    rng = np.random.default_rng(seed)
    k = system.rank_E
    for attempt in range(1, attempts + 1):
        A = np.where(mask, _random_codes(rng, spec, mask.shape, nonzero=True), 0)
        B = _random_codes(rng, spec, (k, len(graph.H)))
        Bm = Matrix(spec, B.tolist(), cols=len(graph.H))
        Am = Matrix(spec, A.tolist(), graph.E, cols=len(graph.E))
        G = Bm.matmul(Am)
        if from_matrix(G).equals(target):
            return Representation(G, seed, attempt)
    raise RepresentationNotFound(
        f"no verified representation over {spec!r} in {attempts} attempts; fields of size at least "
        f"2^{len(system.E)} = {2 ** len(system.E)} are guaranteed to work, so try a larger q")


# --- matroids meeting the d_max lower bound ---------------------------------------------


def locality_sizes(n: int, r: int, delta: int) -> list[int]:
    """Block sizes r+delta-1, with a smaller last block when needed."""
    s = r + delta - 1
    count = math.ceil(n / s)
    sizes = [s] * (count - 1) + [n - s * (count - 1)]
    if sizes[-1] - delta + 1 < 1:
        raise BadParams(f"last locality set of size {sizes[-1]} would have rank {sizes[-1] - delta + 1} < 1")
    return sizes


def truncated_direct_sum(n: int, k: int, r: int, delta: int) -> Matroid:
    """Truncation to rank k of a direct sum of uniform matroids U_{s_i}^{s_i-delta+1}."""
    d_max_lower_bound(n, k, r, delta)
    sizes = locality_sizes(n, r, delta)
    start = 1
    M = None
    for s in sizes:
        U = uniform(s, s - delta + 1, list(range(start, start + s)))
        M = U if M is None else direct_sum(M, U, prefix=False)
        start += s
    return truncation(M, k)


# --- evaluation codes -----------------------------------------------------------------------


@dataclass
class EvaluationCode:
    code: LinearCode
    subgroup: list
    cosets: list
    g: list
    params: dict

    def to_json(self) -> dict:
        return {"generator": self.code.to_json(), "subgroup": self.subgroup,
                "cosets": self.cosets, "g": self.g, "params": self.params}


def _poly_mul(spec: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = spec.add(out[i + j], spec.mul(x, y))
    return out


def tamo_barg(q: int, r: int, delta: int, k: int) -> EvaluationCode:
    """Evaluation code of length n = q with locality sets the cosets of an
    additive subgroup A of size r+delta-1.

    Basis functions are g(x)^j x^i (j < k/r, i < r) with g the product of
    (x - a) over A, so on each coset the code is a polynomial of degree < r.
    Coordinates are labelled 1..q; label c+1 is the field element with code c.
    """
    spec = gf(q)
    size = r + delta - 1
    if r < 1 or delta < 2 or k < 1:
        raise BadParams("need r >= 1, delta >= 2, k >= 1")
    e = 0
    while spec.p ** e < size:
        e += 1
    if spec.p ** e != size or e > spec.m:
        raise SubgroupUnavailable(f"r + delta - 1 = {size} is not a power of the characteristic {spec.p} "
                                  f"dividing q = {q}")
    if k % r:
        raise DivisibilityViolated(f"r = {r} does not divide k = {k}")
    if k > q - (delta - 1) * (k // r):
        raise BadParams(f"k = {k} exceeds n - (delta-1) k/r = {q - (delta - 1) * (k // r)}")

    A = list(range(size))  # codes below p^e span 1, x, ..., x^(e-1)
    g = [1]
    for a in A:
        g = _poly_mul(spec, g, [spec.neg(a), 1])
    points = list(range(q))
    g_at = []
    for b in points:
        v = 1
        for a in A:
            v = spec.mul(v, spec.sub(b, a))
        g_at.append(v)
    rows = []
    for j in range(k // r):
        for i in range(r):
            rows.append([spec.mul(spec.pow(g_at[c], j), spec.pow(b, i)) for c, b in enumerate(points)])
    G = Matrix(spec, rows, list(range(1, q + 1)), cols=q)
    cosets = [list(range(start + 1, start + size + 1)) for start in range(0, q, size)]
    d = q - k + 1 - (k // r - 1) * (delta - 1)
    return EvaluationCode(LinearCode(G, f"evaluation code q={q} r={r} delta={delta} k={k}"),
                          [spec.encode_entry(a) for a in A], cosets,
                          [spec.encode_entry(c) for c in g],
                          {"n": q, "k": k, "d_design": d, "r": r, "delta": delta})


# --- random codes ------------------------------------------------------------------------------


@dataclass
class RandomLRC:
    code: LinearCode
    locality_sets: list
    events_A: list
    event_B: bool
    achieved_d: int | None
    target_d: int
    seed: int

    @property
    def meets_target(self) -> bool:
        return self.achieved_d is not None and self.achieved_d >= self.target_d

    def report(self) -> dict:
        return {"seed": self.seed, "locality_sets": self.locality_sets, "events_A": self.events_A,
                "event_B": self.event_B, "achieved_d": self.achieved_d, "target_d": self.target_d,
                "meets_target": self.meets_target}


def random_lrc(n: int, k: int, r: int, delta: int, spec: FieldSpec, seed: int = 0,
               compute_distance: bool = True) -> RandomLRC:
    """Random k x n generator whose columns come in locality blocks.

    Block i (size s_i, r_i = s_i - delta + 1) has r_i uniform columns G_i
    followed by delta - 1 columns G_i v with v uniform in F^{r_i}. Event A_i:
    every r_i columns of the block are independent. Event B: G has rank k.
    """
    if not in_region_p(n, k, r, delta):
        raise OutsideP(f"(n,k,r,delta)=({n},{k},{r},{delta}) is outside P(n,k,r,delta)")
    sizes = locality_sizes(n, r, delta)
    rng = np.random.default_rng(seed)
    columns: list[list[int]] = []
    sets, events = [], []
    start = 1
    for s in sizes:
        ri = s - delta + 1
        Gi = _random_codes(rng, spec, (k, ri)).tolist()
        block = [[row[c] for row in Gi] for c in range(ri)]
        for _ in range(delta - 1):
            v = _random_codes(rng, spec, ri).tolist()
            col = []
            for row in Gi:
                acc = 0
                for a, b in zip(row, v):
                    acc = spec.add(acc, spec.mul(a, b))
                col.append(acc)
            block.append(col)
        events.append(all(vectors_rank(spec, combo) == ri for combo in itertools.combinations(block, ri)))
        columns.extend(block)
        sets.append(list(range(start, start + s)))
        start += s
    data = [[col[i] for col in columns] for i in range(k)]
    G = Matrix(spec, data, list(range(1, n + 1)), cols=n)
    code = LinearCode(G)
    event_B = code.k == k
    achieved = None
    if compute_distance and code.k > 0:
        achieved = code.distance()
    return RandomLRC(code, sets, events, event_B, achieved, d_max_lower_bound(n, k, r, delta), seed)
