"""Matroids given by a rank oracle, with their standard realizations and operations.

Subsets are handled internally as bitmasks over the ground tuple (bit i is
``ground[i]``); the public methods accept any iterable of labels.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .errors import (
    BadParams,
    GroundTooLarge,
    LabelCollision,
    NotAForest,
    NotARelaxableCircuit,
    ParseError,
    UnknownElement,
)
from .gf import FieldSpec
from .linalg import Matrix, vectors_rank

EXHAUSTIVE_LIMIT = 16


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class Matroid:
    """A matroid ``(rho, E)`` on an ordered ground set.

    ``rank_mask`` maps a bitmask over ``ground`` to an integer. Results are
    memoised per instance; the memo is filled idempotently, so concurrent
    readers only ever observe correct values.
    """

    def __init__(self, ground: Sequence[Hashable], rank_mask: Callable[[int], int], realization=("oracle", None)):
        self.ground = tuple(ground)
        if len(set(self.ground)) != len(self.ground):
            raise LabelCollision("ground set labels must be distinct")
        self._index = {e: i for i, e in enumerate(self.ground)}
        self._rank_mask = rank_mask
        self._memo: dict[int, int] = {}
        self.realization = realization

    @classmethod
    def from_rank_function(cls, ground: Sequence[Hashable], rank: Callable[[frozenset], int]) -> "Matroid":
        """Wrap a rank function on frozensets of labels (not validated; see check_axioms)."""
        ground = tuple(ground)

        def rank_mask(mask):
            return rank(frozenset(ground[i] for i in bits(mask)))

        return cls(ground, rank_mask, ("oracle", None))

    # -- subsets ---------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    def mask(self, X: Iterable) -> int:
        m = 0
        for x in X:
            try:
                m |= 1 << self._index[x]
            except KeyError:
                raise UnknownElement(f"{x!r} is not in the ground set") from None
        return m

    def labels(self, mask: int) -> frozenset:
        return frozenset(self.ground[i] for i in bits(mask))

    def sorted_labels(self, X: Iterable) -> list:
        """Labels of X in ground order."""
        return [self.ground[i] for i in bits(self.mask(X))]

    # -- rank ------------------------------------------------------------------

    def rank_of_mask(self, mask: int) -> int:
        r = self._memo.get(mask)
        if r is None:
            r = self._rank_mask(mask)
            self._memo[mask] = r
        return r

    def rank(self, X: Iterable | None = None) -> int:
        return self.rank_of_mask(self.full if X is None else self.mask(X))

    def nullity(self, X: Iterable | None = None) -> int:
        m = self.full if X is None else self.mask(X)
        return m.bit_count() - self.rank_of_mask(m)

    def is_independent(self, X: Iterable) -> bool:
        m = self.mask(X)
        return self.rank_of_mask(m) == m.bit_count()

    # -- closure / cyclic core -------------------------------------------------

    def closure_mask(self, mask: int) -> int:
        r = self.rank_of_mask(mask)
        out = mask
        for i in range(self.n):
            b = 1 << i
            if not mask & b and self.rank_of_mask(mask | b) == r:
                out |= b
        return out

    def cyclic_core_mask(self, mask: int) -> int:
        r = self.rank_of_mask(mask)
        out = 0
        for i in bits(mask):
            if self.rank_of_mask(mask ^ (1 << i)) == r:
                out |= 1 << i
        return out

    def closure(self, X: Iterable) -> frozenset:
        return self.labels(self.closure_mask(self.mask(X)))

    def cyclic_core(self, X: Iterable) -> frozenset:
        return self.labels(self.cyclic_core_mask(self.mask(X)))

    def is_flat_mask(self, mask: int) -> bool:
        return self.closure_mask(mask) == mask

    def is_cyclic_mask(self, mask: int) -> bool:
        return self.cyclic_core_mask(mask) == mask

    def is_cyclic_flat(self, X: Iterable) -> bool:
        m = self.mask(X)
        return self.is_cyclic_mask(m) and self.is_flat_mask(m)

    # -- enumeration -----------------------------------------------------------

    def _require_small(self, limit: int = 24):
        if self.n > limit:
            raise GroundTooLarge(f"{self.n} elements exceeds the exhaustive limit {limit}")

    def circuits(self) -> list[frozenset]:
        self._require_small()
        out = []
        for mask in range(1, self.full + 1):
            size = mask.bit_count()
            if self.rank_of_mask(mask) == size - 1 and all(
                self.rank_of_mask(mask ^ (1 << i)) == size - 1 for i in bits(mask)
            ):
                out.append(mask)
        out.sort(key=lambda m: (m.bit_count(), _mask_key(m)))
        return [self.labels(m) for m in out]

    def bases(self) -> list[frozenset]:
        self._require_small()
        k = self.rank()
        out = []
        for combo in itertools.combinations(range(self.n), k):
            m = sum(1 << i for i in combo)
            if self.rank_of_mask(m) == k:
                out.append(self.labels(m))
        return out

    def independent_sets(self) -> list[frozenset]:
        self._require_small()
        return [self.labels(m) for m in range(self.full + 1) if self.rank_of_mask(m) == m.bit_count()]

    # -- comparison ------------------------------------------------------------

    def first_difference(self, other: "Matroid"):
        """A subset on which the two rank functions disagree, or None if equal.

        Refuses (GroundTooLarge) above 16 elements rather than sampling.
        """
        if set(self.ground) != set(other.ground):
            return "ground sets differ"
        if self.n > EXHAUSTIVE_LIMIT:
            raise GroundTooLarge("matroid equality is only decided exhaustively (<= 16 elements)")
        remap = [1 << other._index[e] for e in self.ground]
        for mask in range(self.full + 1):
            om = 0
            for i in bits(mask):
                om |= remap[i]
            if self.rank_of_mask(mask) != other.rank_of_mask(om):
                return self.labels(mask)
        return None

    def equals(self, other: "Matroid") -> bool:
        return self.first_difference(other) is None

    def __repr__(self):
        return f"<Matroid {self.realization[0]} n={self.n} rank={self.rank()}>"

    # -- JSON --------------------------------------------------------------------

    def to_json(self) -> dict:
        return {"ground": list(self.ground), "realization": _realization_json(self)}


def _mask_key(mask: int) -> tuple:
    return tuple(bits(mask))


def _subset_map(parent: Matroid, child_ground: Sequence) -> list[int]:
    return [1 << parent._index[e] for e in child_ground]


def _lift(mask: int, table: list[int]) -> int:
    out = 0
    for i in bits(mask):
        out |= table[i]
    return out


# --- realizations ----------------------------------------------------------------


def from_matrix(G: Matrix) -> Matroid:
    cols = G.columns
    spec = G.spec

    def rank_mask(mask):
        return vectors_rank(spec, (cols[i] for i in bits(mask)))

    return Matroid(G.labels, rank_mask, ("linear", G))


def uniform(n: int, k: int, labels: Sequence | None = None) -> Matroid:
    if not 0 <= k <= n:
        raise BadParams(f"uniform matroid needs 0 <= k <= n, got n={n}, k={k}")
    ground = tuple(labels) if labels is not None else tuple(range(1, n + 1))
    if len(ground) != n:
        raise BadParams("label count differs from n")
    return Matroid(ground, lambda m: min(m.bit_count(), k), ("uniform", (n, k)))


def free_matroid(labels: Sequence) -> Matroid:
    return uniform(len(labels), len(labels), labels)


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph; ``edges`` is a sequence of ``(label, (u, v))``."""

    vertices: tuple
    edges: tuple

    def __init__(self, vertices: Iterable, edges: Iterable):
        verts = tuple(vertices)
        es = tuple((lab, (u, v)) for lab, (u, v) in edges)
        vs = set(verts)
        labs = [lab for lab, _ in es]
        if len(set(labs)) != len(labs):
            raise LabelCollision("edge labels must be distinct")
        for lab, (u, v) in es:
            if u not in vs or v not in vs:
                raise BadParams(f"edge {lab!r} has an endpoint outside the vertex set")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", es)

    @property
    def edge_labels(self) -> tuple:
        return tuple(lab for lab, _ in self.edges)

    def endpoints(self, label) -> tuple:
        for lab, uv in self.edges:
            if lab == label:
                return uv
        raise UnknownElement(f"no edge {label!r}")

    def contract(self, label) -> "Graph":
        """Delete edge ``label`` and identify its endpoints (u absorbs v)."""
        u, v = self.endpoints(label)
        verts = [x for x in self.vertices if x != v or u == v]
        edges = []
        for lab, (a, b) in self.edges:
            if lab == label:
                continue
            edges.append((lab, (u if a == v else a, u if b == v else b)))
        return Graph(verts, edges)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [[lab, [u, v]] for lab, (u, v) in self.edges]}

    @classmethod
    def from_json(cls, obj) -> "Graph":
        try:
            return cls([_hashable(v) for v in obj["vertices"]],
                       [(_hashable(lab), (_hashable(u), _hashable(v))) for lab, (u, v) in obj["edges"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad graph JSON: {exc}") from exc

    def to_dot(self) -> str:
        lines = ["graph G {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for lab, (u, v) in self.edges:
            lines.append(f'  "{u}" -- "{v}" [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Digraph:
    vertices: tuple
    arcs: tuple

    def __init__(self, vertices: Iterable, arcs: Iterable):
        verts = tuple(vertices)
        vs = set(verts)
        if len(vs) != len(verts):
            raise LabelCollision("vertex labels must be distinct")
        seen = []
        for u, v in arcs:
            if u not in vs or v not in vs:
                raise BadParams(f"arc ({u!r}, {v!r}) leaves the vertex set")
            if (u, v) not in seen:
                seen.append((u, v))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arcs", tuple(seen))

    def successors(self) -> dict:
        out = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            out[u].append(v)
        return out

    def to_json(self) -> dict:
        return {"vertices": [_jsonable(v) for v in self.vertices],
                "arcs": [[_jsonable(u), _jsonable(v)] for u, v in self.arcs]}

    @classmethod
    def from_json(cls, obj) -> "Digraph":
        try:
            return cls([_hashable(v) for v in obj["vertices"]],
                       [(_hashable(u), _hashable(v)) for u, v in obj["arcs"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad digraph JSON: {exc}") from exc

    def to_dot(self, layers: Sequence[Iterable] = ()) -> str:
        lines = ["digraph G {", "  rankdir=BT;"]
        for layer in layers:
            lines.append("  { rank=same; " + " ".join(f'"{_vertex_name(v)}";' for v in layer) + " }")
        for v in self.vertices:
            lines.append(f'  "{_vertex_name(v)}";')
        for u, v in self.arcs:
            lines.append(f'  "{_vertex_name(u)}" -> "{_vertex_name(v)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _vertex_name(v) -> str:
    if isinstance(v, tuple):
        return ":".join(str(x) for x in v)
    return str(v)


def _hashable(x):
    if isinstance(x, list):
        return tuple(_hashable(y) for y in x)
    return x


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


def _graph_rank(vertex_index: dict, ends: list[tuple[int, int]]) -> Callable[[int], int]:
    def rank_mask(mask):
        parent = list(range(len(vertex_index)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        r = 0
        for i in bits(mask):
            a, b = ends[i]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                r += 1
        return r

    return rank_mask


def from_graph(graph: Graph) -> Matroid:
    vidx = {v: i for i, v in enumerate(graph.vertices)}
    ends = [(vidx[u], vidx[v]) for _, (u, v) in graph.edges]
    return Matroid(graph.edge_labels, _graph_rank(vidx, ends), ("graphic", graph))


def spanning_forest(graph: Graph) -> list:
    """Greedy spanning forest taking edges in increasing label order."""
    vidx = {v: i for i, v in enumerate(graph.vertices)}
    parent = list(range(len(vidx)))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    forest = []
    for lab, (u, v) in sorted(graph.edges, key=lambda e: _sort_key(e[0])):
        ru, rv = find(vidx[u]), find(vidx[v])
        if ru != rv:
            parent[ru] = rv
            forest.append(lab)
    return forest


def _sort_key(x):
    return (0, x, "") if isinstance(x, (int, float)) else (1, 0, str(x))


def graph_representation(graph: Graph, spec: FieldSpec, forest: Sequence | None = None) -> Matrix:
    """Signed path matrix: rows indexed by a spanning forest T, columns by edges.

    Each edge (u, v) is oriented u -> v; entry (e, uv) is +1/-1 when the
    forest path from u to v traverses e forwards/backwards.
    """
    if forest is None:
        forest = spanning_forest(graph)
    forest = list(forest)
    M = from_graph(graph)
    for e in forest:
        M.mask([e])
    if M.rank(forest) != len(forest):
        raise NotAForest(f"{forest} contains a cycle")
    if M.rank(forest) != M.rank():
        raise BadParams(f"{forest} does not span the graph")

    adj: dict = {v: [] for v in graph.vertices}
    for lab in forest:
        u, v = graph.endpoints(lab)
        adj[u].append((v, lab, 1))
        adj[v].append((u, lab, -1))

    def path(u, v):
        prev = {u: None}
        queue = deque([u])
        while queue:
            a = queue.popleft()
            if a == v:
                break
            for b, lab, sign in adj[a]:
                if b not in prev:
                    prev[b] = (a, lab, sign)
                    queue.append(b)
        steps = {}
        a = v
        while prev[a] is not None:
            a0, lab, sign = prev[a]
            steps[lab] = sign
            a = a0
        return steps

    row_of = {lab: i for i, lab in enumerate(forest)}
    data = [[0] * len(graph.edges) for _ in forest]
    for j, (lab, (u, v)) in enumerate(graph.edges):
        if u == v:
            continue
        for e, sign in path(u, v).items():
            data[row_of[e]][j] = spec.from_int(sign)
    return Matrix(spec, data, graph.edge_labels, cols=len(graph.edges))


def _max_disjoint_paths(succ: dict, sources: list, sinks: set) -> int:
    """Maximum number of fully vertex-disjoint paths from ``sources`` to ``sinks``.

    Unit vertex capacities via vertex splitting; augmenting paths are found by
    BFS over the residual network with a fixed neighbour order.
    """
    S, T = ("__src__",), ("__snk__",)
    cap: dict = {}

    def arc(a, b):
        cap.setdefault(a, {})
        cap.setdefault(b, {})
        cap[a][b] = cap[a].get(b, 0) + 1
        cap[b].setdefault(a, 0)

    for v, outs in succ.items():
        arc(("in", v), ("out", v))
        for w in outs:
            arc(("out", v), ("in", w))
    for x in sources:
        arc(S, ("in", x))
    for t in sinks:
        arc(("out", t), T)
    if S not in cap or T not in cap:
        return 0

    flow = 0
    while True:
        prev = {S: None}
        queue = deque([S])
        while queue and T not in prev:
            a = queue.popleft()
            for b, c in cap[a].items():
                if c > 0 and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if T not in prev:
            return flow
        b = T
        while prev[b] is not None:
            a = prev[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1


def from_gammoid(digraph: Digraph, E: Iterable, T: Iterable) -> Matroid:
    """Gammoid M(digraph, E, T): rho(X) = max number of disjoint X -> T paths."""
    E = tuple(E)
    T = set(T)
    verts = set(digraph.vertices)
    if not set(E) <= verts or not T <= verts:
        raise BadParams("E and T must be vertex subsets")
    succ = digraph.successors()

    def rank_mask(mask):
        return _max_disjoint_paths(succ, [E[i] for i in bits(mask)], T)

    return Matroid(E, rank_mask, ("gammoid", (digraph, E, tuple(sorted(T, key=_sort_key)))))


# --- operations ----------------------------------------------------------------


def restriction(M: Matroid, X: Iterable) -> Matroid:
    """M|X on the elements of X (kept in M's ground order)."""
    keep = M.mask(X)
    ground = [M.ground[i] for i in bits(keep)]
    table = _subset_map(M, ground)
    return Matroid(ground, lambda m: M.rank_of_mask(_lift(m, table)), ("derived", ("restriction", (M,), ground)))


def deletion(M: Matroid, X: Iterable) -> Matroid:
    return restriction(M, M.labels(M.full & ~M.mask(X)))


def contraction(M: Matroid, X: Iterable) -> Matroid:
    """M/X: rho'(Y) = rho(Y u X) - rho(X) on E minus X."""
    xm = M.mask(X)
    rx = M.rank_of_mask(xm)
    ground = [M.ground[i] for i in bits(M.full & ~xm)]
    table = _subset_map(M, ground)
    return Matroid(ground, lambda m: M.rank_of_mask(_lift(m, table) | xm) - rx,
                   ("derived", ("contraction", (M,), sorted(M.labels(xm), key=_sort_key))))


def dual(M: Matroid) -> Matroid:
    full = M.full
    rE = M.rank()
    return Matroid(M.ground, lambda m: m.bit_count() + M.rank_of_mask(full & ~m) - rE,
                   ("derived", ("dual", (M,), None)))


def truncation(M: Matroid, k: int) -> Matroid:
    if not 0 <= k <= M.rank():
        raise BadParams(f"truncation rank must lie in [0, {M.rank()}], got {k}")
    return Matroid(M.ground, lambda m: min(M.rank_of_mask(m), k), ("derived", ("truncation", (M,), k)))


def direct_sum(M: Matroid, N: Matroid, prefix: bool = True) -> Matroid:
    """M (+) N. With ``prefix`` the labels become "L.x" / "R.y"."""
    if prefix:
        left = [f"L.{x}" for x in M.ground]
        right = [f"R.{y}" for y in N.ground]
    else:
        clash = set(M.ground) & set(N.ground)
        if clash:
            raise LabelCollision(f"ground sets share {sorted(clash, key=_sort_key)}")
        left, right = list(M.ground), list(N.ground)
    shift = M.n
    lo = M.full

    def rank_mask(m):
        return M.rank_of_mask(m & lo) + N.rank_of_mask(m >> shift)

    return Matroid(left + right, rank_mask, ("derived", ("direct_sum", (M, N), prefix)))


def relaxation(M: Matroid, C: Iterable) -> Matroid:
    """Relax a circuit C of rank rho(E) - 1 that is also closed (a circuit-hyperplane)."""
    cm = M.mask(C)
    size = cm.bit_count()
    rE = M.rank()
    is_circuit = size > 0 and M.rank_of_mask(cm) == size - 1 and all(
        M.rank_of_mask(cm ^ (1 << i)) == size - 1 for i in bits(cm))
    if not is_circuit:
        raise NotARelaxableCircuit(f"{sorted(M.labels(cm), key=_sort_key)} is not a circuit")
    if M.rank_of_mask(cm) != rE - 1:
        raise NotARelaxableCircuit(f"circuit has rank {M.rank_of_mask(cm)}, need {rE - 1}")
    if M.closure_mask(cm) != cm:
        raise NotARelaxableCircuit("circuit is not closed; relaxing it would break augmentation")

    def rank_mask(m):
        r = M.rank_of_mask(m)
        return r + 1 if m == cm else r

    return Matroid(M.ground, rank_mask, ("derived", ("relaxation", (M,), sorted(M.labels(cm), key=_sort_key))))


# --- axioms -------------------------------------------------------------------------


@dataclass
class AxiomResult:
    name: str
    ok: bool
    witness: object = None
    checked: str = "exhaustive"

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, (frozenset, set)):
            w = sorted(w, key=_sort_key)
        elif isinstance(w, tuple):
            w = [sorted(x, key=_sort_key) if isinstance(x, frozenset) else x for x in w]
        return {"axiom": self.name, "ok": self.ok, "witness": w, "checked": self.checked}


@dataclass
class AxiomReport:
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def __getitem__(self, name) -> AxiomResult:
        return next(r for r in self.results if r.name == name)

    def to_json(self) -> dict:
        return {"ok": self.ok, "axioms": [r.to_json() for r in self.results]}


def check_axioms(M: Matroid, samples: int = 2000, seed: int = 0, independence_limit: int = 10) -> AxiomReport:
    """Check (R.1)-(R.3) and (I.1)-(I.3).

    Exhaustive up to 16 elements (local forms of monotonicity and
    submodularity, which are equivalent to the global ones); random sampling
    beyond. The pairwise augmentation check (I.3) is exhaustive only up to
    ``independence_limit`` elements.
    """
    n = M.n
    rank = M.rank_of_mask
    report = AxiomReport()
    exhaustive = n <= EXHAUSTIVE_LIMIT
    rng = random.Random(seed)
    if exhaustive:
        masks = range(M.full + 1)
        how = "exhaustive"
    else:
        masks = [rng.getrandbits(n) for _ in range(samples)]
        how = f"sampled({samples})"

    # R.1
    bad = next((m for m in masks if not 0 <= rank(m) <= m.bit_count()), None)
    report.results.append(AxiomResult("R.1", bad is None, None if bad is None else M.labels(bad), how))
    # R.2: rho(X) <= rho(X + y)
    bad = None
    for m in masks:
        r = rank(m)
        for i in range(n):
            b = 1 << i
            if not m & b and rank(m | b) < r:
                bad = (M.labels(m), M.labels(m | b))
                break
        if bad:
            break
    report.results.append(AxiomResult("R.2", bad is None, bad, how))
    # R.3 (local form): rho(X+a) + rho(X+b) >= rho(X+a+b) + rho(X)
    bad = None
    for m in masks:
        r = rank(m)
        outside = [1 << i for i in range(n) if not m >> i & 1]
        for a, b in itertools.combinations(outside, 2):
            if rank(m | a) + rank(m | b) < rank(m | a | b) + r:
                bad = (M.labels(m | a), M.labels(m | b))
                break
        if bad:
            break
    report.results.append(AxiomResult("R.3", bad is None, bad, how))

    # independence axioms for I = {X : rho(X) = |X|}
    def indep(m):
        return rank(m) == m.bit_count()

    report.results.append(AxiomResult("I.1", indep(0), None if indep(0) else frozenset(), "exhaustive"))
    bad = None
    for m in masks:
        if indep(m):
            for i in bits(m):
                if not indep(m ^ (1 << i)):
                    bad = (M.labels(m), M.labels(m ^ (1 << i)))
                    break
        if bad:
            break
    report.results.append(AxiomResult("I.2", bad is None, bad, how))
    bad = None
    if n <= independence_limit:
        by_size: dict[int, list[int]] = {}
        for m in range(M.full + 1):
            if indep(m):
                by_size.setdefault(m.bit_count(), []).append(m)
        for s, small in sorted(by_size.items()):
            for X in small:
                for Y in by_size.get(s + 1, []):
                    if not any(indep(X | (1 << i)) for i in bits(Y & ~X)):
                        bad = (M.labels(X), M.labels(Y))
                        break
                if bad:
                    break
            if bad:
                break
        how3 = "exhaustive"
    else:
        for _ in range(samples):
            Y = rng.getrandbits(n)
            if not indep(Y) or Y == 0:
                continue
            X = Y & rng.getrandbits(n)
            X ^= X & (1 << next(bits(Y))) if X == Y else 0
            extra = rng.getrandbits(n) & ~Y
            X |= extra
            if not indep(X) or X.bit_count() >= Y.bit_count():
                continue
            if not any(indep(X | (1 << i)) for i in bits(Y & ~X)):
                bad = (M.labels(X), M.labels(Y))
                break
        how3 = f"sampled({samples})"
    report.results.append(AxiomResult("I.3", bad is None, bad, how3))
    return report


# --- JSON exchange ---------------------------------------------------------------


def _realization_json(M: Matroid) -> dict:
    tag, payload = M.realization
    if tag == "linear":
        return {"type": "linear", "matrix": payload.to_json()}
    if tag == "uniform":
        return {"type": "uniform", "n": payload[0], "k": payload[1]}
    if tag == "graphic":
        return {"type": "graphic", "graph": payload.to_json()}
    if tag == "gammoid":
        dg, E, T = payload
        return {"type": "gammoid", "digraph": dg.to_json(), "E": [_jsonable(e) for e in E],
                "T": [_jsonable(t) for t in T]}
    if tag == "cyclic_flats":
        return {"type": "cyclic_flats", "lattice": payload.to_json()}
    if tag == "derived":
        op, parents, args = payload
        return {"type": "derived", "op": op, "parents": [p.to_json() for p in parents], "args": _jsonable(args)}
    raise ParseError(f"matroid realization {tag!r} has no JSON form")


def matroid_from_json(obj) -> Matroid:
    try:
        real = obj["realization"]
        kind = real["type"]
        ground = [_hashable(g) for g in obj.get("ground", [])]
        if kind == "linear":
            return from_matrix(Matrix.from_json(real["matrix"]))
        if kind == "uniform":
            return uniform(int(real["n"]), int(real["k"]), ground or None)
        if kind == "graphic":
            return from_graph(Graph.from_json(real["graph"]))
        if kind == "gammoid":
            return from_gammoid(Digraph.from_json(real["digraph"]), [_hashable(e) for e in real["E"]],
                                [_hashable(t) for t in real["T"]])
        if kind == "cyclic_flats":
            from .zlattice import CyclicFlatLattice, matroid_from_z

            return matroid_from_z(CyclicFlatLattice.from_json(real["lattice"]))
        if kind == "derived":
            parents = [matroid_from_json(p) for p in real["parents"]]
            op, args = real["op"], _hashable(real.get("args"))
            if op == "restriction":
                return restriction(parents[0], args)
            if op == "contraction":
                return contraction(parents[0], args)
            if op == "dual":
                return dual(parents[0])
            if op == "truncation":
                return truncation(parents[0], args)
            if op == "direct_sum":
                return direct_sum(parents[0], parents[1], bool(args))
            if op == "relaxation":
                return relaxation(parents[0], args)
            raise ParseError(f"unknown derived op {op!r}")
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad matroid JSON: {exc}") from exc
    raise ParseError(f"unknown realization type {kind!r}")
