"""Lattices of cyclic flats: enumeration, axiom checks, rank reconstruction and
the parameter / cyclic-set / information-set tests built on them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DegenerateLattice, GroundTooLarge, NotCyclic, ParseError, UnknownElement, ZAxiomViolation
from .matroid import Matroid, _hashable, _jsonable, bits

RAW_SCAN_LIMIT = 12
ENUMERATION_LIMIT = 24


class CyclicFlatLattice:
    """A family of subsets of ``ground`` with integer ranks, ordered by inclusion.

    Flats are kept sorted by (rank, size, ground-order position), so the
    listing and every export are deterministic.
    """

    def __init__(self, ground: Sequence, flats: Iterable[tuple[Iterable, int]]):
        self.ground = tuple(ground)
        self._index = {e: i for i, e in enumerate(self.ground)}
        seen: dict[int, int] = {}
        for X, r in flats:
            m = self.mask(X)
            if m in seen and seen[m] != r:
                raise ZAxiomViolation(f"{self._fmt(m)} listed with ranks {seen[m]} and {r}")
            seen[m] = int(r)
        self._masks = sorted(seen, key=lambda m: (seen[m], m.bit_count(), tuple(bits(m))))
        self._rank = seen
        self._hasse = None

    # -- basic access ----------------------------------------------------------

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

    def ordered(self, mask: int) -> list:
        return [self.ground[i] for i in bits(mask)]

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    @property
    def masks(self) -> list[int]:
        return list(self._masks)

    @property
    def flats(self) -> list[tuple[frozenset, int]]:
        return [(self.labels(m), self._rank[m]) for m in self._masks]

    def rank_of_flat(self, X: Iterable) -> int:
        m = self.mask(X)
        if m not in self._rank:
            raise KeyError(f"{self._fmt(m)} is not in the lattice")
        return self._rank[m]

    def __len__(self):
        return len(self._masks)

    def __contains__(self, X) -> bool:
        return self.mask(X) in self._rank

    def __eq__(self, other):
        return (isinstance(other, CyclicFlatLattice) and set(self.ground) == set(other.ground)
                and {(self.labels(m), r) for m, r in self._rank.items()}
                == {(other.labels(m), r) for m, r in other._rank.items()})

    def __repr__(self):
        return f"<CyclicFlatLattice |E|={len(self.ground)} |Z|={len(self)}>"

    def _fmt(self, mask: int) -> str:
        return "{" + ",".join(str(x) for x in self.ordered(mask)) + "}"

    # -- lattice structure -------------------------------------------------------

    def _minimal(self, ms: list[int]) -> list[int]:
        return [a for a in ms if not any(b != a and b & a == b for b in ms)]

    def _maximal(self, ms: list[int]) -> list[int]:
        return [a for a in ms if not any(b != a and a & b == a for b in ms)]

    def _join_mask(self, a: int, b: int) -> int | None:
        ups = self._minimal([m for m in self._masks if m & (a | b) == (a | b)])
        return ups[0] if len(ups) == 1 else None

    def _meet_mask(self, a: int, b: int) -> int | None:
        downs = self._maximal([m for m in self._masks if m & (a & b) == m])
        return downs[0] if len(downs) == 1 else None

    def join(self, X: Iterable, Y: Iterable) -> frozenset:
        m = self._join_mask(self.mask(X), self.mask(Y))
        if m is None:
            raise ZAxiomViolation("no least upper bound")
        return self.labels(m)

    def meet(self, X: Iterable, Y: Iterable) -> frozenset:
        m = self._meet_mask(self.mask(X), self.mask(Y))
        if m is None:
            raise ZAxiomViolation("no greatest lower bound")
        return self.labels(m)

    def _bottom_mask(self) -> int | None:
        mins = self._minimal(self._masks)
        return mins[0] if len(mins) == 1 else None

    def _top_mask(self) -> int | None:
        maxs = self._maximal(self._masks)
        return maxs[0] if len(maxs) == 1 else None

    @property
    def bottom(self) -> frozenset:
        m = self._bottom_mask()
        if m is None:
            raise ZAxiomViolation("no bottom element")
        return self.labels(m)

    @property
    def top(self) -> frozenset:
        m = self._top_mask()
        if m is None:
            raise ZAxiomViolation("no top element")
        return self.labels(m)

    def hasse(self) -> list[tuple[frozenset, frozenset]]:
        """Covering pairs (lower, upper), in flat order."""
        if self._hasse is None:
            edges = []
            for hi in self._masks:
                below = [lo for lo in self._masks if lo != hi and lo & hi == lo]
                for lo in self._maximal(below):
                    edges.append((lo, hi))
            order = {m: i for i, m in enumerate(self._masks)}
            edges.sort(key=lambda e: (order[e[0]], order[e[1]]))
            self._hasse = edges
        return [(self.labels(a), self.labels(b)) for a, b in self._hasse]

    # -- export ----------------------------------------------------------------------

    def node_label(self, X: Iterable) -> str:
        m = self.mask(X)
        body = "∅" if m == 0 else self._fmt(m)
        return f"({body},{self._rank[m]})"

    def to_dot(self) -> str:
        lines = ["digraph Z {", "  rankdir=BT;", "  node [shape=box];"]
        names = {m: f"n{i}" for i, m in enumerate(self._masks)}
        for m in self._masks:
            lines.append(f'  {names[m]} [label="{self.node_label(self.labels(m))}"];')
        by_rank: dict[int, list[int]] = {}
        for m in self._masks:
            by_rank.setdefault(self._rank[m], []).append(m)
        for r in sorted(by_rank):
            lines.append("  { rank=same; " + " ".join(names[m] for m in by_rank[r]) + " }")
        self.hasse()
        for lo, hi in self._hasse:
            lines.append(f"  {names[lo]} -> {names[hi]} [dir=none];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        return "\n".join(self.node_label(self.labels(m)) for m in self._masks) + "\n"

    def to_json(self) -> dict:
        return {
            "ground": [_jsonable(x) for x in self.ground],
            "flats": [{"set": [_jsonable(x) for x in self.ordered(m)], "rank": self._rank[m]} for m in self._masks],
        }

    @classmethod
    def from_json(cls, obj) -> "CyclicFlatLattice":
        try:
            ground = [_hashable(x) for x in obj["ground"]]
            flats = [([_hashable(x) for x in f["set"]], int(f["rank"])) for f in obj["flats"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad lattice JSON: {exc}") from exc
        return cls(ground, flats)


# --- enumeration ----------------------------------------------------------------


def _is_cyclic_flat_mask(M: Matroid, m: int) -> bool:
    r = M.rank_of_mask(m)
    for i in range(M.n):
        b = 1 << i
        if m & b:
            if M.rank_of_mask(m ^ b) != r:
                return False
        elif M.rank_of_mask(m | b) == r:
            return False
    return True


def _flats_bfs(M: Matroid) -> list[int]:
    start = M.closure_mask(0)
    seen = {start}
    queue = deque([start])
    while queue:
        F = queue.popleft()
        for i in range(M.n):
            if not F >> i & 1:
                G = M.closure_mask(F | (1 << i))
                if G not in seen:
                    seen.add(G)
                    queue.append(G)
    return list(seen)


def cyclic_flats(M: Matroid) -> CyclicFlatLattice:
    """All cyclic flats of M with their ranks.

    A raw scan of all subsets is used up to 12 elements; beyond that flats
    are generated by closure expansion from cl(0) and each flat is mapped to
    its cyclic core (the cyclic core of a flat is a cyclic flat, and every
    cyclic flat arises this way).
    """
    tag, payload = M.realization
    if tag == "cyclic_flats":
        return payload
    if M.n > ENUMERATION_LIMIT:
        raise GroundTooLarge(f"{M.n} elements exceeds the enumeration limit {ENUMERATION_LIMIT}")
    if M.n <= RAW_SCAN_LIMIT:
        found = [m for m in range(M.full + 1) if _is_cyclic_flat_mask(M, m)]
    else:
        found = sorted({M.cyclic_core_mask(F) for F in _flats_bfs(M)})
    return CyclicFlatLattice(M.ground, [(M.labels(m), M.rank_of_mask(m)) for m in found])


# --- axioms ---------------------------------------------------------------------------


@dataclass
class ZAxiomResult:
    name: str
    ok: bool
    witness: object = None

    def to_json(self, Z: "CyclicFlatLattice") -> dict:
        w = self.witness
        if isinstance(w, int):
            w = Z.ordered(w)
        elif isinstance(w, tuple):
            w = [Z.ordered(x) for x in w]
        return {"axiom": self.name, "ok": self.ok, "witness": w}


@dataclass
class ZAxiomReport:
    lattice: CyclicFlatLattice
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def __getitem__(self, name) -> ZAxiomResult:
        return next(r for r in self.results if r.name == name)

    def failures(self) -> list[str]:
        return [r.name for r in self.results if not r.ok]

    def to_json(self) -> dict:
        return {"ok": self.ok, "axioms": [r.to_json(self.lattice) for r in self.results]}


def check_z_axioms(Z: CyclicFlatLattice) -> ZAxiomReport:
    """Check (Z0)-(Z3); witnesses are flats (or pairs of flats) of Z."""
    report = ZAxiomReport(Z)
    ms = Z.masks
    rank = Z._rank
    pairs = [(a, b) for i, a in enumerate(ms) for b in ms[i:]]

    bad = None
    joins: dict = {}
    meets: dict = {}
    if not ms:
        bad = ()
    for a, b in pairs:
        j, m = Z._join_mask(a, b), Z._meet_mask(a, b)
        if j is None or m is None:
            bad = (a, b)
            break
        joins[a, b] = j
        meets[a, b] = m
    report.results.append(ZAxiomResult("Z0", bad is None, bad))
    lattice_ok = bad is None

    if lattice_ok:
        b0 = Z._bottom_mask()
        report.results.append(ZAxiomResult("Z1", rank[b0] == 0, None if rank[b0] == 0 else b0))
    else:
        report.results.append(ZAxiomResult("Z1", False, None))

    bad = None
    for a in ms:
        for b in ms:
            if a != b and a & b == a:
                dr = rank[b] - rank[a]
                if not 0 < dr < b.bit_count() - a.bit_count():
                    bad = (a, b)
                    break
        if bad:
            break
    report.results.append(ZAxiomResult("Z2", bad is None, bad))

    bad = None
    if lattice_ok:
        for a, b in pairs:
            j, m = joins[a, b], meets[a, b]
            if rank[a] + rank[b] < rank[j] + rank[m] + ((a & b) & ~m).bit_count():
                bad = (a, b)
                break
    report.results.append(ZAxiomResult("Z3", lattice_ok and bad is None, bad))
    return report


def matroid_from_z(Z: CyclicFlatLattice) -> Matroid:
    """The matroid with rho(X) = min over F in Z of rho(F) + |X \\ F|."""
    report = check_z_axioms(Z)
    if not report.ok:
        raise ZAxiomViolation(f"lattice fails {', '.join(report.failures())}")
    items = [(m, Z._rank[m]) for m in Z.masks]

    def rank_mask(x):
        return min(r + (x & ~m).bit_count() for m, r in items)

    return Matroid(Z.ground, rank_mask, ("cyclic_flats", Z))


# --- queries on non-degenerate lattices -------------------------------------------


def non_degenerate(Z: CyclicFlatLattice) -> bool:
    return Z._bottom_mask() == 0 and Z._top_mask() == Z.full


def _require_non_degenerate(Z: CyclicFlatLattice):
    if not non_degenerate(Z):
        raise DegenerateLattice("needs 0_Z = empty set and 1_Z = E")


def _fx_mask(Z: CyclicFlatLattice, x: int) -> int:
    """F^X: the meet of all flats containing X (lattice meet, not intersection)."""
    uppers = [m for m in Z.masks if m & x == x]
    out = uppers[0]
    for m in uppers[1:]:
        out = Z._meet_mask(out, m)
    return out


def _rank_via_z(Z: CyclicFlatLattice, x: int) -> int:
    return min(r + (x & ~m).bit_count() for m, r in Z._rank.items())


def _is_cyclic_mask(Z: CyclicFlatLattice, x: int) -> tuple[bool, int]:
    fx = _fx_mask(Z, x)
    if fx & x != x:
        # the meet fell below X, so no cyclic flat is the closure of X
        return False, fx
    rf = Z._rank[fx]
    for m in Z.masks:
        if m != fx and m & fx == m and Z._rank[m] + (x & ~m).bit_count() <= rf:
            return False, fx
    return True, fx


def is_cyclic_set(Z: CyclicFlatLattice, X: Iterable) -> tuple[bool, frozenset]:
    """Whether X is a union of circuits, together with F^X."""
    _require_non_degenerate(Z)
    ok, fx = _is_cyclic_mask(Z, Z.mask(X))
    return ok, Z.labels(fx)


def restricted_lattice(Z: CyclicFlatLattice, X: Iterable) -> CyclicFlatLattice:
    """Z(M|X) for a cyclic set X: the cyclic sets X & F (F <= F^X), ranked by F^(X & F)."""
    _require_non_degenerate(Z)
    x = Z.mask(X)
    ok, fx = _is_cyclic_mask(Z, x)
    if not ok:
        raise NotCyclic(f"{Z._fmt(x)} is not a cyclic set")
    members = {}
    for m in Z.masks:
        if m & fx == m:
            y = x & m
            if y not in members and _is_cyclic_mask(Z, y)[0]:
                members[y] = Z._rank[_fx_mask(Z, y)]
    ground = Z.ordered(x)
    return CyclicFlatLattice(ground, [(Z.labels(y), r) for y, r in members.items()])


def params_via_z(Z: CyclicFlatLattice, X: Iterable | None = None) -> tuple[int, int, int]:
    """(n_X, k_X, d_X) of the punctured code on a cyclic set X (default E)."""
    x = Z.full if X is None else Z.mask(X)
    sub = restricted_lattice(Z, Z.labels(x))
    n = x.bit_count()
    k = _rank_via_z(Z, x)
    etas = [m.bit_count() - sub._rank[m] for m in sub.masks if m != sub.full]
    return n, k, n - k + 1 - max(etas, default=0)


def is_information_set(Z: CyclicFlatLattice, X: Iterable) -> bool:
    _require_non_degenerate(Z)
    x = Z.mask(X)
    if x.bit_count() != Z._rank[Z.full]:
        return False
    return all((x & m).bit_count() <= r for m, r in Z._rank.items())
