"""Locality, availability and hierarchy checks, repair-set search, and the
Singleton-type upper bounds on the minimum distance."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .codes import EPS, GeneralCode, LinearCode, Polymatroid
from .errors import BadParams, GroundTooLarge, OutsideP, SearchBudgetExceeded, UnknownCoordinate, ZeroCode
from .matroid import Matroid
from .zlattice import cyclic_flats

SEARCH_EXHAUSTIVE_LIMIT = 20


# --- uniform access to matroids, codes and polymatroids ------------------------


class _Access:
    """Ground set, local dimension and local distance for any supported object."""

    def __init__(self, obj):
        if isinstance(obj, LinearCode):
            obj = obj.matroid
        self.obj = obj
        if isinstance(obj, Matroid):
            self.ground = obj.ground
            self.order = {e: i for i, e in enumerate(obj.ground)}
        elif isinstance(obj, (GeneralCode, Polymatroid)):
            self.ground = tuple(obj.labels if isinstance(obj, GeneralCode) else obj.ground)
            self.order = {e: i for i, e in enumerate(self.ground)}
        else:
            raise TypeError(f"unsupported object {type(obj).__name__}")
        self._dist: dict[frozenset, int] = {}

    @property
    def is_matroid(self) -> bool:
        return isinstance(self.obj, Matroid)

    def check(self, X: Iterable) -> frozenset:
        X = frozenset(X)
        for x in X:
            if x not in self.order:
                raise UnknownCoordinate(f"coordinate {x!r} is not in the ground set")
        return X

    def ordered(self, X: Iterable) -> list:
        return sorted(X, key=self.order.__getitem__)

    def dimension(self, X: Iterable):
        X = frozenset(X)
        if isinstance(self.obj, Matroid):
            return self.obj.rank(X)
        if isinstance(self.obj, GeneralCode):
            return math.log(self.obj.projection_size(X), self.obj.s) if X else 0
        return self.obj.rank(X)

    def distance(self, X: Iterable) -> int:
        """Local distance d(C_X); 0 when the punctured object has rank 0."""
        X = frozenset(X)
        d = self._dist.get(X)
        if d is None:
            try:
                if isinstance(self.obj, Matroid):
                    d = _matroid_distance(self.obj, X)
                else:
                    d = self.obj.distance(self.ordered(X))
            except ZeroCode:
                d = 0
            self._dist[X] = d
        return d

    def is_cyclic(self, X: Iterable) -> bool | None:
        if not isinstance(self.obj, Matroid):
            return None
        return self.obj.is_cyclic_mask(self.obj.mask(X))

    def non_degenerate(self, X: Iterable) -> bool:
        X = frozenset(X)
        if not X or any(self.dimension([y]) <= EPS for y in X):
            return False
        return self.distance(X) >= 2

    def total(self) -> frozenset:
        return frozenset(self.ground)


def _matroid_distance(M: Matroid, X: frozenset) -> int:
    m = M.mask(X)
    r = M.rank_of_mask(m)
    if r == 0:
        raise ZeroCode("rank 0")
    members = [1 << i for i in range(M.n) if m >> i & 1]
    for size in range(1, len(members) + 1):
        for Y in itertools.combinations(members, size):
            if M.rank_of_mask(m & ~sum(Y)) < r:
                return size
    raise ZeroCode("rank 0")


# --- repair sets ---------------------------------------------------------------------


@dataclass(frozen=True)
class RepairSet:
    x: object
    members: frozenset
    n: int
    k: object
    d: int
    cyclic: bool | None = None

    def to_json(self, order=None) -> dict:
        members = sorted(self.members, key=order.__getitem__) if order else sorted(self.members)
        return {"x": self.x, "set": members, "n": self.n, "k": _num(self.k), "d": self.d, "cyclic": self.cyclic}


def _num(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else float(v)
    if isinstance(v, float) and abs(v - round(v)) < EPS:
        return int(round(v))
    return v


def _repair_set(acc: _Access, x, R: frozenset) -> RepairSet:
    return RepairSet(x, R, len(R), acc.dimension(R), acc.distance(R), acc.is_cyclic(R))


@dataclass
class LocalityCheck:
    """Outcome of checking one coordinate's repair sets against (i)-(iv)."""

    x: object
    sets: list
    conditions: dict
    ok: bool

    def to_json(self, order=None) -> dict:
        return {"x": self.x, "ok": self.ok, "conditions": self.conditions,
                "repair_sets": [s.to_json(order) for s in self.sets]}


@dataclass
class LocalityVerdict:
    ok: bool
    r: int
    delta: int
    t: int
    checks: dict

    def __bool__(self):
        return self.ok

    def to_json(self, order=None) -> dict:
        return {"ok": self.ok, "r": self.r, "delta": self.delta, "t": self.t,
                "coordinates": [c.to_json(order) for c in self.checks.values()]}


def verify_locality(obj, assignment: dict, r: int, delta: int, t: int | None = None) -> LocalityVerdict:
    """Check conditions (i)-(iv) for every coordinate in ``assignment``.

    ``assignment`` maps a coordinate to one repair set or a list of them.
    With ``t`` given, each coordinate must have at least t sets. Whether each
    set is cyclic is reported but not required.
    """
    acc = _Access(obj)
    checks = {}
    for x, sets in assignment.items():
        acc.check([x])
        if sets and not isinstance(next(iter(sets)), (set, frozenset, list, tuple)):
            sets = [sets]
        sets = [acc.check(R) for R in sets]
        infos = [_repair_set(acc, x, R) for R in sets]
        cond = {
            "i": all(x in R for R in sets),
            "ii": all(len(R) <= r + delta - 1 for R in sets),
            "iii": all(info.d >= delta for info in infos),
            "iv": all(A & B == {x} for A, B in itertools.combinations(sets, 2)),
            "t": t is None or len(sets) >= t,
        }
        checks[x] = LocalityCheck(x, infos, cond, all(cond.values()))
    return LocalityVerdict(all(c.ok for c in checks.values()), r, delta,
                           t if t is not None else min((len(c.sets) for c in checks.values()), default=0), checks)


def _candidates(acc: _Access, x, r: int, delta: int, budget: list | None):
    others = [y for y in acc.ground if y != x]
    for size in range(0, r + delta - 1):
        for rest in itertools.combinations(others, size):
            if budget is not None:
                budget[0] -= 1
                if budget[0] < 0:
                    raise SearchBudgetExceeded("candidate budget exhausted before the search finished")
            R = frozenset((x, *rest))
            if acc.distance(R) >= delta:
                yield R


def find_repair_sets(obj, x, r: int, delta: int, t: int = 1, exhaustive: bool = True,
                     budget: int = 100_000) -> list[RepairSet] | None:
    """t repair sets for x meeting (i)-(iv), or None if none exist.

    Candidates are ordered by size and then by position in the ground order;
    packing into t sets meeting pairwise only in x backtracks over them.
    In exhaustive mode None is definitive; otherwise running out of
    ``budget`` candidate evaluations raises SearchBudgetExceeded.
    """
    acc = _Access(obj)
    acc.check([x])
    if exhaustive and len(acc.ground) > SEARCH_EXHAUSTIVE_LIMIT:
        raise GroundTooLarge(f"exhaustive repair-set search is limited to {SEARCH_EXHAUSTIVE_LIMIT} elements")
    counter = None if exhaustive else [budget]
    cands = list(_candidates(acc, x, r, delta, counter))

    chosen: list[frozenset] = []

    def pack(start: int) -> bool:
        if len(chosen) == t:
            return True
        for i in range(start, len(cands)):
            R = cands[i]
            if all(R & S == {x} for S in chosen):
                chosen.append(R)
                if pack(i + 1):
                    return True
                chosen.pop()
        return False

    if not pack(0):
        return None
    return [_repair_set(acc, x, R) for R in chosen]


# --- locality report -------------------------------------------------------------------


@dataclass
class LocalityReport:
    scope: str
    r: int
    delta: int
    t: int
    params: tuple
    repair_sets: dict
    missing: list
    ok: bool
    covered_set: list = field(default_factory=list)
    achieved_r: int | None = None

    def to_json(self, order=None) -> dict:
        return {
            "scope": self.scope,
            "ok": self.ok,
            "requested": {"r": self.r, "delta": self.delta, "t": self.t},
            "achieved_r": self.achieved_r,
            "params": {"n": self.params[0], "k": _num(self.params[1]), "d": self.params[2]},
            "repair_sets": [{"x": x, "sets": [s.to_json(order) for s in sets]} for x, sets in self.repair_sets.items()],
            "missing": self.missing,
            "witness_set": self.covered_set,
        }


def analyze_locality(obj, r: int, delta: int, t: int = 1, scope: str = "all") -> LocalityReport:
    """Search repair sets for every coordinate and decide the requested scope.

    ``scope`` is "all", "information" or "systematic". For information-symbol
    locality the coordinates with repair sets must contain an information set;
    for linear objects every information set is systematic for some
    generator, so the systematic scope coincides with the information scope.
    """
    if scope not in ("all", "information", "systematic"):
        raise BadParams(f"unknown scope {scope!r}")
    acc = _Access(obj)
    found, missing = {}, []
    for x in acc.ground:
        sets = find_repair_sets(obj, x, r, delta, t)
        if sets is None:
            missing.append(x)
        else:
            found[x] = sets
    E = acc.total()
    k = acc.dimension(E)
    try:
        d = acc.distance(E) if k else 0
    except ZeroCode:
        d = 0
    if scope == "all":
        ok = not missing
        witness = acc.ordered(E) if ok else []
    else:
        have = frozenset(found)
        ok = acc.dimension(have) >= k - EPS
        witness = _information_set_within(acc, have, k) if ok else []
        if scope == "systematic" and isinstance(acc.obj, GeneralCode) and ok:
            ok = acc.obj.is_systematic(witness)
    used = [s for x, sets in found.items() for s in sets]
    achieved = max((s.n - delta + 1 for s in used), default=None)
    return LocalityReport(scope, r, delta, t, (len(E), k, d), found, missing, ok, witness, achieved)


def _information_set_within(acc: _Access, pool: frozenset, k) -> list:
    chosen: list = []
    for y in acc.ordered(pool):
        if acc.dimension(chosen + [y]) > acc.dimension(chosen) + EPS:
            chosen.append(y)
    return chosen


# --- hierarchy ------------------------------------------------------------------------------


@dataclass
class HierarchyResult:
    ok: bool
    witness: list

    def __bool__(self):
        return self.ok


def verify_hierarchy(obj, x, levels: Sequence[Sequence[int]]) -> HierarchyResult:
    """h-level hierarchical availability of coordinate x.

    ``levels`` lists (n_i, k_i, d_i, t_i) from the outermost level inwards.
    Every punctured code used as a witness must be non-degenerate. The
    witness is a nested list of (set, sub-witness) pairs.
    """
    acc = _Access(obj)
    acc.check([x])
    levels = [tuple(lv) for lv in levels]
    for lv in levels:
        if len(lv) != 4:
            raise BadParams("each level is (n_i, k_i, d_i, t_i)")
    E = acc.total()
    if not acc.non_degenerate(E):
        return HierarchyResult(False, [])
    return _hierarchy(acc, x, E, levels)


def _hierarchy(acc: _Access, x, X: frozenset, levels: list) -> HierarchyResult:
    if not levels:
        return HierarchyResult(True, [])
    (n1, k1, d1, t1), rest = levels[0], levels[1:]
    others = acc.ordered(X - {x})
    cands = []
    for size in range(0, min(n1, len(X)) ):
        for comb in itertools.combinations(others, size):
            Y = frozenset((x, *comb))
            if abs(acc.dimension(Y) - k1) > EPS or acc.distance(Y) < d1 or not acc.non_degenerate(Y):
                continue
            sub = _hierarchy(acc, x, Y, rest)
            if sub.ok:
                cands.append((Y, sub.witness))
    chosen: list = []

    def pack(start):
        if len(chosen) == t1:
            return True
        for i in range(start, len(cands)):
            Y = cands[i][0]
            if all(Y & S == {x} for S, _ in chosen):
                chosen.append(cands[i])
                if pack(i + 1):
                    return True
                chosen.pop()
        return False

    if pack(0):
        return HierarchyResult(True, [(acc.ordered(Y), w) for Y, w in chosen])
    return HierarchyResult(False, [])


# --- bounds -------------------------------------------------------------------------------


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check_nk(n, k):
    if not (isinstance(n, int) and n >= 1):
        raise BadParams(f"n must be a positive integer, got {n!r}")
    if not 0 < k <= n:
        raise BadParams(f"need 0 < k <= n, got n={n}, k={k}")


def _check_r(k, r):
    if not (isinstance(r, int) and 0 < r <= k):
        raise BadParams(f"need 0 < r <= k (see the region P(n,k,r,delta)), got r={r}, k={k}")


def _check_pos(name, v, low=1):
    if not (isinstance(v, int) and v >= low):
        raise BadParams(f"{name} must be an integer >= {low}, got {v!r}")


def bound_singleton(n: int, k: int) -> int:
    _check_nk(n, k)
    return n - k + 1


def bound_gopalan(n: int, k: int, r: int) -> int:
    _check_nk(n, k)
    _check_r(k, r)
    return n - k + 1 - (_ceil_div(k, r) - 1)


def bound_prakash(n: int, k: int, r: int, delta: int) -> int:
    _check_nk(n, k)
    _check_r(k, r)
    _check_pos("delta", delta)
    return n - k + 1 - (_ceil_div(k, r) - 1) * (delta - 1)


def bound_wang(n: int, k: int, r: int, t: int) -> int:
    _check_nk(n, k)
    _check_r(k, r)
    _check_pos("t", t)
    return n - k + 1 - (_ceil_div(t * (k - 1) + 1, t * (r - 1) + 1) - 1)


def bound_polymatroid(n: int, k, r: int, delta: int, t: int) -> int:
    """Polymatroid bound; k may be rational (it is rounded up)."""
    K = math.ceil(Fraction(k) if not isinstance(k, float) else k - EPS)
    _check_nk(n, K)
    _check_r(K, r)
    _check_pos("delta", delta)
    _check_pos("t", t)
    return n - K + 1 - (_ceil_div(t * (K - 1) + 1, t * (r - 1) + 1) - 1) * (delta - 1)


def bound_tamo(n: int, k: int, r: int, t: int) -> int:
    _check_nk(n, k)
    _check_r(k, r)
    _check_pos("t", t)
    if r == 1:
        raise BadParams("the availability bound with floor((k-1)/r^i) needs r >= 2")
    return n - k + 1 - sum((k - 1) // r ** i for i in range(1, t + 1))


def bound_hierarchical(levels: Sequence[Sequence[int]], i: int = 0) -> int:
    """Upper bound on d_i from levels [(n_0, k_0, d_0), (n_1, k_1, d_1), ...].

    d_j for j > i enter the sum; d_{h+1} is taken as 1. Level i itself only
    needs (n_i, k_i).
    """
    if not levels or not 0 <= i < len(levels):
        raise BadParams("level index out of range")
    h = len(levels) - 1
    n_i, k_i = levels[i][0], levels[i][1]
    _check_nk(n_i, k_i)

    def d(j):
        if j == h + 1:
            return 1
        if len(levels[j]) < 3:
            raise BadParams(f"level {j} needs a distance")
        return levels[j][2]

    total = 0
    for j in range(i + 1, h + 1):
        k_j = levels[j][1]
        _check_pos(f"k_{j}", k_j)
        total += (d(j) - d(j + 1)) * (_ceil_div(k_i, k_j) - 1)
    return n_i - k_i + 1 - total


@dataclass
class CadambeResult:
    permitted: bool
    bound: int
    s: int
    surrogate: str
    terms: list

    def __bool__(self):
        return self.permitted

    def to_json(self) -> dict:
        return {"permitted": self.permitted, "k_max": self.bound, "argmin_s": self.s,
                "surrogate": self.surrogate, "terms": self.terms,
                "meaning": "not excluded" if self.permitted else "excluded"}


def bound_cadambe(n: int, k_target: int, d: int, r: int, q: int | None = None,
                  surrogate: str = "singleton") -> CadambeResult:
    """Alphabet-aware test k <= min_s (s r + k_opt(n - s(r+1), d)).

    k_opt is replaced by the Singleton value max(0, n' - d + 1), an upper
    bound, so a False answer is definitive while True means "not excluded".
    s runs over 0..floor(n/(r+1)); s = 0 contributes the Singleton bound.
    """
    if surrogate != "singleton":
        raise BadParams(f"unsupported surrogate {surrogate!r}")
    _check_pos("n", n)
    _check_pos("d", d)
    _check_pos("r", r)
    if d > n:
        raise BadParams(f"d={d} exceeds n={n}")
    if k_target < 0:
        raise BadParams("k must be non-negative")
    terms = []
    for s in range(0, n // (r + 1) + 1):
        rest = n - s * (r + 1)
        terms.append((s, s * r + max(0, rest - d + 1)))
    s_best, best = min(terms, key=lambda p: (p[1], p[0]))
    return CadambeResult(k_target <= best, best, s_best, surrogate, [list(p) for p in terms])


# --- optimality -----------------------------------------------------------------------------


def in_region_p(n: int, k: int, r: int, delta: int) -> bool:
    return 2 <= delta and 0 < r <= k and k <= n - (delta - 1) * _ceil_div(k, r)


@dataclass
class OptimalityVerdict:
    params: dict
    in_p: bool
    bounds: dict
    gaps: dict
    tightest: str | None
    optimal: bool
    notes: list

    def to_json(self) -> dict:
        return {"params": self.params, "in_P": self.in_p, "bounds": self.bounds, "gaps": self.gaps,
                "tightest": self.tightest, "singleton_optimal": self.optimal, "notes": self.notes}


# on ties, report the bound that uses the most parameters
_PREFERENCE = ["prakash", "polymatroid", "tamo", "wang", "gopalan", "singleton"]


def classify_optimality(n: int, k, d: int, r: int, delta: int, t: int = 1, scope: str = "all") -> OptimalityVerdict:
    """Gap to every applicable bound; optimal when d meets the smallest one."""
    bounds, notes = {}, []
    K = math.ceil(k) if not isinstance(k, int) else k
    integral = isinstance(k, int) or (isinstance(k, Fraction) and k.denominator == 1)
    candidates = [("singleton", lambda: bound_singleton(n, K))]
    if integral:
        K = int(k)
        candidates += [
            ("gopalan", lambda: bound_gopalan(n, K, r)),
            ("prakash", lambda: bound_prakash(n, K, r, delta)),
            ("wang", lambda: bound_wang(n, K, r, t)),
        ]
        if scope == "all" and r >= 2:
            candidates.append(("tamo", lambda: bound_tamo(n, K, r, t)))
    candidates.append(("polymatroid", lambda: bound_polymatroid(n, k, r, delta, t)))
    for name, fn in candidates:
        try:
            bounds[name] = fn()
        except BadParams as exc:
            notes.append(f"{name}: {exc}")
    in_p = integral and in_region_p(n, K, r, delta)
    if not in_p:
        notes.append("(n,k,r,delta) lies outside the region P(n,k,r,delta)")
    gaps = {name: b - d for name, b in bounds.items()}
    tightest = min(bounds, key=lambda name: (bounds[name], _PREFERENCE.index(name))) if bounds else None
    optimal = tightest is not None and d == bounds[tightest]
    return OptimalityVerdict({"n": n, "k": _num(k), "d": d, "r": r, "delta": delta, "t": t}, in_p,
                             bounds, gaps, tightest, optimal, notes)


def d_max_lower_bound(n: int, k: int, r: int, delta: int) -> int:
    if not in_region_p(n, k, r, delta):
        raise OutsideP(f"(n,k,r,delta)=({n},{k},{r},{delta}) is outside P(n,k,r,delta)")
    return n - k + 1 - _ceil_div(k, r) * (delta - 1)


# --- structure theorem --------------------------------------------------------------------


@dataclass
class StructureReport:
    conditions: dict
    witnesses: dict
    r: int
    delta: int
    k: int

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    def failed(self) -> list[str]:
        return [c for c, v in self.conditions.items() if not v]

    def to_json(self) -> dict:
        return {"ok": self.ok, "r": self.r, "delta": self.delta, "k": self.k,
                "conditions": self.conditions, "witnesses": self.witnesses}


MAX_DISTINCT_REPAIR_SETS = 16


def check_structure_theorem(M: Matroid, repair_sets: dict, r: int | None = None,
                            delta: int | None = None) -> StructureReport:
    """Evaluate the necessary conditions for Singleton-optimal all-symbol matroids.

    ``repair_sets`` maps every element x to R_x. r defaults to max rho(R_x)
    and delta to min d(R_x). Nontrivial unions R_Y are enumerated through
    subfamilies of distinct repair sets in which no member lies inside the
    union of the others (a repeated set can never be part of one).
    """
    if isinstance(M, LinearCode):
        M = M.matroid
    acc = _Access(M)
    Rx = {x: acc.check(R) for x, R in repair_sets.items()}
    for x in Rx:
        acc.check([x])
    if set(Rx) != set(M.ground):
        raise BadParams("every element needs a repair set")
    k = M.rank()
    if r is None:
        r = max(M.rank(R) for R in Rx.values())
    if delta is None:
        delta = min(acc.distance(R) for R in Rx.values())
    if r >= k:
        raise BadParams(f"the structure conditions assume r < k (r={r}, k={k})")
    K = _ceil_div(k, r)

    Z = cyclic_flats(M)
    flats = {X: rank for X, rank in Z.flats}
    bottom = Z.bottom
    E = frozenset(M.ground)
    cond, wit = {}, {}

    def fail(name, w):
        if cond.get(name, True):
            cond[name] = False
            wit[name] = w

    def fmt(X):
        return acc.ordered(X)

    cond["i"] = bottom == frozenset()
    if not cond["i"]:
        wit["i"] = fmt(bottom)

    cond["ii_a"] = cond["ii_b"] = True
    for x, R in Rx.items():
        is_atom = R in flats and R != bottom and not any(
            bottom < F < R for F in flats)
        if not is_atom:
            fail("ii_a", {"x": x, "R": fmt(R)})
        if len(R) - M.rank(R) != delta - 1:
            fail("ii_b", {"x": x, "R": fmt(R)})

    distinct = sorted(set(Rx.values()), key=lambda R: tuple(sorted(acc.order[y] for y in R)))
    if len(distinct) > MAX_DISTINCT_REPAIR_SETS:
        raise GroundTooLarge(f"more than {MAX_DISTINCT_REPAIR_SETS} distinct repair sets")
    for name in ("iii_c", "iii_d", "iii_e", "iii_f"):
        cond[name] = True
    for size in range(1, len(distinct) + 1):
        for fam in itertools.combinations(distinct, size):
            union = frozenset().union(*fam)
            if any(R <= frozenset().union(*(S for S in fam if S is not R)) for R in fam if size > 1):
                continue
            label = [fmt(R) for R in fam]
            if size < K:
                if union not in flats:
                    fail("iii_c", label)
                if M.rank(union) != len(union) - size * (delta - 1):
                    fail("iii_d", label)
            if size <= K:
                for R in fam:
                    rest = frozenset().union(*(S for S in fam if S is not R)) if size > 1 else frozenset()
                    if len(R & rest) > len(R) - delta:
                        fail("iii_e", label)
            if size >= K:
                if any(F >= union and F != E for F in flats):
                    fail("iii_f", label)
    return StructureReport(cond, wit, r, delta, k)
