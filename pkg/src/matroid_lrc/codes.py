"""Linear and general (possibly nonlinear) codes, their punctured parameters,
and the entropy polymatroid of a code."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import BadParams, EmptyX, GroundTooLarge, ParseError, TopNotCyclicFlat, UnknownCoordinate, ZeroCode
from .linalg import Matrix
from .matroid import Matroid, bits, from_matrix

EPS = 1e-9
MAX_CODEWORDS = 1 << 20
EXHAUSTIVE_LIMIT = 16


def _drop_set_distance(labels: Sequence, X: Sequence, smaller: Callable[[frozenset], bool]) -> int:
    """min |Y| with Y inside X such that ``smaller(X minus Y)`` holds."""
    X = list(X)
    for size in range(1, len(X) + 1):
        for Y in itertools.combinations(X, size):
            if smaller(frozenset(X) - frozenset(Y)):
                return size
    raise ZeroCode("no drop set lowers the dimension (the code has dimension 0)")


class LinearCode:
    """The row space of a generator matrix; coordinates are the column labels."""

    def __init__(self, generator: Matrix, name: str | None = None):
        self.generator = generator
        self.name = name
        self._matroid: Matroid | None = None

    @property
    def spec(self):
        return self.generator.spec

    @property
    def labels(self) -> tuple:
        return self.generator.labels

    @property
    def matroid(self) -> Matroid:
        if self._matroid is None:
            self._matroid = from_matrix(self.generator)
        return self._matroid

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self.matroid.rank()

    def _check(self, X) -> list:
        X = list(X)
        for x in X:
            if x not in self.matroid._index:
                raise UnknownCoordinate(f"coordinate {x!r} is not a column label")
        return X

    def dimension(self, X: Iterable | None = None) -> int:
        return self.matroid.rank(X)

    def distance(self, X: Iterable | None = None) -> int:
        """d_X by the drop-set definition."""
        X = self.labels if X is None else self.matroid.sorted_labels(self._check(X))
        kx = self.matroid.rank(X)
        if kx == 0:
            raise ZeroCode("the punctured code has dimension 0")
        return _drop_set_distance(self.labels, X, lambda Z: self.matroid.rank(Z) < kx)

    def params(self, X: Iterable | None = None) -> tuple[int, int, int]:
        X = self.labels if X is None else self._check(X)
        return len(X), self.dimension(X), self.distance(X)

    def puncture(self, X: Iterable) -> "LinearCode":
        X = self._check(X)
        if not X:
            raise EmptyX("cannot puncture to an empty coordinate set")
        return LinearCode(self.generator.submatrix_cols(X))

    def non_degenerate(self) -> bool:
        if any(not any(col) for col in self.generator.columns):
            return False
        if self.k == 0:
            return False
        return self.distance() >= 2

    def information_sets(self) -> list[frozenset]:
        if self.n > EXHAUSTIVE_LIMIT:
            raise GroundTooLarge(f"information-set enumeration is exhaustive only up to {EXHAUSTIVE_LIMIT}")
        return self.matroid.bases()

    def is_information_set(self, X: Iterable) -> bool:
        X = self._check(X)
        return len(set(X)) == self.k and self.matroid.rank(X) == self.k

    def codewords(self) -> list[tuple[int, ...]]:
        """All codewords as tuples of field codes (requires q^rows <= 2^20)."""
        spec, G = self.spec, self.generator
        if spec.q ** G.rows > MAX_CODEWORDS:
            raise GroundTooLarge("too many codewords to enumerate")
        words = set()
        for coeffs in itertools.product(range(spec.q), repeat=G.rows):
            word = [0] * G.cols
            for c, row in zip(coeffs, G.data):
                if c:
                    word = [spec.add(w, spec.mul(c, g)) for w, g in zip(word, row)]
            words.add(tuple(word))
        return sorted(words)

    def min_weight(self) -> int:
        weights = [sum(1 for x in w if x) for w in self.codewords()]
        nonzero = [w for w in weights if w]
        if not nonzero:
            raise ZeroCode("the code has no nonzero codeword")
        return min(nonzero)

    def as_general(self) -> "GeneralCode":
        return GeneralCode(self.spec.q, self.codewords(), labels=self.labels)

    def to_json(self) -> dict:
        return self.generator.to_json()

    @classmethod
    def from_json(cls, obj) -> "LinearCode":
        return cls(Matrix.from_json(obj))

    def __repr__(self):
        return f"<LinearCode n={self.n} k={self.k} over {self.spec!r}>"


class GeneralCode:
    """An explicit set of codewords over the alphabet {0, ..., s-1}."""

    def __init__(self, s: int, codewords: Iterable[Sequence[int]], labels: Sequence | None = None):
        if s < 2:
            raise BadParams("alphabet size must be at least 2")
        words = {tuple(int(x) for x in w) for w in codewords}
        if not words:
            raise BadParams("a code must have at least one codeword")
        if len(words) > MAX_CODEWORDS:
            raise GroundTooLarge(f"more than {MAX_CODEWORDS} codewords")
        lengths = {len(w) for w in words}
        if len(lengths) != 1:
            raise BadParams("codewords must all have the same length")
        n = lengths.pop()
        if any(not 0 <= x < s for w in words for x in w):
            raise BadParams(f"symbols must lie in [0, {s})")
        self.s = s
        self.words = tuple(sorted(words))
        self.labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
        if len(self.labels) != n:
            raise BadParams("label count differs from codeword length")
        self._pos = {lab: i for i, lab in enumerate(self.labels)}
        self._sizes: dict[frozenset, int] = {}

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return len(self.words)

    @property
    def k_exact(self) -> tuple[int, int]:
        """k = log_s(|C|), stored as the pair (|C|, s)."""
        return self.size, self.s

    @property
    def k(self) -> float:
        return math.log(self.size, self.s)

    def _idx(self, X) -> list[int]:
        try:
            return sorted(self._pos[x] for x in X)
        except KeyError as exc:
            raise UnknownCoordinate(f"coordinate {exc.args[0]!r} is not in the code") from None

    def projection(self, X: Iterable) -> set[tuple]:
        idx = self._idx(X)
        return {tuple(w[i] for i in idx) for w in self.words}

    def projection_size(self, X: Iterable) -> int:
        key = frozenset(X)
        size = self._sizes.get(key)
        if size is None:
            size = len(self.projection(key))
            self._sizes[key] = size
        return size

    def puncture(self, X: Iterable) -> "GeneralCode":
        X = list(X)
        if not X:
            raise EmptyX("cannot puncture to an empty coordinate set")
        idx = self._idx(X)
        return GeneralCode(self.s, self.projection(X), [self.labels[i] for i in idx])

    def distance(self, X: Iterable | None = None) -> int:
        X = self.labels if X is None else [self.labels[i] for i in self._idx(X)]
        full = self.projection_size(X)
        if full == 1:
            raise ZeroCode("a single codeword has no distance")
        return _drop_set_distance(self.labels, X, lambda Z: self.projection_size(Z) < full)

    def params(self) -> tuple[int, float, int]:
        return self.n, self.k, self.distance()

    def non_degenerate(self) -> bool:
        if self.size == 1 or any(self.projection_size([x]) <= 1 for x in self.labels):
            return False
        return self.distance() >= 2

    def information_sets(self) -> list[frozenset]:
        """Minimal X with |C_X| = |C|."""
        if self.n > EXHAUSTIVE_LIMIT:
            raise GroundTooLarge(f"information-set enumeration is exhaustive only up to {EXHAUSTIVE_LIMIT}")
        full = self.size
        found: list[frozenset] = []
        for size in range(self.n + 1):
            for X in itertools.combinations(self.labels, size):
                fx = frozenset(X)
                if any(f <= fx for f in found):
                    continue
                if self.projection_size(fx) == full:
                    found.append(fx)
        return found

    def is_systematic(self, X: Iterable) -> bool:
        X = set(X)
        return self.size == self.s ** len(X) and self.projection_size(X) == self.size

    def to_json(self) -> dict:
        return {"s": self.s, "n": self.n, "codewords": [list(w) for w in self.words]}

    @classmethod
    def from_json(cls, obj) -> "GeneralCode":
        try:
            code = cls(int(obj["s"]), obj["codewords"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad code JSON: {exc}") from exc
        if "n" in obj and int(obj["n"]) != code.n:
            raise ParseError("declared n differs from the codeword length")
        return code

    def __repr__(self):
        return f"<GeneralCode n={self.n} |C|={self.size} s={self.s}>"


def puncture(C, X):
    return C.puncture(X)


def params(C):
    return C.params()


def non_degenerate(C) -> bool:
    return C.non_degenerate()


def information_sets(C) -> list[frozenset]:
    return C.information_sets()


# --- polymatroids ------------------------------------------------------------


class Polymatroid:
    """A real-valued rank oracle on subsets of ``ground``.

    Values are exact ``Fraction`` where the oracle can supply them, floats
    otherwise; ``scale`` records the constant c applied to the raw oracle.
    """

    def __init__(self, ground: Sequence, rank: Callable[[frozenset], Fraction | float], scale=1,
                 note: str = ""):
        self.ground = tuple(ground)
        self._raw = rank
        self.scale = scale
        self.note = note
        self._memo: dict[frozenset, Fraction | float] = {}

    def rank(self, X: Iterable | None = None):
        key = frozenset(self.ground if X is None else X)
        val = self._memo.get(key)
        if val is None:
            val = self._raw(key) * self.scale
            self._memo[key] = val
        return val

    def scaled(self, c=None) -> "Polymatroid":
        """Multiply the rank by c (default: min over singletons of 1/rho({x}), clipped to 1)."""
        if c is None:
            inv = [1 / self.rank([x]) for x in self.ground if self.rank([x]) > EPS]
            c = min([1, *inv])
            note = f"scaled by c = {c} (min over singletons of 1/rho, clipped to 1)"
        else:
            note = f"scaled by c = {c}"
        return Polymatroid(self.ground, self._raw, self.scale * c, note)

    def distance(self, X: Iterable | None = None) -> int:
        X = list(self.ground if X is None else X)
        rx = self.rank(X)
        if rx <= EPS:
            raise ZeroCode("rank 0 has no distance")
        return _drop_set_distance(self.ground, X, lambda Z: self.rank(Z) < rx - EPS)

    def check_axioms(self) -> dict[str, bool]:
        """(R1), (R2), (R3), (R5) with tolerance EPS, exhaustive."""
        if len(self.ground) > EXHAUSTIVE_LIMIT:
            raise GroundTooLarge("polymatroid axioms are checked exhaustively only up to 16 elements")
        subsets = [frozenset(c) for size in range(len(self.ground) + 1)
                   for c in itertools.combinations(self.ground, size)]
        r = {X: self.rank(X) for X in subsets}
        ok = {"R1": abs(r[frozenset()]) <= EPS, "R2": True, "R3": True, "R5": True}
        for X in subsets:
            if r[X] > len(X) + EPS:
                ok["R5"] = False
            for y in self.ground:
                if y not in X and r[X | {y}] < r[X] - EPS:
                    ok["R2"] = False
            for a, b in itertools.combinations([y for y in self.ground if y not in X], 2):
                if r[X | {a}] + r[X | {b}] < r[X | {a, b}] + r[X] - EPS:
                    ok["R3"] = False
        return ok


def _entropy(counts: Iterable[int], total: int, s: int):
    counts = list(counts)
    if len(set(counts)) == 1:
        ratio = total // counts[0]
        j = 0
        while s ** j < ratio:
            j += 1
        if s ** j == ratio:
            return Fraction(j)
    return sum(c / total * math.log(total / c, s) for c in counts)


def polymatroid_from_code(C) -> Polymatroid:
    """Entropy polymatroid rho_C (base s, uniform distribution on C)."""
    if isinstance(C, LinearCode):
        C = C.as_general()
    total = C.size

    def rank(X: frozenset):
        if not X:
            return Fraction(0)
        idx = C._idx(X)
        counts: dict[tuple, int] = {}
        for w in C.words:
            key = tuple(w[i] for i in idx)
            counts[key] = counts.get(key, 0) + 1
        return _entropy(counts.values(), total, C.s)

    return Polymatroid(C.labels, rank, 1, "entropy rank, base s")


@dataclass
class PolymatroidParams:
    n: int
    k: Fraction | float
    d: int
    cyclic_flats: list

    def to_json(self) -> dict:
        return {"n": self.n, "k": float(self.k), "d": self.d,
                "cyclic_flats": [{"set": sorted(X), "rank": float(r)} for X, r in self.cyclic_flats]}


def polymatroid_cyclic_flats(P: Polymatroid) -> list[tuple[frozenset, object]]:
    if len(P.ground) > EXHAUSTIVE_LIMIT:
        raise GroundTooLarge(f"polymatroid cyclic flats are scanned exhaustively only up to {EXHAUSTIVE_LIMIT}")
    out = []
    for size in range(len(P.ground) + 1):
        for X in itertools.combinations(P.ground, size):
            X = frozenset(X)
            r = P.rank(X)
            if all(P.rank(X | {e}) > r + EPS for e in P.ground if e not in X) and all(
                    r - P.rank(X - {x}) < 1 - EPS for x in X):
                out.append((X, r))
    return out


def polymatroid_params(P: Polymatroid) -> PolymatroidParams:
    flats = polymatroid_cyclic_flats(P)
    E = frozenset(P.ground)
    if not any(X == E for X, _ in flats):
        raise TopNotCyclicFlat("E is not a cyclic flat, so d is not defined via cyclic flats")
    n = len(E)
    k = P.rank(E)
    worst = max((len(X) - r for X, r in flats if X != E), default=0)
    d = math.floor(n - k + 1 - worst + EPS)
    return PolymatroidParams(n, k, d, flats)
