"""Dense matrices over a finite field with labelled columns.

Plain Gaussian elimination; intended for desk-scale matrices (up to ~64x64).
Entries are stored as integer codes of the owning :class:`FieldSpec`.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .errors import ParseError, SpecMismatch, UnknownLabel
from .gf import FieldElement, FieldSpec


def _reduce_into(spec: FieldSpec, basis: dict[int, list[int]], vec: list[int]) -> int | None:
    """Reduce ``vec`` against an echelon ``basis`` (pivot -> normalised row).

    Adds the reduced vector to the basis and returns its pivot, or returns
    None if ``vec`` was already in the span.
    """
    p = spec.p
    prime = spec.m == 1
    v = list(vec)
    for i in range(len(v)):
        x = v[i]
        if not x:
            continue
        row = basis.get(i)
        if row is None:
            if prime:
                s = pow(x, p - 2, p)
                v = [y * s % p for y in v]
            else:
                s = spec.inv(x)
                v = [spec.mul(y, s) for y in v]
            basis[i] = v
            return i
        if prime:
            v = [(a - x * b) % p for a, b in zip(v, row)]
        else:
            v = [spec.sub(a, spec.mul(x, b)) for a, b in zip(v, row)]
    return None


def vectors_rank(spec: FieldSpec, vectors: Iterable[Sequence[int]]) -> int:
    basis: dict[int, list[int]] = {}
    r = 0
    for v in vectors:
        if _reduce_into(spec, basis, v) is not None:
            r += 1
    return r


class Matrix:
    """A rows x cols matrix over ``spec`` whose columns carry distinct labels."""

    __slots__ = ("spec", "rows", "cols", "data", "labels", "_col_index", "_columns")

    def __init__(self, spec: FieldSpec, data: Sequence[Sequence[int]], labels: Sequence[Hashable] | None = None,
                 cols: int | None = None):
        self.spec = spec
        self.data = tuple(tuple(int(x) for x in row) for row in data)
        self.rows = len(self.data)
        if cols is None:
            cols = len(self.data[0]) if self.data else (len(labels) if labels is not None else 0)
        self.cols = cols
        if any(len(row) != cols for row in self.data):
            raise ValueError("ragged matrix")
        if any(not 0 <= x < spec.q for row in self.data for x in row):
            raise ValueError("entries must be field codes")
        self.labels = tuple(labels) if labels is not None else tuple(range(1, cols + 1))
        if len(self.labels) != cols:
            raise ValueError(f"{len(self.labels)} labels for {cols} columns")
        if len(set(self.labels)) != cols:
            raise ValueError("column labels must be distinct")
        self._col_index = {lab: j for j, lab in enumerate(self.labels)}
        self._columns = None

    # -- construction helpers ---------------------------------------------

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Sequence[Sequence], labels=None) -> "Matrix":
        """Rows of ints (reduced mod p; prime fields) or coefficient lists / FieldElements."""
        data = []
        for row in rows:
            out = []
            for x in row:
                if isinstance(x, FieldElement):
                    if x.spec != spec:
                        raise SpecMismatch(f"{x.spec} entry in a {spec} matrix")
                    out.append(x.value)
                elif isinstance(x, (list, tuple)):
                    out.append(spec.code(x))
                elif spec.m == 1:
                    out.append(spec.from_int(x))
                else:
                    out.append(int(x))
            data.append(out)
        ncols = len(data[0]) if data else len(labels or ())
        return cls(spec, data, labels, cols=ncols)

    @classmethod
    def identity(cls, spec: FieldSpec, n: int, labels=None) -> "Matrix":
        return cls(spec, [[1 if i == j else 0 for j in range(n)] for i in range(n)], labels, cols=n)

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int, labels=None) -> "Matrix":
        return cls(spec, [[0] * cols for _ in range(rows)], labels, cols=cols)

    # -- accessors -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return self.spec.element(self.data[i][j])

    def column(self, label) -> tuple[int, ...]:
        return self.columns[self.index(label)]

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        if self._columns is None:
            self._columns = tuple(tuple(row[j] for row in self.data) for j in range(self.cols))
        return self._columns

    def index(self, label) -> int:
        try:
            return self._col_index[label]
        except KeyError:
            raise UnknownLabel(f"unknown column label {label!r}") from None

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.spec == other.spec and self.data == other.data
                and self.labels == other.labels and self.cols == other.cols)

    def __hash__(self):
        return hash((self.spec, self.data, self.labels))

    def __repr__(self):
        body = "\n".join(" ".join(str(self.spec.encode_entry(x)) for x in row) for row in self.data)
        return f"Matrix over {self.spec!r}, labels={list(self.labels)}\n{body}"

    # -- operations ----------------------------------------------------------

    def submatrix_cols(self, X: Iterable) -> "Matrix":
        """G(X): columns in X, kept in this matrix's column order."""
        X = set(X)
        for lab in X:
            self.index(lab)
        idx = [j for j, lab in enumerate(self.labels) if lab in X]
        return Matrix(self.spec, [[row[j] for j in idx] for row in self.data],
                      [self.labels[j] for j in idx], cols=len(idx))

    def transpose(self) -> "Matrix":
        return Matrix(self.spec, self.columns, cols=self.rows)

    def rank(self) -> int:
        if self.rows <= self.cols:
            return vectors_rank(self.spec, self.data)
        return vectors_rank(self.spec, self.columns)

    def rank_of(self, X: Iterable) -> int:
        return vectors_rank(self.spec, (self.column(lab) for lab in X))

    def rref(self) -> tuple["Matrix", list]:
        """Reduced row-echelon form and the labels of the pivot columns."""
        spec = self.spec
        rows = [list(r) for r in self.data]
        pivots = []
        lead = 0
        for j in range(self.cols):
            piv = next((i for i in range(lead, self.rows) if rows[i][j]), None)
            if piv is None:
                continue
            rows[lead], rows[piv] = rows[piv], rows[lead]
            s = spec.inv(rows[lead][j])
            rows[lead] = [spec.mul(x, s) for x in rows[lead]]
            for i in range(self.rows):
                if i != lead and rows[i][j]:
                    c = rows[i][j]
                    rows[i] = [spec.sub(a, spec.mul(c, b)) for a, b in zip(rows[i], rows[lead])]
            pivots.append(self.labels[j])
            lead += 1
            if lead == self.rows:
                break
        return Matrix(spec, rows, self.labels, cols=self.cols), pivots

    def row_basis(self) -> "Matrix":
        """Nonzero rows of the RREF: a full-rank generator of the same row space."""
        red, piv = self.rref()
        return Matrix(self.spec, red.data[: len(piv)], self.labels, cols=self.cols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if other.spec != self.spec or other.cols != self.cols:
            raise SpecMismatch("stacked matrices must share field and width")
        return Matrix(self.spec, self.data + other.data, self.labels, cols=self.cols)

    def hstack(self, other: "Matrix") -> "Matrix":
        if other.spec != self.spec or other.rows != self.rows:
            raise SpecMismatch("juxtaposed matrices must share field and height")
        return Matrix(self.spec, [a + b for a, b in zip(self.data, other.data)],
                      self.labels + other.labels, cols=self.cols + other.cols)

    def matmul(self, other: "Matrix") -> "Matrix":
        spec = self.spec
        if other.spec != spec or self.cols != other.rows:
            raise SpecMismatch("incompatible product")
        out = []
        for row in self.data:
            acc = [0] * other.cols
            for a, orow in zip(row, other.data):
                if a:
                    acc = [spec.add(x, spec.mul(a, b)) for x, b in zip(acc, orow)]
            out.append(acc)
        return Matrix(spec, out, other.labels, cols=other.cols)

    def orthogonal_complement(self) -> "Matrix":
        """Generator of the dual code: basis of {v : G v^T = 0}, same column labels."""
        spec = self.spec
        red, piv = self.rref()
        piv_idx = [self.index(lab) for lab in piv]
        free = [j for j in range(self.cols) if j not in piv_idx]
        out = []
        for f in free:
            v = [0] * self.cols
            v[f] = 1
            for r, pj in enumerate(piv_idx):
                v[pj] = spec.neg(red.data[r][f])
            out.append(v)
        return Matrix(spec, out, self.labels, cols=self.cols)

    def relabel(self, labels: Sequence) -> "Matrix":
        return Matrix(self.spec, self.data, labels, cols=self.cols)

    # -- JSON -------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "rows": self.rows,
            "cols": self.cols,
            "labels": list(self.labels),
            "entries": [[self.spec.encode_entry(x) for x in row] for row in self.data],
        }

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        try:
            spec = FieldSpec.from_json(obj["field"])
            entries = obj["entries"]
            rows = int(obj.get("rows", len(entries)))
            cols = int(obj.get("cols", len(entries[0]) if entries else 0))
            labels = obj.get("labels") or list(range(1, cols + 1))
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ParseError("entries do not match rows/cols")
            data = [[spec.decode_entry(x) for x in r] for r in entries]
            return cls(spec, data, [_label(x) for x in labels], cols=cols)
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad matrix JSON: {exc}") from exc


def _label(x):
    return tuple(x) if isinstance(x, list) else x


def rank(G: Matrix) -> int:
    return G.rank()


def rref(G: Matrix) -> tuple[Matrix, list]:
    return G.rref()


def submatrix_cols(G: Matrix, X: Iterable) -> Matrix:
    return G.submatrix_cols(X)
