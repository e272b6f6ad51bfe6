"""Exact sparse linear algebra over Q.

Matrices are stored as a dict ``(row, col) -> Fraction`` with zeros never
stored. Elimination is Gauss-Jordan on dict-of-dict rows, choosing each
pivot in the currently shortest row and, within it, the column that
appears in the fewest remaining rows.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ComplexMismatch


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class RationalVector:
    length: int
    entries: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for i, v in self.entries.items():
            if not 0 <= i < self.length:
                raise IndexError(f"index {i} out of range for length {self.length}")
            v = _q(v)
            if v:
                clean[i] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, values: Sequence) -> "RationalVector":
        return cls(len(values), {i: v for i, v in enumerate(values) if v})

    def to_dense(self) -> list:
        out = [Fraction(0)] * self.length
        for i, v in self.entries.items():
            out[i] = v
        return out

    def __getitem__(self, i: int) -> Fraction:
        return self.entries.get(i, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, RationalVector):
            return NotImplemented
        return self.length == other.length and self.entries == other.entries

    def __hash__(self):
        return hash((self.length, frozenset(self.entries.items())))


@dataclass(frozen=True)
class RationalSparseMatrix:
    rows: int
    cols: int
    entries: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = _q(v)
            if v:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "RationalSparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls(nrows, ncols, entries)

    @classmethod
    def from_rows(cls, row_dicts: Sequence[Mapping], cols: int) -> "RationalSparseMatrix":
        entries = {(i, j): v for i, row in enumerate(row_dicts) for j, v in row.items()}
        return cls(len(row_dicts), cols, entries)

    def to_dense(self) -> list:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def row_dicts(self) -> list:
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __getitem__(self, rc) -> Fraction:
        return self.entries.get(rc, Fraction(0))

    def transpose(self) -> "RationalSparseMatrix":
        return RationalSparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other: "RationalSparseMatrix") -> "RationalSparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        other_rows = other.row_dicts()
        acc: dict = {}
        for (r, k), v in self.entries.items():
            for c, w in other_rows[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return RationalSparseMatrix(self.rows, other.cols, acc)

    def apply(self, v: RationalVector) -> RationalVector:
        if v.length != self.cols:
            raise ValueError("vector length does not match column count")
        out: dict = {}
        for (r, c), a in self.entries.items():
            x = v.entries.get(c)
            if x:
                out[r] = out.get(r, 0) + a * x
        return RationalVector(self.rows, out)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, RationalSparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))


def _unique_rows(m: RationalSparseMatrix) -> list:
    """Nonzero rows, scaled so the first entry is 1, without duplicates."""
    seen = set()
    out = []
    for row in m.row_dicts():
        if not row:
            continue
        lead = row[min(row)]
        normed = {c: v / lead for c, v in row.items()}
        key = frozenset(normed.items())
        if key not in seen:
            seen.add(key)
            out.append(normed)
    return out


def rref(m: RationalSparseMatrix) -> tuple:
    """Reduced row echelon data: ``(pivots, rows)``.

    ``pivots`` maps pivot column -> index into ``rows``; each row is a dict
    with a 1 at its pivot column and zeros at every other pivot column.
    """
    active = _unique_rows(m)
    col_rows: dict = {}
    for i, row in enumerate(active):
        for c in row:
            col_rows.setdefault(c, set()).add(i)
    # lazy heap of (recorded length, row); stale entries are re-pushed
    heap = [(len(row), i) for i, row in enumerate(active)]
    heapq.heapify(heap)
    done = [False] * len(active)
    pivots: dict = {}

    while heap:
        n, i = heapq.heappop(heap)
        if done[i]:
            continue
        row = active[i]
        if n != len(row):
            heapq.heappush(heap, (len(row), i))
            continue
        done[i] = True
        if not row:
            continue
        c = min(row, key=lambda k: (len(col_rows[k]), k))
        p = row[c]
        if p != 1:
            for k in row:
                row[k] = row[k] / p
        pivots[c] = i
        for j in list(col_rows[c]):
            if j == i:
                continue
            other = active[j]
            f = other[c]
            for k, v in row.items():
                nv = other.get(k, 0) - f * v
                if nv:
                    if k not in other:
                        col_rows.setdefault(k, set()).add(j)
                    other[k] = nv
                elif k in other:
                    del other[k]
                    col_rows[k].discard(j)
    rows = [active[i] for i in range(len(active))]
    return pivots, rows


def rank(m: RationalSparseMatrix) -> int:
    return len(rref(m)[0])


def nullity(m: RationalSparseMatrix) -> int:
    return m.cols - rank(m)


def nullspace_basis(m: RationalSparseMatrix) -> list:
    """Basis of ``{v : m v = 0}``, one vector per free column (free entry = 1)."""
    pivots, rows = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    free_set = set(free)
    # column -> [(pivot column, coefficient)] over free columns
    by_free: dict = {f: [] for f in free}
    for pc, i in pivots.items():
        for k, v in rows[i].items():
            if k in free_set:
                by_free[k].append((pc, v))
    basis = []
    for f in free:
        entries = {f: Fraction(1)}
        for pc, v in by_free[f]:
            entries[pc] = -v
        vec = RationalVector(m.cols, entries)
        if m.apply(vec).entries:
            raise ArithmeticError("nullspace vector failed verification")
        basis.append(vec)
    return basis


def column_space_rank(vectors: Iterable[RationalVector], length: int) -> int:
    vecs = list(vectors)
    return rank(RationalSparseMatrix.from_rows([v.entries for v in vecs], length))


def h1_dimension(d0: RationalSparseMatrix, d1: RationalSparseMatrix) -> int:
    """``dim ker d1 - dim im d0`` for the cochain complex ``C0 -d0-> C1 -d1-> C2``."""
    if d1.cols != d0.rows:
        raise ComplexMismatch(f"d1 has {d1.cols} columns but d0 has {d0.rows} rows")
    if not (d1 @ d0).is_zero():
        raise ComplexMismatch("d1 . d0 is not zero")
    return nullity(d1) - rank(d0)
