"""Exact linear algebra: GF(2) matrices on int bitsets and integer determinants.

GF(2) vectors are Python ints; bit ``j`` is coordinate ``j``.  A matrix is a
list of row vectors plus a column count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class GF2Matrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#x} does not fit in {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Iterable[int], ncols: int) -> "GF2Matrix":
        return cls(tuple(rows), ncols)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "GF2Matrix":
        ncols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            packed.append(sum((v & 1) << j for j, v in enumerate(row)))
        return cls(tuple(packed), ncols)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def transpose(self) -> "GF2Matrix":
        cols = []
        for j in range(self.ncols):
            v = 0
            for i, r in enumerate(self.rows):
                if (r >> j) & 1:
                    v |= 1 << i
            cols.append(v)
        return GF2Matrix(tuple(cols), self.nrows)

    def apply(self, x: int) -> int:
        """Return ``M x`` as a bit vector over the rows."""
        out = 0
        for i, r in enumerate(self.rows):
            if parity(r & x):
                out |= 1 << i
        return out

    def stack(self, other: "GF2Matrix") -> "GF2Matrix":
        if other.ncols != self.ncols:
            raise ValueError("column count mismatch")
        return GF2Matrix(self.rows + other.rows, self.ncols)


def echelon(rows: Iterable[int]) -> list[int]:
    """Reduce ``rows`` to a basis of their span with distinct leading bits.

    The result is fully reduced (no basis vector contains another's leading
    bit) and sorted by leading bit, so it is canonical for the span.
    """
    basis: dict[int, int] = {}
    for v in rows:
        v = reduce_vector(v, basis)
        if v:
            lead = v.bit_length() - 1
            for k in list(basis):
                if (basis[k] >> lead) & 1:
                    basis[k] ^= v
            basis[lead] = v
    return [basis[k] for k in sorted(basis)]


def reduce_vector(v: int, basis: dict[int, int]) -> int:
    # basis maps leading bit -> vector; vectors with higher leads go first
    for lead in sorted(basis, reverse=True):
        if (v >> lead) & 1:
            v ^= basis[lead]
    return v


def rank_rows(rows: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    for v in rows:
        while v:
            lead = v.bit_length() - 1
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = v
                break
            v ^= p
    return len(pivots)


def rank(m: GF2Matrix) -> int:
    """Row rank over GF(2)."""
    return rank_rows(m.rows)


def quotient_rank(subspace: GF2Matrix, vectors: GF2Matrix) -> int:
    """dim((span(vectors) + span(subspace)) / span(subspace))."""
    if subspace.ncols != vectors.ncols:
        raise ValueError(
            f"ambient dimension mismatch: {subspace.ncols} vs {vectors.ncols}"
        )
    return rank_rows(subspace.rows + vectors.rows) - rank_rows(subspace.rows)


def in_span(v: int, rows: Iterable[int]) -> bool:
    rows = list(rows)
    return rank_rows(rows + [v]) == rank_rows(rows)


def kernel(m: GF2Matrix) -> list[int]:
    """Basis of ``{x : M x = 0}`` as bit vectors of length ``m.ncols``.

    Deterministic: free columns are taken in increasing order.
    """
    n = m.ncols
    pivot_row: dict[int, int] = {}  # pivot column -> reduced row
    for r in m.rows:
        for col, prow in pivot_row.items():
            if (r >> col) & 1:
                r ^= prow
        if not r:
            continue
        col = (r & -r).bit_length() - 1
        for c in list(pivot_row):
            if (pivot_row[c] >> col) & 1:
                pivot_row[c] ^= r
        pivot_row[col] = r
    basis = []
    for free in range(n):
        if free in pivot_row:
            continue
        x = 1 << free
        for col, prow in pivot_row.items():
            if (prow >> free) & 1:
                x |= 1 << col
        basis.append(x)
    return basis


def inverse(m: GF2Matrix) -> GF2Matrix:
    """Inverse of a square invertible matrix over GF(2)."""
    n = m.nrows
    if m.ncols != n:
        raise ValueError("matrix is not square")
    # augmented rows: low n bits = M, high n bits = identity
    work = [r | (1 << (n + i)) for i, r in enumerate(m.rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if (work[i] >> col) & 1), None)
        if piv is None:
            raise ValueError("matrix is singular over GF(2)")
        work[col], work[piv] = work[piv], work[col]
        for i in range(n):
            if i != col and (work[i] >> col) & 1:
                work[i] ^= work[col]
    return GF2Matrix(tuple(r >> n for r in work), n)


def extend_basis(base: Sequence[int], candidates: Iterable[int]) -> list[int]:
    """Pick candidates, in order, that are independent modulo span(base)."""
    pivots: dict[int, int] = {}

    def insert(v: int) -> bool:
        while v:
            lead = v.bit_length() - 1
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = v
                return True
            v ^= p
        return False

    for b in base:
        insert(b)
    return [c for c in candidates if insert(c)]


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
