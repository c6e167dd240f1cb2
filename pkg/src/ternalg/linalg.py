"""Exact rational linear algebra: dense matrices, RREF, nullspaces, subspaces.

Scalars are :class:`fractions.Fraction`; nothing in this module ever rounds.
Vectors are tuples of Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


def to_scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")


def vec(values: Iterable) -> Vector:
    return tuple(to_scalar(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def vadd(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def is_zero(v: Iterable[Fraction]) -> bool:
    return not any(v)


class Matrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(vec(r) for r in data)
        if cols is None:
            if not rows:
                raise ValueError("column count needed for a matrix with no rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        self._data = rows
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([unit_vec(n, i) for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        return cls([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def from_flat(cls, flat: Sequence, rows: int, cols: int) -> "Matrix":
        if len(flat) != rows * cols:
            raise ValueError("flat entry count does not match shape")
        return cls([flat[r * cols:(r + 1) * cols] for r in range(rows)], cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def flat(self) -> Vector:
        return tuple(x for r in self._data for x in r)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"Matrix([{body}])"

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix([vadd(a, b) for a, b in zip(self._data, other._data)], self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix([vsub(a, b) for a, b in zip(self._data, other._data)], self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix([tuple(-x for x in r) for r in self._data], self.cols)

    def scale(self, c) -> "Matrix":
        c = to_scalar(c)
        return Matrix([vscale(c, r) for r in self._data], self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = [other.column(j) for j in range(other.cols)]
        return Matrix(
            [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in ocols]
             for r in self._data],
            other.cols,
        )

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for matrix with {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self._data)

    def transpose(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self.cols)], self.rows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self._data)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def rank(self) -> int:
        return len(rref(self)[1])


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    # in-place Gauss-Jordan on a list of mutable rows; returns nonzero rows and pivots
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = [x / lead for x in rows[r]]
        prow = rows[r]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in nz:
                        ri[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form of ``m`` and its pivot columns.

    The returned matrix has the same shape as ``m``; zero rows sit at the bottom.
    """
    rows = [list(r) for r in m]
    reduced, pivots = _rref_rows(rows, m.cols)
    reduced = reduced + [[Fraction(0)] * m.cols for _ in range(m.rows - len(reduced))]
    return Matrix(reduced, m.cols), tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim held by its canonical (RREF) basis.

    Two Subspace objects compare equal exactly when they span the same space.
    Build instances through :meth:`span`, never by passing an arbitrary basis.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = []
        for v in vectors:
            v = list(vec(v))
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            if any(v):
                rows.append(v)
        reduced, _ = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in reduced))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(unit_vec(ambient_dim, i) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(b) if x) for b in self.basis)

    def canonicalize(self) -> "Subspace":
        return Subspace.span(self.ambient_dim, self.basis)

    def contains(self, v: Sequence) -> bool:
        return subspace_contains(self, v)

    def issubspace(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersection(self, other)


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")


def nullspace(m: Matrix) -> Subspace:
    """Kernel of ``m`` as a canonical Subspace of Q^cols."""
    _, basis = nullspace_basis([list(r) for r in m], m.cols)
    return Subspace.span(m.cols, basis)


def nullspace_basis(rows: list[list[Fraction]], ncols: int) -> tuple[int, list[Vector]]:
    """Rank and the standard free-variable kernel basis of a row list (rows are consumed)."""
    reduced, pivots = _rref_rows(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[free]
        basis.append(tuple(v))
    return len(pivots), basis


def subspace_contains(s: Subspace, v: Sequence) -> bool:
    v = list(vec(v))
    if len(v) != s.ambient_dim:
        raise ValueError(f"vector of length {len(v)} in ambient dimension {s.ambient_dim}")
    # reduce v against the RREF basis; v is in the span iff nothing is left
    for b, p in zip(s.basis, s.pivots()):
        f = v[p]
        if f:
            v = [x - f * y for x, y in zip(v, b)]
    return not any(v)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace.span(a.ambient_dim, a.basis + b.basis)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the kernel of the stacked bases [A | -B]."""
    _check_ambient(a, b)
    if not a.basis or not b.basis:
        return Subspace.zero(a.ambient_dim)
    n = a.ambient_dim
    ka, kb = a.dim, b.dim
    # columns: coefficients of a's basis then b's basis; rows: ambient coordinates
    rows = [[a.basis[i][c] for i in range(ka)] + [-b.basis[j][c] for j in range(kb)] for c in range(n)]
    _, kernel = nullspace_basis(rows, ka + kb)
    vectors = []
    for coeffs in kernel:
        w = zero_vec(n)
        for i in range(ka):
            if coeffs[i]:
                w = vadd(w, vscale(coeffs[i], a.basis[i]))
        vectors.append(w)
    return Subspace.span(n, vectors)


def solve(m: Matrix, rhs: Sequence) -> Vector | None:
    """One exact solution of ``m x = rhs``, or None when inconsistent."""
    rhs = vec(rhs)
    if len(rhs) != m.rows:
        raise ValueError("right-hand side length does not match matrix rows")
    rows = [list(r) + [b] for r, b in zip(m, rhs)]
    reduced, pivots = _rref_rows(rows, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for row, p in zip(reduced, pivots):
        x[p] = row[m.cols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    """Exact inverse of a square matrix; ValueError if singular."""
    if m.rows != m.cols:
        raise ValueError("only square matrices are invertible")
    n = m.rows
    rows = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(m)]
    reduced, pivots = _rref_rows(rows, 2 * n)
    if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return Matrix([r[n:] for r in reduced], n)
