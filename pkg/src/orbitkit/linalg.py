"""Exact linear algebra over arbitrary-precision rationals.

Vectors are tuples of Fraction, matrices are immutable row-major grids of
Fraction, and subspaces are stored through their reduced row echelon basis
with zero rows removed.  That canonical form is the equality witness used
everywhere above this module: two subspaces are equal iff their basis grids
are identical, so inclusion and equality questions about subalgebras,
stabilizers and annihilators are decided without tolerances.

No floating point enters this module.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints or strings like '3/4' to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point is not allowed in exact computations")
    return Fraction(x)


def vec(entries: Iterable) -> tuple:
    return tuple(frac(x) for x in entries)


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Sequence) -> tuple:
    c = frac(c)
    return tuple(c * a for a in u)


def vec_dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), ZERO)


def is_zero_vec(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def basis_vector(n: int, j: int) -> tuple:
    return tuple(ONE if i == j else ZERO for i in range(n))


class Matrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        grid = tuple(tuple(frac(x) for x in row) for row in entries)
        self.entries = grid
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else 0
        if any(len(row) != self.cols for row in grid):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "Matrix":
        rows = list(rows)
        if not rows:
            raise ValueError("from_rows needs at least one row; use zeros otherwise")
        return cls(rows)

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.entries)) if self.rows else Matrix.zeros(self.cols, 0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix[{self.rows}x{self.cols}: {body}]"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            tuple(a - b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)
        )

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(-a for a in row) for row in self.entries)

    def scale(self, c) -> "Matrix":
        c = frac(c)
        return Matrix(tuple(c * a for a in row) for row in self.entries)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        cols = other.transpose().entries
        return Matrix(
            tuple(vec_dot(row, col) for col in cols) for row in self.entries
        )

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(vec_dot(row, v) for row in self.entries)

    def is_zero(self) -> bool:
        return all(is_zero_vec(row) for row in self.entries)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), ZERO)

    def power(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out * self
        return out

    def _same_shape(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot column indices."""
        m = [list(row) for row in self.entries]
        nrows, ncols = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(ncols):
            pivot_row = None
            for i in range(r, nrows):
                if m[i][c] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = ONE / m[r][c]
            m[r] = [inv * x for x in m[r]]
            for i in range(nrows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        return Matrix(m) if m else Matrix.zeros(0, ncols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])


def solve(m: Matrix, v: Sequence) -> Optional[tuple]:
    """Solve m x = v exactly; None when the system is inconsistent.

    When solutions form an affine space an arbitrary but deterministic
    representative (free variables set to zero) is returned.
    """
    if len(v) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    aug = Matrix(tuple(row) + (val,) for row, val in zip(m.entries, vec(v))) if m.rows \
        else Matrix.zeros(0, m.cols + 1)
    red, pivots = aug.rref()
    if m.cols in pivots:  # pivot in the augmented column
        return None
    x = [ZERO] * m.cols
    for r, c in enumerate(pivots):
        x[c] = red.entries[r][m.cols]
    return tuple(x)


class Subspace:
    """Linear subspace of Q^n with canonical reduced-row-echelon basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, generators: Iterable[Iterable] = ()):
        rows = [vec(row) for row in generators]
        for row in rows:
            if len(row) != ambient_dim:
                raise ValueError("generator length does not match ambient dimension")
        if rows:
            red, pivots = Matrix(rows).rref()
            kept = red.entries[: len(pivots)]
        else:
            kept = ()
        self.ambient_dim = ambient_dim
        self.basis = Matrix(kept) if kept else Matrix.zeros(0, ambient_dim)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n).entries)

    @classmethod
    def span(cls, n: int, rows: Iterable[Iterable]) -> "Subspace":
        return cls(n, rows)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def basis_rows(self) -> tuple:
        return self.basis.entries

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim}: {self.basis.entries})"

    def contains(self, v: Sequence) -> bool:
        v = list(vec(v))
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        # reduce against the RREF basis
        for row in self.basis.entries:
            p = next(j for j, x in enumerate(row) if x != 0)
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return is_zero_vec(v)

    def coords_of(self, v: Sequence):
        """Coordinates of v in the canonical basis, or None if outside."""
        if self.dim == 0:
            return () if is_zero_vec(vec(v)) else None
        return solve(self.basis.transpose(), v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._same_ambient(other)
        return all(self.contains(row) for row in other.basis.entries)

    def add(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        return Subspace(self.ambient_dim, self.basis.entries + other.basis.entries)

    def intersect(self, other: "Subspace") -> "Subspace":
        return sum_intersect(self, other)[1]

    def _same_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")


def rank_kernel(m: Matrix) -> tuple[int, Subspace]:
    """Rank and kernel of a matrix; rank + dim(kernel) = cols."""
    red, pivots = m.rref()
    n = m.cols
    free = [j for j in range(n) if j not in pivots]
    kernel_rows = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -red.entries[r][f]
        kernel_rows.append(v)
    return len(pivots), Subspace(n, kernel_rows)


def sum_intersect(a: Subspace, b: Subspace) -> tuple[Subspace, Subspace]:
    """Sum and intersection of two subspaces (Zassenhaus block trick)."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    n = a.ambient_dim
    rows = [tuple(r) + tuple(r) for r in a.basis.entries]
    rows += [tuple(r) + (ZERO,) * n for r in b.basis.entries]
    if not rows:
        return Subspace.zero(n), Subspace.zero(n)
    red, pivots = Matrix(rows).rref()
    sum_rows, meet_rows = [], []
    for row in red.entries[: len(pivots)]:
        left, right = row[:n], row[n:]
        if is_zero_vec(left):
            meet_rows.append(right)
        else:
            sum_rows.append(left)
    return Subspace(n, sum_rows), Subspace(n, meet_rows)


def annihilator(s: Subspace) -> Subspace:
    """All dual vectors pairing to zero with s (coordinate pairing)."""
    if s.dim == 0:
        return Subspace.full(s.ambient_dim)
    return rank_kernel(s.basis)[1]


def image(m: Matrix) -> Subspace:
    """Column space of m, as a subspace of Q^rows."""
    return Subspace(m.rows, m.transpose().entries)


def solve_in_subspace(m: Matrix, sub: Subspace, v: Sequence) -> Optional[tuple]:
    """Find x in sub with m x = v, or None.

    Returned vector lives in the ambient space of sub.
    """
    if sub.dim == 0:
        return tuple([ZERO] * sub.ambient_dim) if is_zero_vec(vec(v)) else None
    restricted = m * sub.basis.transpose()
    t = solve(restricted, v)
    if t is None:
        return None
    out = [ZERO] * sub.ambient_dim
    for coeff, row in zip(t, sub.basis.entries):
        out = [a + coeff * b for a, b in zip(out, row)]
    return tuple(out)


def symmetric_signature(m: Matrix) -> tuple[int, int, int]:
    """(positives, negatives, rank) of a symmetric rational matrix.

    Exact congruence diagonalization; no eigenvalues are computed.
    """
    if m.rows != m.cols:
        raise ValueError("signature of non-square matrix")
    n = m.rows
    a = [list(row) for row in m.entries]
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    def add_into(i, j, f):
        # row_i += f*row_j and col_i += f*col_j
        a[i] = [x + f * y for x, y in zip(a[i], a[j])]
        for row in a:
            row[i] = row[i] + f * row[j]

    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            found = None
            for i in range(k + 1, n):
                if a[i][i] != 0:
                    found = i
                    break
            if found is not None:
                swap(k, found)
            else:
                off = None
                for i in range(k, n):
                    for j in range(i + 1, n):
                        if a[i][j] != 0:
                            off = (i, j)
                            break
                    if off:
                        break
                if off is None:
                    break  # remaining block is zero
                i, j = off
                add_into(i, j, ONE)  # makes a[i][i] = 2*a[i][j] != 0
                if i != k:
                    swap(k, i)
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                add_into(i, k, -a[i][k] / d)
    return pos, neg, pos + neg
