"""Lie algebras presented by structure constants, and their coadjoint data.

An algebra is a tensor c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
Everything downstream (stabilizers, orbit dimensions, affine hulls,
annihilator conditions) reduces here to exact kernels and ranks of the
pairing matrix B[i][j] = <cov, [e_i, e_j]> attached to a covector.

Conventions, fixed once for the whole package:
  * covectors are coordinate tuples in the dual basis;
  * the infinitesimal coadjoint action is Z(m) = <m, [., Z]>, so in
    coordinates Z(cov) = B_cov . Z and the generator matrix of Z on the
    dual space is -ad(Z)^T;
  * subalgebras are handed around as canonical Subspace values, and their
    own structure constants are taken in the RREF basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .linalg import (
    Matrix,
    ONE,
    Subspace,
    ZERO,
    annihilator,
    basis_vector,
    frac,
    image,
    is_zero_vec,
    rank_kernel,
    solve,
    sum_intersect,
    symmetric_signature,
    vec,
    vec_add,
    vec_dot,
    vec_scale,
)


class NotClosedError(ValueError):
    """A subspace expected to be a subalgebra or ideal is not closed."""


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    labels: tuple[str, ...]
    structure: tuple  # c[i][j][k] grid of Fraction
    matrix_rep: Optional[tuple[Matrix, ...]] = None
    name: str = ""

    def __post_init__(self):
        if len(self.labels) != self.dim:
            raise ValueError("label count does not match dimension")
        if len(self.structure) != self.dim or any(
            len(plane) != self.dim or any(len(row) != self.dim for row in plane)
            for plane in self.structure
        ):
            raise ValueError("structure tensor must be dim x dim x dim")
        if self.matrix_rep is not None and len(self.matrix_rep) != self.dim:
            raise ValueError("matrix representation must give one matrix per basis element")

    @classmethod
    def from_brackets(cls, labels: Sequence[str], brackets: dict, name: str = "",
                      matrix_rep=None) -> "LieAlgebra":
        """Build from a {(i, j): {k: coeff}} dict given for i < j only."""
        n = len(labels)
        c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < j < n):
                raise ValueError(f"bracket pair ({i},{j}) must satisfy 0 <= i < j < dim")
            for k, val in coeffs.items():
                v = frac(val)
                c[i][j][k] = v
                c[j][i][k] = -v
        tensor = tuple(tuple(tuple(row) for row in plane) for plane in c)
        rep = tuple(matrix_rep) if matrix_rep is not None else None
        return cls(n, tuple(labels), tensor, rep, name)

    def bracket_basis(self, i: int, j: int) -> tuple:
        return tuple(self.structure[i][j])

    def bracket(self, u: Sequence, v: Sequence) -> tuple:
        u, v = vec(u), vec(v)
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                coeff = a * b
                for k, cijk in enumerate(self.structure[i][j]):
                    if cijk != 0:
                        out[k] += coeff * cijk
        return tuple(out)

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None


@dataclass(frozen=True)
class Covector:
    algebra: LieAlgebra
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", vec(self.coords))
        if len(self.coords) != self.algebra.dim:
            raise ValueError("covector length does not match algebra dimension")

    def pair(self, v: Sequence) -> Fraction:
        return vec_dot(self.coords, v)

    def is_zero(self) -> bool:
        return is_zero_vec(self.coords)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    antisymmetry_failures: tuple  # (i, j, k) triples
    jacobi_failures: tuple        # (i, j, k, defect vector)
    rep_failures: tuple           # (i, j, defect matrix) when a matrix rep is present

    def to_json_dict(self):
        return {
            "ok": self.ok,
            "antisymmetry_failures": [list(t[:3]) for t in self.antisymmetry_failures],
            "jacobi_failures": [
                {"triple": [i, j, k], "defect": [str(x) for x in d]}
                for (i, j, k, d) in self.jacobi_failures
            ],
            "rep_failures": [[i, j] for (i, j, _) in self.rep_failures],
        }


@lru_cache(maxsize=None)
def validate(alg: LieAlgebra) -> ValidationReport:
    """Check antisymmetry and the Jacobi identity on all basis triples."""
    anti = []
    n = alg.dim
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if alg.structure[i][j][k] != -alg.structure[j][i][k]:
                    anti.append((i, j, k))
    jac = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                s = vec_add(
                    vec_add(
                        alg.bracket(basis_vector(n, i), alg.bracket_basis(j, k)),
                        alg.bracket(basis_vector(n, j), alg.bracket_basis(k, i)),
                    ),
                    alg.bracket(basis_vector(n, k), alg.bracket_basis(i, j)),
                )
                if not is_zero_vec(s):
                    jac.append((i, j, k, s))
    rep = []
    if alg.matrix_rep is not None:
        for i in range(n):
            for j in range(i + 1, n):
                ri, rj = alg.matrix_rep[i], alg.matrix_rep[j]
                comm = ri * rj - rj * ri
                expected = Matrix.zeros(ri.rows, ri.cols)
                for k, c in enumerate(alg.bracket_basis(i, j)):
                    if c != 0:
                        expected = expected + alg.matrix_rep[k].scale(c)
                if comm != expected:
                    rep.append((i, j, comm - expected))
    return ValidationReport(not (anti or jac or rep), tuple(anti), tuple(jac), tuple(rep))


def ad_matrix(alg: LieAlgebra, z: Sequence) -> Matrix:
    """Matrix of ad(Z); column j holds the coordinates of [Z, e_j]."""
    z = vec(z)
    n = alg.dim
    cols = [alg.bracket(z, basis_vector(n, j)) for j in range(n)]
    return Matrix(zip(*cols))


def coadjoint_matrix(alg: LieAlgebra, z: Sequence) -> Matrix:
    """Generator of the coadjoint action of Z on dual coordinates: -ad(Z)^T."""
    return -ad_matrix(alg, z).transpose()


def kks_pairing(alg: LieAlgebra, cov: Covector) -> Matrix:
    """Antisymmetric matrix B[i][j] = <cov, [e_i, e_j]>."""
    n = alg.dim
    return Matrix(
        [[cov.pair(alg.bracket_basis(i, j)) for j in range(n)] for i in range(n)]
    )


def coadjoint_image(alg: LieAlgebra, cov: Covector, sub: Subspace) -> Subspace:
    """The subspace {W(cov) : W in sub} of the dual."""
    b = kks_pairing(alg, cov)
    return Subspace(alg.dim, [b.apply(row) for row in sub.basis_rows()])


def stabilizer(alg: LieAlgebra, cov: Covector) -> Subspace:
    return rank_kernel(kks_pairing(alg, cov))[1]


def krylov_hull(alg: LieAlgebra, cov: Covector) -> Subspace:
    """Smallest coadjoint-invariant subspace of the dual containing g(cov).

    The identity-component orbit of cov lies in cov + hull; for nilpotent
    algebras the hull is exactly the direction space of the orbit's affine
    hull.
    """
    n = alg.dim
    u = coadjoint_image(alg, cov, Subspace.full(n))
    gens = [coadjoint_matrix(alg, basis_vector(n, i)) for i in range(n)]
    while True:
        nxt = u
        for g in gens:
            nxt = nxt.add(Subspace(n, [g.apply(row) for row in u.basis_rows()]))
        if nxt == u:
            return u
        u = nxt


@dataclass(frozen=True)
class OrbitRecord:
    covector: Covector
    pairing: Matrix
    orbit_dim: int
    stabilizer: Subspace
    affine_hull_dirs: Subspace
    hull_exact: bool  # True when the algebra is nilpotent

    def to_json_dict(self):
        return {
            "covector": [str(x) for x in self.covector.coords],
            "orbit_dim": self.orbit_dim,
            "stabilizer_dim": self.stabilizer.dim,
            "stabilizer_basis": _rows_json(self.stabilizer),
            "affine_hull_dim": self.affine_hull_dirs.dim,
            "affine_hull_basis": _rows_json(self.affine_hull_dirs),
            "hull_exact": self.hull_exact,
        }


def orbit_record(alg: LieAlgebra, cov: Covector) -> OrbitRecord:
    """Orbit dimension, stabilizer and affine hull data at a covector."""
    report = validate(alg)
    if not report.ok:
        raise ValueError("algebra fails validation; see validate()")
    b = kks_pairing(alg, cov)
    rank, ker = rank_kernel(b)
    hull = krylov_hull(alg, cov)
    return OrbitRecord(cov, b, rank, ker, hull, structure_probe(alg).is_nilpotent)


def orbit_annihilator(alg: LieAlgebra, cov: Covector,
                      hull: Optional[Subspace] = None) -> Subspace:
    """Elements pairing to zero with every point of cov + hull.

    This is the extraneous ideal of the identity-component orbit: the
    kernel of Z -> <., Z> as a function on the orbit's affine hull.
    """
    if hull is None:
        hull = krylov_hull(alg, cov)
    rows = [cov.coords] + list(hull.basis_rows())
    return rank_kernel(Matrix(rows))[1]


@dataclass(frozen=True)
class EmbeddedSubalgebra:
    parent: LieAlgebra
    space: Subspace
    algebra: LieAlgebra

    def to_parent(self, coords: Sequence) -> tuple:
        out = [ZERO] * self.parent.dim
        for c, row in zip(vec(coords), self.space.basis_rows()):
            out = [a + c * b for a, b in zip(out, row)]
        return tuple(out)

    def from_parent(self, v: Sequence) -> tuple:
        coords = self.space.coords_of(v)
        if coords is None:
            raise ValueError("vector does not lie in the subalgebra")
        return coords

    def lift_subspace(self, sub: Subspace) -> Subspace:
        return Subspace(self.parent.dim, [self.to_parent(r) for r in sub.basis_rows()])


def subalgebra(alg: LieAlgebra, sub: Subspace, name: str = "") -> EmbeddedSubalgebra:
    """Structure constants of a bracket-closed subspace in its RREF basis."""
    rows = sub.basis_rows()
    m = sub.dim
    tensor = [[[ZERO] * m for _ in range(m)] for _ in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            br = alg.bracket(rows[a], rows[b])
            coords = sub.coords_of(br)
            if coords is None:
                raise NotClosedError(
                    f"subspace is not a subalgebra: bracket of basis rows {a},{b} escapes"
                )
            for k, val in enumerate(coords):
                tensor[a][b][k] = val
                tensor[b][a][k] = -val
    labels = tuple(f"s{a}" for a in range(m))
    inner = LieAlgebra(m, labels,
                       tuple(tuple(tuple(r) for r in plane) for plane in tensor),
                       None, name or f"{alg.name}-sub")
    return EmbeddedSubalgebra(alg, sub, inner)


def restrict(alg: LieAlgebra, cov: Covector, sub: Subspace) -> tuple[Covector, EmbeddedSubalgebra]:
    """Restrict a covector to a subalgebra, in the canonical RREF basis."""
    emb = subalgebra(alg, sub)
    coords = tuple(cov.pair(row) for row in sub.basis_rows())
    return Covector(emb.algebra, coords), emb


@dataclass(frozen=True)
class QuotientAlgebra:
    parent: LieAlgebra
    ideal: Subspace
    reps: Matrix  # rows are coset representatives in parent coordinates
    algebra: LieAlgebra

    def project(self, v: Sequence) -> tuple:
        """Coordinates of v + ideal in the representative basis."""
        stacked = list(self.ideal.basis_rows()) + list(self.reps.entries)
        sol = solve(Matrix(stacked).transpose(), v)
        if sol is None:
            raise ValueError("vector outside parent space")  # cannot happen: full basis
        return tuple(sol[self.ideal.dim:])

    def lift(self, coords: Sequence) -> tuple:
        out = [ZERO] * self.parent.dim
        for c, row in zip(vec(coords), self.reps.entries):
            out = [a + c * b for a, b in zip(out, row)]
        return tuple(out)


def is_ideal(alg: LieAlgebra, sub: Subspace) -> bool:
    n = alg.dim
    for i in range(n):
        for row in sub.basis_rows():
            if not sub.contains(alg.bracket(basis_vector(n, i), row)):
                return False
    return True


def quotient(alg: LieAlgebra, ideal: Subspace, name: str = "") -> QuotientAlgebra:
    """Quotient algebra by an ideal, with canonical coset representatives.

    Representatives are the standard basis vectors at non-pivot columns of
    the ideal's RREF basis.
    """
    if not is_ideal(alg, ideal):
        raise NotClosedError("subspace is not an ideal")
    n = alg.dim
    pivots = set()
    for row in ideal.basis_rows():
        pivots.add(next(j for j, x in enumerate(row) if x != 0))
    rep_rows = [basis_vector(n, j) for j in range(n) if j not in pivots]
    m = len(rep_rows)
    reps = Matrix(rep_rows) if rep_rows else Matrix.zeros(0, n)
    tensor = [[[ZERO] * m for _ in range(m)] for _ in range(m)]
    stacked = list(ideal.basis_rows()) + rep_rows
    basis_matrix = Matrix(stacked).transpose() if stacked else None
    for a in range(m):
        for b in range(a + 1, m):
            br = alg.bracket(rep_rows[a], rep_rows[b])
            sol = solve(basis_matrix, br)
            coords = sol[ideal.dim:]
            for k, val in enumerate(coords):
                tensor[a][b][k] = val
                tensor[b][a][k] = -val
    labels = tuple(f"q{a}" for a in range(m))
    inner = LieAlgebra(m, labels,
                       tuple(tuple(tuple(r) for r in plane) for plane in tensor),
                       None, name or f"{alg.name}-quot")
    return QuotientAlgebra(alg, ideal, reps, inner)


def bracket_span(alg: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    rows = [
        alg.bracket(u, v)
        for u in a.basis_rows()
        for v in b.basis_rows()
    ]
    return Subspace(alg.dim, rows)


def ideal_closure(alg: LieAlgebra, sub: Subspace) -> Subspace:
    """Smallest ideal containing sub."""
    full = Subspace.full(alg.dim)
    cur = sub
    while True:
        nxt = cur.add(bracket_span(alg, full, cur))
        if nxt == cur:
            return cur
        cur = nxt


def center(alg: LieAlgebra) -> Subspace:
    # Z central iff sum_i Z_i c[i][j][k] = 0 for all j, k
    n = alg.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([alg.structure[i][j][k] for i in range(n)])
    return rank_kernel(Matrix(rows))[1]


def centralizer(alg: LieAlgebra, sub: Subspace) -> Subspace:
    """All Z with [Z, sub] = 0."""
    n = alg.dim
    if sub.dim == 0:
        return Subspace.full(n)
    # [Z, w]_k = sum_i Z_i (sum_j c[i][j][k] w_j): one linear row per (w, k)
    rows = []
    for w in sub.basis_rows():
        for k in range(n):
            rows.append(
                [sum((alg.structure[i][j][k] * w[j] for j in range(n)), ZERO)
                 for i in range(n)]
            )
    return rank_kernel(Matrix(rows))[1]


@lru_cache(maxsize=None)
def _ascending_central_series_cached(alg: LieAlgebra) -> tuple:
    return tuple(_ascending_central_series(alg))


def ascending_central_series(alg: LieAlgebra) -> list[Subspace]:
    return list(_ascending_central_series_cached(alg))


def _ascending_central_series(alg: LieAlgebra) -> list[Subspace]:
    """0 = Z_0 < Z_1 <= Z_2 <= ... until stabilization (Z_1 = center)."""
    n = alg.dim
    series = [Subspace.zero(n)]
    while True:
        prev = series[-1]
        if prev.dim == n:
            return series
        q = quotient(alg, prev)
        z_bar = center(q.algebra)
        lifted = prev.add(Subspace(n, [q.lift(r) for r in z_bar.basis_rows()]))
        if lifted == prev:
            return series
        series.append(lifted)


@dataclass(frozen=True)
class StructureProbe:
    center: Subspace
    derived_series: tuple
    lower_central_series: tuple
    is_solvable: bool
    is_nilpotent: bool
    killing_form: Matrix

    def killing_signature(self) -> tuple[int, int, int]:
        return symmetric_signature(self.killing_form)

    def to_json_dict(self):
        pos, neg, rank = self.killing_signature()
        return {
            "center_dim": self.center.dim,
            "derived_dims": [s.dim for s in self.derived_series],
            "lower_central_dims": [s.dim for s in self.lower_central_series],
            "is_solvable": self.is_solvable,
            "is_nilpotent": self.is_nilpotent,
            "killing_signature": {"positive": pos, "negative": neg, "rank": rank},
        }


@lru_cache(maxsize=None)
def structure_probe(alg: LieAlgebra) -> StructureProbe:
    """Center, derived/lower-central series, solvability, Killing form."""
    n = alg.dim
    full = Subspace.full(n)
    derived = [full]
    while derived[-1].dim > 0:
        nxt = bracket_span(alg, derived[-1], derived[-1])
        if nxt == derived[-1]:
            break
        derived.append(nxt)
    lower = [full]
    while lower[-1].dim > 0:
        nxt = bracket_span(alg, full, lower[-1])
        if nxt == lower[-1]:
            break
        lower.append(nxt)
    ads = [ad_matrix(alg, basis_vector(n, i)) for i in range(n)]
    killing = Matrix(
        [[(ads[i] * ads[j]).trace() for j in range(n)] for i in range(n)]
    ) if n else Matrix.zeros(0, 0)
    return StructureProbe(
        center=center(alg),
        derived_series=tuple(derived),
        lower_central_series=tuple(lower),
        is_solvable=derived[-1].dim == 0,
        is_nilpotent=lower[-1].dim == 0,
        killing_form=killing,
    )


def _rows_json(s: Subspace):
    return [[str(x) for x in row] for row in s.basis_rows()]
