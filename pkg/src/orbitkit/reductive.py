"""Trace-form duality, exact Jordan decomposition, and parabolic data.

For a matrix Lie algebra with nondegenerate trace form, a dual element is
identified with a matrix x, split exactly into commuting hyperbolic,
elliptic and nilpotent parts over Q, and the positive part of the
ad(x_h)-grading assembles the parabolic q = g^0 (+) u.  The split is
restricted to spectra inside Q(i): every irreducible factor of the minimal
polynomial must be linear, or quadratic with negative discriminant whose
imaginary part is rational; anything else is refused with the offending
factor named.

semisimple + nilpotent is computed by Newton iteration against the
squarefree part of the characteristic polynomial, with the inverse of its
derivative obtained once by extended gcd; everything stays in Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .liealg import (
    Covector,
    LieAlgebra,
    ad_matrix,
    kks_pairing,
    restrict,
    stabilizer,
    validate,
)
from .linalg import (
    Matrix,
    ONE,
    Subspace,
    ZERO,
    rank_kernel,
    solve,
    vec,
)
from .polynomials import (
    charpoly,
    compose_mod,
    deg,
    divmod_poly,
    derivative,
    eval_matrix,
    gcd,
    invert_mod,
    is_rational_square,
    monic,
    mul,
    poly,
    rational_roots,
    squarefree_part,
    to_string,
    xgcd,
)


class UnsupportedSpectrumError(ValueError):
    """Spectrum leaves Q(i); carries the offending irreducible factor."""

    def __init__(self, factor: tuple, reason: str):
        self.factor = factor
        self.reason = reason
        super().__init__(f"unsupported spectrum: factor {to_string(factor)} ({reason})")


@dataclass(frozen=True)
class MatrixLieAlgebra:
    algebra: LieAlgebra
    trace_gram: Matrix  # G[i][j] = Tr(R_i R_j)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def rep(self) -> tuple:
        return self.algebra.matrix_rep


def matrix_lie_algebra(alg: LieAlgebra) -> MatrixLieAlgebra:
    """Wrap an algebra with a faithful representation and nondegenerate trace form."""
    if alg.matrix_rep is None:
        raise ValueError("algebra carries no matrix representation")
    report = validate(alg)
    if not report.ok:
        raise ValueError("representation brackets do not match the structure constants"
                         if report.rep_failures else "algebra fails validation")
    n = alg.dim
    gram = Matrix([[(alg.matrix_rep[i] * alg.matrix_rep[j]).trace() for j in range(n)]
                   for i in range(n)])
    if rank_kernel(gram)[0] != n:
        raise ValueError("degenerate trace form: dual space cannot be identified with the algebra")
    return MatrixLieAlgebra(alg, gram)


def element_matrix(malg: MatrixLieAlgebra, coords: Sequence) -> Matrix:
    coords = vec(coords)
    out = malg.rep[0].scale(ZERO)
    for c, r in zip(coords, malg.rep):
        if c != 0:
            out = out + r.scale(c)
    return out


def element_coords(malg: MatrixLieAlgebra, m: Matrix) -> tuple:
    """Coordinates of a representation matrix in the algebra basis."""
    cols = [[x for row in r.entries for x in row] for r in malg.rep]
    flat = [x for row in m.entries for x in row]
    sol = solve(Matrix(cols).transpose(), flat)
    if sol is None:
        raise ValueError("matrix does not lie in the algebra")
    return sol


def element_to_covector(malg: MatrixLieAlgebra, coords: Sequence) -> Covector:
    """Trace-form dual of an algebra element."""
    x = element_matrix(malg, coords)
    return Covector(malg.algebra, [(x * r).trace() for r in malg.rep])


def covector_to_element(malg: MatrixLieAlgebra, cov: Covector) -> tuple:
    """Inverse of element_to_covector; exact solve against the Gram matrix."""
    sol = solve(malg.trace_gram, cov.coords)
    if sol is None:
        raise ValueError("trace form failed to invert (degenerate?)")
    return sol


def jordan_chevalley(x: Matrix) -> tuple[Matrix, Matrix]:
    """Exact semisimple + nilpotent decomposition x = s + n.

    s is a polynomial in x, found by Newton iteration against the
    squarefree part mu of the characteristic polynomial: p <- p - mu(p) *
    (mu')^{-1}(p), all modulo the characteristic polynomial.  Quadratic
    convergence needs ceil(log2(multiplicity)) rounds; the loop simply runs
    until mu(p) vanishes.
    """
    if x.rows != x.cols:
        raise ValueError("square matrix required")
    chi = charpoly(x)
    mu = squarefree_part(chi)
    if mu == monic(chi):
        return x, Matrix.zeros(x.rows, x.cols)  # already squarefree: x semisimple
    inv_mu_prime = invert_mod(derivative(mu), mu)
    p = poly([0, 1])
    for _ in range(x.rows.bit_length() + 2):
        val = compose_mod(mu, p, chi)
        if not val:
            break
        corr = compose_mod(inv_mu_prime, p, chi)
        p = divmod_poly(poly([a - b for a, b in _zip_pad(p, mul(val, corr))]), chi)[1]
    else:
        raise AssertionError("Newton iteration failed to converge")
    s = eval_matrix(p, x)
    return s, x - s


def _zip_pad(p: tuple, q: tuple):
    n = max(len(p), len(q))
    return [
        (p[i] if i < len(p) else ZERO, q[i] if i < len(q) else ZERO)
        for i in range(n)
    ]


def _factor_squarefree(p: tuple) -> list[tuple]:
    """Monic irreducible factors of a squarefree rational polynomial."""
    import sympy  # deferred: exact factorization is the only use

    xsym = sympy.Symbol("x")
    spoly = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(p)], xsym, domain="QQ"
    )
    _, factors = spoly.factor_list()
    out = []
    for fac, mult in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        f = monic(poly(coeffs))
        out.extend([f] * mult)
    return out


def hyperbolic_elliptic_split(s: Matrix) -> tuple[Matrix, Matrix]:
    """Split a semisimple rational matrix into hyperbolic + elliptic parts.

    The hyperbolic part is sum a_i pi_i over the irreducible factors of the
    minimal polynomial, with a_i the (rational) real part of the factor's
    roots and pi_i the spectral projector built from the partial-fraction
    idempotents; the elliptic part is the remainder.
    """
    chi = charpoly(s)
    mu = squarefree_part(chi)
    if not eval_matrix(mu, s).is_zero():
        raise ValueError("matrix is not semisimple: squarefree minimal polynomial required")
    factors = _factor_squarefree(mu)
    real_parts = []
    for f in factors:
        if deg(f) == 1:
            real_parts.append(-f[0] / f[1])
        elif deg(f) == 2:
            c0, c1, c2 = f[0] / f[2], f[1] / f[2], ONE
            disc = c1 * c1 - 4 * c0
            if disc >= 0:
                raise UnsupportedSpectrumError(f, "irrational real eigenvalues")
            if is_rational_square(-disc) is None:
                raise UnsupportedSpectrumError(f, "imaginary part is irrational")
            real_parts.append(-c1 / 2)
        else:
            raise UnsupportedSpectrumError(f, f"irreducible factor of degree {deg(f)}")
    n = s.rows
    xh = Matrix.zeros(n, n)
    for f, a in zip(factors, real_parts):
        if a == 0:
            continue
        g = divmod_poly(mu, f)[0]
        w = invert_mod(divmod_poly(g, f)[1], f)
        idem = divmod_poly(mul(g, w), mu)[1]
        xh = xh + eval_matrix(idem, s).scale(a)
    return xh, s - xh


@dataclass(frozen=True)
class JordanTriple:
    x: Matrix
    hyperbolic: Matrix
    elliptic: Matrix
    nilpotent: Matrix

    def to_json_dict(self):
        grid = lambda m: [[str(v) for v in row] for row in m.entries]
        return {
            "x": grid(self.x),
            "hyperbolic": grid(self.hyperbolic),
            "elliptic": grid(self.elliptic),
            "nilpotent": grid(self.nilpotent),
        }


def jordan_triple(x: Matrix) -> JordanTriple:
    """x = x_h + x_e + x_n with commuting parts, exact over Q."""
    s, n = jordan_chevalley(x)
    xh, xe = hyperbolic_elliptic_split(s)
    return JordanTriple(x, xh, xe, n)


@dataclass(frozen=True)
class Grading:
    eigenvalues: tuple           # sorted rationals
    spaces: dict                 # eigenvalue -> Subspace (algebra coordinates)

    def space(self, a) -> Subspace:
        return self.spaces.get(Fraction(a))

    def to_json_dict(self):
        return {
            str(a): [[str(x) for x in row] for row in self.spaces[a].basis_rows()]
            for a in self.eigenvalues
        }


def grade(malg: MatrixLieAlgebra, xh: Union[Matrix, Sequence]) -> Grading:
    """Eigenspace grading of the algebra under ad(x_h).

    Refuses when ad(x_h) is not diagonalizable with rational eigenvalues;
    verifies the direct-sum and bracket-grading laws before returning.
    """
    coords = element_coords(malg, xh) if isinstance(xh, Matrix) else vec(xh)
    alg = malg.algebra
    ad = ad_matrix(alg, coords)
    eigs = rational_roots(charpoly(ad))
    spaces = {}
    total = 0
    n = alg.dim
    for a in eigs:
        shifted = ad - Matrix.identity(n).scale(a)
        _, ker = rank_kernel(shifted)
        if ker.dim:
            spaces[a] = ker
            total += ker.dim
    if total != n:
        raise UnsupportedSpectrumError(charpoly(ad),
                                       "ad(x_h) is not diagonalizable over Q")
    eigenvalues = tuple(sorted(spaces))
    # bracket grading [g^a, g^b] <= g^{a+b}
    for a in eigenvalues:
        for b in eigenvalues:
            target = spaces.get(a + b)
            for u in spaces[a].basis_rows():
                for v in spaces[b].basis_rows():
                    w = alg.bracket(u, v)
                    if target is None:
                        if any(x != 0 for x in w):
                            raise AssertionError("bracket grading violated")
                    elif not target.contains(w):
                        raise AssertionError("bracket grading violated")
    return Grading(eigenvalues, spaces)


def _trace_annihilator(malg: MatrixLieAlgebra, sub: Subspace) -> Subspace:
    """Elements trace-orthogonal to sub (the dual annihilator, identified)."""
    if sub.dim == 0:
        return Subspace.full(malg.dim)
    rows = [malg.trace_gram.apply(r) for r in sub.basis_rows()]
    return rank_kernel(Matrix(rows))[1]


@dataclass(frozen=True)
class ParabolicReport:
    x_coords: tuple
    triple: JordanTriple
    grading: Grading
    g0: Subspace
    u: Subspace
    q: Subspace
    stabilizer_in_g0: bool       # (16a) infinitesimal
    image_is_annihilator: bool   # (16b)
    ad_x_bijective_on_u: bool    # (16c) first half
    hull_matches_annihilator: bool  # (16c) second half, Krylov under u
    trace_blocks_ok: bool
    levi_pairing_zero: bool
    dim_x: int
    dim_y: int
    dims_match: bool

    def all_relations(self) -> bool:
        return (
            self.stabilizer_in_g0
            and self.image_is_annihilator
            and self.ad_x_bijective_on_u
            and self.hull_matches_annihilator
            and self.trace_blocks_ok
            and self.levi_pairing_zero
            and self.dims_match
        )

    def to_json_dict(self):
        return {
            "x": [str(c) for c in self.x_coords],
            "grading": self.grading.to_json_dict(),
            "q_dim": self.q.dim,
            "q_basis": [[str(x) for x in row] for row in self.q.basis_rows()],
            "u_dim": self.u.dim,
            "relations": {
                "stabilizer_in_g0": self.stabilizer_in_g0,
                "image_is_annihilator": self.image_is_annihilator,
                "ad_x_bijective_on_u": self.ad_x_bijective_on_u,
                "hull_matches_annihilator": self.hull_matches_annihilator,
                "trace_blocks": self.trace_blocks_ok,
                "levi_pairing_zero": self.levi_pairing_zero,
            },
            "dimensions": {
                "dim_x": self.dim_x,
                "dim_y": self.dim_y,
                "consistent": self.dims_match,
            },
        }


def parabolic_report(malg: MatrixLieAlgebra, x: Union[Matrix, Sequence, Covector]) -> ParabolicReport:
    """Build q = g^0 (+) u at x and verify the induction relations exactly.

    x may be a representation matrix, algebra coordinates, or a covector
    (converted through the trace form).
    """
    if isinstance(x, Covector):
        coords = covector_to_element(malg, x)
    elif isinstance(x, Matrix):
        coords = element_coords(malg, x)
    else:
        coords = vec(x)
    alg = malg.algebra
    xmat = element_matrix(malg, coords)
    triple = jordan_triple(xmat)
    grading = grade(malg, triple.hyperbolic)
    n = alg.dim

    g0 = grading.spaces.get(Fraction(0), Subspace.zero(n))
    u = Subspace.zero(n)
    for a in grading.eigenvalues:
        if a > 0:
            u = u.add(grading.spaces[a])
    q = g0.add(u)

    ad_x = ad_matrix(alg, coords)
    stab_ok = g0.contains_subspace(rank_kernel(ad_x)[1])

    moved = Subspace(n, [alg.bracket(z, coords) for z in u.basis_rows()])
    ann_q = _trace_annihilator(malg, q)
    image_ok = moved == ann_q

    inside = all(u.contains(alg.bracket(z, coords)) for z in u.basis_rows())
    restricted_rank = Subspace(n, [alg.bracket(z, coords) for z in u.basis_rows()]).dim
    bijective = inside and restricted_rank == u.dim

    hull = moved
    while True:
        grown = hull
        for z in u.basis_rows():
            grown = grown.add(Subspace(n, [alg.bracket(z, w) for w in hull.basis_rows()]))
        if grown == hull:
            break
        hull = grown
    hull_ok = hull == ann_q

    blocks_ok = True
    for a in grading.eigenvalues:
        for b in grading.eigenvalues:
            pa, pb = grading.spaces[a], grading.spaces[b]
            pairing = Matrix(
                [[(element_matrix(malg, ra) * element_matrix(malg, rb)).trace()
                  for rb in pb.basis_rows()] for ra in pa.basis_rows()]
            ) if pa.dim and pb.dim else None
            if pairing is None:
                continue
            if a + b != 0:
                if not pairing.is_zero():
                    blocks_ok = False
            else:
                if pa.dim != pb.dim or rank_kernel(pairing)[0] != pa.dim:
                    blocks_ok = False

    levi_ok = all((xmat * element_matrix(malg, z)).trace() == 0 for z in u.basis_rows())

    cov = element_to_covector(malg, coords)
    dim_x = rank_kernel(kks_pairing(alg, cov))[0]
    cov_q, emb = restrict(alg, cov, q)
    dim_y = rank_kernel(kks_pairing(emb.algebra, cov_q))[0]
    dims_ok = dim_x == 2 * (n - q.dim) + dim_y

    return ParabolicReport(
        x_coords=tuple(coords),
        triple=triple,
        grading=grading,
        g0=g0,
        u=u,
        q=q,
        stabilizer_in_g0=stab_ok,
        image_is_annihilator=image_ok,
        ad_x_bijective_on_u=bijective,
        hull_matches_annihilator=hull_ok,
        trace_blocks_ok=blocks_ok,
        levi_pairing_zero=levi_ok,
        dim_x=dim_x,
        dim_y=dim_y,
        dims_match=dims_ok,
    )
