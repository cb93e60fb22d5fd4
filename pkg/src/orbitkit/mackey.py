"""The three-step normal subgroup analysis at the Lie-algebra level.

Step 1 (little group): restrict a covector to an ideal n and collect the
stabilizer data g_c, n_c, h = n + g_c.  Step 2 (induction): certify the
three relations that make the orbit induced from h -- stabilizer
containment, the annihilator identity n_c(cov) = ann(h), and exact
exp-linearity of the n_c flows.  Step 3 (obstruction): build the central
extension 0 -> n_c/j -> h_c/j -> h_c/n_c with j = ker(c on n_c), compute
its 2-cocycle through a linear section, and decide triviality by an exact
coboundary solve.

Only infinitesimal data is computed: group components, coverings and the
group-level cocycle need global input that structure constants cannot
supply, and the reports say so where it matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .conditions import orth
from .liealg import (
    Covector,
    EmbeddedSubalgebra,
    LieAlgebra,
    NotClosedError,
    QuotientAlgebra,
    ad_matrix,
    bracket_span,
    coadjoint_image,
    is_ideal,
    kks_pairing,
    orbit_record,
    quotient,
    restrict,
    stabilizer,
    structure_probe,
    subalgebra,
    validate,
)
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
    vec,
    vec_add,
    vec_scale,
)


@dataclass(frozen=True)
class LittleGroupData:
    algebra: LieAlgebra
    ideal: Subspace
    covector: Covector
    c_on_ideal: tuple        # restriction coordinates in the ideal's RREF basis
    g_c: Subspace            # stabilizer of the restriction in the full algebra
    n_c: Subspace            # stabilizer inside the ideal
    h: Subspace              # n + g_c

    def to_json_dict(self):
        return {
            "ideal_dim": self.ideal.dim,
            "c_on_ideal": [str(x) for x in self.c_on_ideal],
            "g_c_dim": self.g_c.dim,
            "n_c_dim": self.n_c.dim,
            "h_dim": self.h.dim,
            "h_basis": [[str(x) for x in row] for row in self.h.basis_rows()],
        }


def little_group_step(alg: LieAlgebra, n: Subspace, cov: Covector) -> LittleGroupData:
    """Stabilizer data of cov restricted to an ideal n."""
    if not is_ideal(alg, n):
        raise NotClosedError("the given subspace is not an ideal")
    g_c = orth(alg, n, cov)
    n_c = n.intersect(g_c)
    h = n.add(g_c)
    c_coords = tuple(cov.pair(row) for row in n.basis_rows())
    return LittleGroupData(alg, n, cov, c_coords, g_c, n_c, h)


@dataclass(frozen=True)
class StepRelations:
    stabilizer_in_h: bool          # (a) infinitesimal form
    annihilator_identity: bool     # (b) n_c(cov) = ann(h)
    exp_linear: bool               # (c) certified exactly
    theorem_violated: bool         # (b) failing on valid input means a bug
    witnesses: dict

    def all_hold(self) -> bool:
        return self.stabilizer_in_h and self.annihilator_identity and self.exp_linear

    def to_json_dict(self):
        return {
            "stabilizer_in_h": self.stabilizer_in_h,
            "annihilator_identity": self.annihilator_identity,
            "exp_linear": self.exp_linear,
            "theorem_violated": self.theorem_violated,
            "witnesses": {k: [str(x) for x in v] for k, v in self.witnesses.items()},
        }


def verify_step_relations(data: LittleGroupData) -> StepRelations:
    """Certify the induction-step relations for little-group data.

    The annihilator identity holds unconditionally for ideals, so a failure
    there is flagged as a bug rather than a property of the input.
    Exp-linearity is certified by <c, [n_c, n]> = 0 together with the
    vanishing of <cov, ad(Z)^k g> for k >= 2 along every basis direction Z
    of n_c, each image chain iterated until it stabilizes; this makes
    exp(Z)(cov) = cov + Z(cov) an exact identity.
    """
    alg, cov = data.algebra, data.covector
    witnesses = {}

    stab = stabilizer(alg, cov)
    rel_a = data.h.contains_subspace(stab)
    if not rel_a:
        for row in stab.basis_rows():
            if not data.h.contains(row):
                witnesses["stabilizer_outside_h"] = row
                break

    moved = coadjoint_image(alg, cov, data.n_c)
    ann_h = annihilator(data.h)
    rel_b = moved == ann_h

    rel_c = True
    for w in data.n_c.basis_rows():
        for v in data.ideal.basis_rows():
            val = cov.pair(alg.bracket(w, v))
            if val != 0:
                rel_c = False
                witnesses["c_pairs_with_nc_n_bracket"] = alg.bracket(w, v)
    if rel_c:
        for z in data.n_c.basis_rows():
            m = ad_matrix(alg, z)
            power = m * m
            prev_image = None
            while True:
                img = image(power)
                for direction in img.basis_rows():
                    if cov.pair(direction) != 0:
                        rel_c = False
                        witnesses["higher_order_term"] = direction
                if img == prev_image or img.dim == 0 or not rel_c:
                    break
                prev_image = img
                power = power * m
            if not rel_c:
                break

    return StepRelations(
        stabilizer_in_h=rel_a,
        annihilator_identity=rel_b,
        exp_linear=rel_c,
        theorem_violated=not rel_b,
        witnesses=witnesses,
    )


def exp_coadjoint(alg: LieAlgebra, z: Sequence, cov: Covector) -> Covector:
    """Coadjoint flow exp(Z) applied to a covector, as an exact finite sum.

    Requires ad(Z) nilpotent so that the series
    <exp(Z)(cov), Z'> = sum_k (-1)^k/k! <cov, ad(Z)^k Z'> terminates.
    """
    m = ad_matrix(alg, z)
    n = alg.dim
    depth = None
    power = Matrix.identity(n)
    for k in range(n + 1):
        if power.is_zero():
            depth = k
            break
        power = power * m
    if depth is None:
        raise ValueError("ad(Z) is not nilpotent; exact exponential refused")
    term = Matrix.identity(n)
    sign = 1
    fact = 1
    result = [ZERO] * n
    for k in range(depth):
        if k > 0:
            term = term * m
            fact *= k
        coeff = Fraction(sign, fact)
        contrib = term.transpose().apply(cov.coords)
        result = [a + coeff * b for a, b in zip(result, contrib)]
        sign = -sign
    return Covector(alg, result)


@dataclass(frozen=True)
class ObstructionReport:
    j: Subspace                     # ker(c restricted to n_c)
    h_c: Subspace
    n_c: Subspace
    quotient_algebra: LieAlgebra    # h_c / n_c
    section: Matrix                 # rows: lifts of the quotient basis, ambient coords
    cocycle: Matrix                 # antisymmetric form on h_c/n_c
    c_vanishes_on_n_c: bool
    trivial: bool
    primitive: Optional[tuple]      # beta with f = beta([.,.]) when trivial
    extension_dims: tuple           # (dim n_c/j, dim h_c/j, dim h_c/n_c)
    extension_choice: Optional[tuple]

    def to_json_dict(self):
        return {
            "j_dim": self.j.dim,
            "extension_dims": list(self.extension_dims),
            "c_vanishes_on_n_c": self.c_vanishes_on_n_c,
            "cocycle": [[str(x) for x in row] for row in self.cocycle.entries],
            "trivial": self.trivial,
            "primitive": None if self.primitive is None else [str(x) for x in self.primitive],
            "level": "infinitesimal",
        }


def _decompose_against(parts: list, v):
    """Coefficients of v in the (independent) stacked row list `parts`."""
    m = Matrix(parts).transpose()
    return solve(m, v)


def obstruction_step(
    data: LittleGroupData,
    extension_choice: Optional[Covector] = None,
    section_rows: Optional[Sequence[Sequence]] = None,
) -> ObstructionReport:
    """Infinitesimal Mackey obstruction of the little-group data.

    Builds j = ker(c|n_c), a linear section of h_c -> h_c/n_c (canonical
    RREF-complement pivots unless section_rows is given), the 2-cocycle
    f(x, y) = <c, n_c-component of [sx, sy]>, and decides whether f is the
    coboundary of some linear form by an exact solve.
    """
    alg, cov = data.algebra, data.covector
    if extension_choice is not None:
        if extension_choice.algebra is not alg:
            raise ValueError("extension choice must live on the same algebra")
        for row in data.ideal.basis_rows():
            if extension_choice.pair(row) != cov.pair(row):
                raise ValueError("extension choice does not restrict to c on the ideal")

    h_c = data.g_c  # stabilizer of c inside h equals g_c since g_c <= h
    n_c = data.n_c
    ker_cov = rank_kernel(Matrix([cov.coords]))[1]
    j = n_c.intersect(ker_cov)
    c_vanishes = all(cov.pair(row) == 0 for row in n_c.basis_rows())

    emb = subalgebra(alg, h_c)
    n_c_inner = Subspace(h_c.dim, [emb.from_parent(r) for r in n_c.basis_rows()])
    quot = quotient(emb.algebra, n_c_inner)
    m = quot.algebra.dim

    if section_rows is None:
        sec = [emb.to_parent(quot.lift(basis_vector(m, k))) for k in range(m)]
    else:
        sec = [vec(r) for r in section_rows]
        if len(sec) != m:
            raise ValueError("section must provide one lift per quotient basis class")
        for k, row in enumerate(sec):
            inner = emb.from_parent(row)  # raises if outside h_c
            if quot.project(inner) != basis_vector(m, k):
                raise ValueError(f"section row {k} does not project to the basis class")
    section = Matrix(sec) if sec else Matrix.zeros(0, alg.dim)

    parts = list(n_c.basis_rows()) + sec
    f = [[ZERO] * m for _ in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            br = alg.bracket(sec[a], sec[b])
            coeffs = _decompose_against(parts, br) if parts else None
            if coeffs is None:
                raise AssertionError("bracket escaped h_c; stabilizer not closed?")
            n_part = [ZERO] * alg.dim
            for coeff, row in zip(coeffs[: n_c.dim], n_c.basis_rows()):
                n_part = [x + coeff * y for x, y in zip(n_part, row)]
            val = cov.pair(n_part)
            f[a][b] = val
            f[b][a] = -val
    cocycle = Matrix(f) if m else Matrix.zeros(0, 0)

    # triviality: find beta with f(x,y) = beta([x,y]) on the quotient
    pair_rows, rhs = [], []
    cq = quot.algebra.structure
    for a in range(m):
        for b in range(a + 1, m):
            pair_rows.append([cq[a][b][k] for k in range(m)])
            rhs.append(f[a][b])
    if pair_rows:
        beta = solve(Matrix(pair_rows), rhs)
    else:
        beta = ()
    trivial = beta is not None

    dims = (n_c.dim - j.dim, h_c.dim - j.dim, m)
    return ObstructionReport(
        j=j,
        h_c=h_c,
        n_c=n_c,
        quotient_algebra=quot.algebra,
        section=section,
        cocycle=cocycle,
        c_vanishes_on_n_c=c_vanishes,
        trivial=trivial,
        primitive=tuple(beta) if trivial else None,
        extension_dims=dims,
        extension_choice=None if extension_choice is None else extension_choice.coords,
    )


def cocycle_identity_defect(quotient_algebra: LieAlgebra, cocycle: Matrix):
    """Largest 2-cocycle identity defect over basis triples (0 = cocycle)."""
    m = quotient_algebra.dim
    cq = quotient_algebra.structure
    worst = ZERO
    for a in range(m):
        for b in range(m):
            for c in range(m):
                total = ZERO
                for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                    total += sum(
                        (cq[x][y][k] * cocycle.entries[k][z] for k in range(m)), ZERO
                    )
                if abs(total) > abs(worst):
                    worst = total
    return worst


@dataclass(frozen=True)
class SemidirectReport:
    point_orbit: bool
    witness_name: Optional[str]
    witness: Optional[Subspace]
    cocycle_zero: Optional[bool]
    rejections: tuple  # (name, reason)

    def to_json_dict(self):
        return {
            "point_orbit": self.point_orbit,
            "witness": self.witness_name,
            "cocycle_zero": self.cocycle_zero,
            "rejections": [{"candidate": n, "reason": r} for n, r in self.rejections],
        }


def semidirect_witness(
    alg: LieAlgebra,
    n: Subspace,
    cov: Covector,
    candidates: Sequence[tuple[str, Subspace]],
) -> SemidirectReport:
    """Search declared complements s with g = s + n for one killing the cocycle.

    Requires the point-orbit hypothesis <cov, [g, n]> = 0.  A candidate is
    accepted when it is a subalgebra complementary to n and the obstruction
    cocycle computed with a section into it vanishes identically; failing
    candidates are reported with the reason.
    """
    if not is_ideal(alg, n):
        raise NotClosedError("the given subspace is not an ideal")
    nd = alg.dim
    point_orbit = all(
        cov.pair(alg.bracket(basis_vector(nd, i), w)) == 0
        for i in range(nd)
        for w in n.basis_rows()
    )
    if not point_orbit:
        raise ValueError("point-orbit hypothesis <cov, [g, n]> = 0 fails")

    data = little_group_step(alg, n, cov)
    assert data.g_c.dim == nd  # point orbit: everything stabilizes
    rejections = []
    for name, s in candidates:
        if s.ambient_dim != nd:
            rejections.append((name, "wrong ambient dimension"))
            continue
        total, meet = s.add(n), s.intersect(n)
        if total.dim != nd or meet.dim != 0:
            rejections.append((name, "not a linear complement of the ideal"))
            continue
        try:
            subalgebra(alg, s)
        except NotClosedError:
            rejections.append((name, "declared complement is not a subalgebra"))
            continue
        # lift the canonical quotient classes into s
        emb = subalgebra(alg, data.g_c)
        n_inner = Subspace(nd, [emb.from_parent(r) for r in n.basis_rows()])
        quot = quotient(emb.algebra, n_inner)
        m = quot.algebra.dim
        sec = []
        ok = True
        for k in range(m):
            rep = emb.to_parent(quot.lift(basis_vector(m, k)))
            # solve rep + n-part in s:  sigma = rep - correction, correction in n
            stacked = list(s.basis_rows())
            target = rep
            coeffs = None
            aug = Matrix(stacked + [vec_scale(-1, r) for r in n.basis_rows()]).transpose()
            sol = solve(aug, target)
            if sol is None:
                ok = False
                break
            sigma = [ZERO] * nd
            for coeff, row in zip(sol[: s.dim], s.basis_rows()):
                sigma = [x + coeff * y for x, y in zip(sigma, row)]
            sec.append(tuple(sigma))
        if not ok:
            rejections.append((name, "no section of the quotient lands in the candidate"))
            continue
        report = obstruction_step(data, section_rows=sec)
        if report.cocycle.is_zero():
            return SemidirectReport(True, name, s, True, tuple(rejections))
        rejections.append((name, "cocycle does not vanish on the candidate section"))
    return SemidirectReport(True, None, None, None, tuple(rejections))


@dataclass(frozen=True)
class AbelianStepReport:
    h: Subspace
    y_record: object            # OrbitRecord over the subalgebra h
    dim_x: int
    dim_gh: int
    dim_y: int
    moved_dim: int              # dim of a(cov)
    orth_h: Subspace
    dims_match: bool            # both stated identities plus the induced count

    def to_json_dict(self):
        return {
            "h_dim": self.h.dim,
            "dim_x": self.dim_x,
            "dim_gh": self.dim_gh,
            "dim_y": self.dim_y,
            "identities_hold": self.dims_match,
        }


def abelian_step(alg: LieAlgebra, a: Subspace, cov: Covector) -> AbelianStepReport:
    """Single reduction step along an orbit-abelian ideal a.

    h is the stabilizer of the restriction of cov to a; the fiber record is
    the orbit of cov restricted to h.  Verifies dim(G/H) = dim a(cov),
    dim Y = dim(h / orth(h)) and dim X = 2 dim(G/H) + dim Y exactly.
    """
    if not is_ideal(alg, a):
        raise NotClosedError("the given subspace is not an ideal")
    from .liealg import orbit_annihilator

    ann_x = orbit_annihilator(alg, cov)
    for u in a.basis_rows():
        for v in a.basis_rows():
            if not ann_x.contains(alg.bracket(u, v)):
                raise ValueError("ideal is not orbit-abelian: [a, a] leaves ann(X)")

    h = orth(alg, a, cov)
    cov_h, emb = restrict(alg, cov, h)
    y_rec = orbit_record(emb.algebra, cov_h)
    dim_x = orbit_record(alg, cov).orbit_dim
    dim_gh = alg.dim - h.dim
    moved = coadjoint_image(alg, cov, a)
    orth_h = orth(alg, h, cov)
    ok = (
        dim_gh == moved.dim
        and h.contains_subspace(orth_h)
        and y_rec.orbit_dim == h.dim - orth_h.dim
        and dim_x == 2 * dim_gh + y_rec.orbit_dim
    )
    return AbelianStepReport(h, y_rec, dim_x, dim_gh, y_rec.orbit_dim, moved.dim, orth_h, ok)


@dataclass(frozen=True)
class LittleAlgebraType:
    dim: int
    is_solvable: bool
    is_nilpotent: bool
    killing_signature: tuple  # (positive, negative, rank)
    label: str

    def to_json_dict(self):
        pos, neg, rank = self.killing_signature
        return {
            "dim": self.dim,
            "is_solvable": self.is_solvable,
            "is_nilpotent": self.is_nilpotent,
            "killing_signature": {"positive": pos, "negative": neg, "rank": rank},
            "label": self.label,
        }


_TYPE_TABLE = {
    (3, False, False, (0, 3, 3)): "so(3)",
    (3, False, False, (2, 1, 3)): "sl(2,R)",
    (6, False, False, (3, 3, 6)): "so(3,1)",
}


def classify_little_algebra(alg: LieAlgebra, a: Subspace, cov: Covector) -> LittleAlgebraType:
    """Isomorphism-type descriptor of h/a for an abelian ideal a.

    Reports dimension, solvability, nilpotency and exact Killing signature
    of the quotient of the little algebra by the ideal -- enough to
    separate so(3), e(2), sl(2,R) and so(3,1).
    """
    if not is_ideal(alg, a):
        raise NotClosedError("the given subspace is not an ideal")
    if bracket_span(alg, a, a).dim != 0:
        raise ValueError("the given ideal is not abelian")
    h = orth(alg, a, cov)
    emb = subalgebra(alg, h)
    a_inner = Subspace(h.dim, [emb.from_parent(r) for r in a.basis_rows()])
    quot = quotient(emb.algebra, a_inner)
    probe = structure_probe(quot.algebra)
    sig = probe.killing_signature()
    key = (quot.algebra.dim, probe.is_solvable, probe.is_nilpotent, sig)
    label = _TYPE_TABLE.get(key)
    if label is None:
        if key[0] == 3 and probe.is_solvable and not probe.is_nilpotent and sig[2] == 1:
            label = "e(2)" if sig == (0, 1, 1) else "e(1,1)"
        else:
            kind = "nilpotent" if probe.is_nilpotent else (
                "solvable" if probe.is_solvable else "non-solvable")
            label = f"dim{key[0]}-{kind}-sig({sig[0]},{sig[1]})"
    return LittleAlgebraType(quot.algebra.dim, probe.is_solvable, probe.is_nilpotent, sig, label)


@dataclass(frozen=True)
class MackeyReport:
    little_group: LittleGroupData
    relations: StepRelations
    obstruction: ObstructionReport
    dim_x: int
    dim_u: int
    dim_gh: int
    dim_v: int
    fiber_rank: int        # rank of the pairing of cov restricted to g_c
    dims_consistent: bool

    def to_json_dict(self):
        return {
            "little_group": self.little_group.to_json_dict(),
            "relations": self.relations.to_json_dict(),
            "obstruction": self.obstruction.to_json_dict(),
            "dimensions": {
                "dim_x": self.dim_x,
                "dim_u": self.dim_u,
                "dim_g_mod_h": self.dim_gh,
                "dim_v": self.dim_v,
                "consistent": self.dims_consistent,
            },
        }

    def all_checks(self) -> bool:
        return self.relations.all_hold() and self.dims_consistent


def mackey_report(alg: LieAlgebra, n: Subspace, cov: Covector,
                  extension_choice: Optional[Covector] = None) -> MackeyReport:
    """Full three-step report with the synopsis dimension bookkeeping."""
    data = little_group_step(alg, n, cov)
    relations = verify_step_relations(data)
    obstruction = obstruction_step(data, extension_choice=extension_choice)
    dim_x = orbit_record(alg, cov).orbit_dim
    dim_u = n.dim - data.n_c.dim
    dim_gh = alg.dim - data.h.dim
    dim_v = dim_x - 2 * dim_gh - dim_u
    cov_gc, emb = restrict(alg, cov, data.g_c)
    fiber_rank = rank_kernel(kks_pairing(emb.algebra, cov_gc))[0]
    consistent = dim_v >= 0 and dim_v % 2 == 0 and dim_u >= 0 and dim_gh >= 0
    return MackeyReport(
        data, relations, obstruction, dim_x, dim_u, dim_gh, dim_v, fiber_rank, consistent
    )
