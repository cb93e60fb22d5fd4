import random
from fractions import Fraction as F

import pytest

from orbitkit.liealg import (
    Covector,
    NotClosedError,
    ad_matrix,
    ideal_closure,
    kks_pairing,
    orbit_record,
    restrict,
    stabilizer,
    subalgebra,
    validate,
)
from orbitkit.linalg import Matrix, Subspace, basis_vector, rank_kernel, vec_scale
from orbitkit.mackey import (
    abelian_step,
    classify_little_algebra,
    cocycle_identity_defect,
    exp_coadjoint,
    little_group_step,
    mackey_report,
    obstruction_step,
    semidirect_witness,
    verify_step_relations,
)
from conftest import rand_covector, rand_vec


def _span(n, *idx):
    return Subspace(n, [basis_vector(n, i) for i in idx])


# -- little group step --------------------------------------------------------


def test_little_group_center(entries):
    h3 = entries["heisenberg3"].algebra
    data = little_group_step(h3, _span(3, 2), Covector(h3, (0, 0, 1)))
    assert data.g_c == Subspace.full(3)
    assert data.n_c == _span(3, 2)
    assert data.h == Subspace.full(3)


def test_little_group_zero_covector(entries):
    sl2 = entries["sl2"].algebra
    # sl2 is simple: only improper ideals; use the whole algebra
    data = little_group_step(sl2, Subspace.full(3), Covector(sl2, (0, 0, 0)))
    assert data.g_c == Subspace.full(3)
    assert data.h == Subspace.full(3)


def test_little_group_poincare(entries):
    poin = entries["poincare"]
    data = little_group_step(poin.algebra, poin.ideals["translations"],
                             Covector(poin.algebra, poin.covectors["timelike"]))
    assert data.g_c.dim == 7
    assert data.n_c == poin.ideals["translations"]
    assert data.h == data.g_c


def test_little_group_rejects_non_ideal(entries):
    h3 = entries["heisenberg3"].algebra
    with pytest.raises(NotClosedError):
        little_group_step(h3, _span(3, 0), Covector(h3, (0, 0, 1)))


# -- induction-step relations --------------------------------------------------


def test_relations_center_case(entries):
    h3 = entries["heisenberg3"].algebra
    data = little_group_step(h3, _span(3, 2), Covector(h3, (0, 0, 1)))
    rel = verify_step_relations(data)
    assert rel.all_hold() and not rel.theorem_violated


def test_relations_plane_case(entries):
    h3 = entries["heisenberg3"].algebra
    cov = Covector(h3, (0, 0, 1))
    data = little_group_step(h3, _span(3, 1, 2), cov)
    assert data.g_c == _span(3, 1, 2) == data.n_c
    assert data.h == _span(3, 1, 2)
    rel = verify_step_relations(data)
    assert rel.all_hold()
    # (13b) by hand: n_c moves cov along e1* only, which annihilates h
    from orbitkit.liealg import coadjoint_image
    from orbitkit.linalg import annihilator
    assert coadjoint_image(h3, cov, data.n_c) == Subspace(3, [(1, 0, 0)])
    assert annihilator(data.h) == Subspace(3, [(1, 0, 0)])


def test_relations_poincare(entries):
    poin = entries["poincare"]
    cov = Covector(poin.algebra, poin.covectors["timelike"])
    data = little_group_step(poin.algebra, poin.ideals["translations"], cov)
    rel = verify_step_relations(data)
    assert rel.all_hold()
    from orbitkit.linalg import annihilator
    assert annihilator(data.h).dim == 3


# -- obstruction step ----------------------------------------------------------


def test_obstruction_heisenberg_nontrivial(entries):
    h3 = entries["heisenberg3"].algebra
    data = little_group_step(h3, _span(3, 2), Covector(h3, (0, 0, 1)))
    ob = obstruction_step(data)
    assert ob.j.dim == 0
    assert ob.extension_dims == (1, 3, 2)
    assert ob.cocycle.entries[0][1] == 1
    assert not ob.trivial and ob.primitive is None
    assert not ob.c_vanishes_on_n_c


def test_obstruction_vanishing_restriction(entries):
    # c restricted to n_c is zero: trivial with zero cocycle
    h3 = entries["heisenberg3"].algebra
    data = little_group_step(h3, _span(3, 1, 2), Covector(h3, (1, 0, 0)))
    ob = obstruction_step(data)
    assert ob.c_vanishes_on_n_c
    assert ob.cocycle.is_zero()
    assert ob.trivial


def test_obstruction_poincare_trivial(entries):
    poin = entries["poincare"]
    cov = Covector(poin.algebra, poin.covectors["timelike"])
    data = little_group_step(poin.algebra, poin.ideals["translations"], cov)
    ob = obstruction_step(data)
    assert ob.extension_dims == (1, 4, 3)
    assert ob.cocycle.is_zero()
    assert ob.trivial and ob.primitive == (F(0),) * 3


def test_obstruction_extension_choice_validated(entries):
    h3 = entries["heisenberg3"].algebra
    cov = Covector(h3, (0, 0, 1))
    data = little_group_step(h3, _span(3, 2), cov)
    ok = obstruction_step(data, extension_choice=Covector(h3, (5, 7, 1)))
    assert ok.extension_choice == (F(5), F(7), F(1))
    with pytest.raises(ValueError):
        obstruction_step(data, extension_choice=Covector(h3, (0, 0, 2)))


def _random_sections(data, rng, count):
    """Canonical section rows shifted by random elements of n_c."""
    base = obstruction_step(data).section.entries
    out = []
    for _ in range(count):
        rows = []
        for row in base:
            shift = [F(0)] * len(row)
            for w in data.n_c.basis_rows():
                c = F(rng.randint(-3, 3), rng.randint(1, 2))
                shift = [a + c * b for a, b in zip(shift, w)]
            rows.append(tuple(a + b for a, b in zip(row, shift)))
        out.append(rows)
    return out


def test_obstruction_section_independence(entries, rng):
    h3 = entries["heisenberg3"].algebra
    poin = entries["poincare"]
    cases = [
        (h3, _span(3, 2), Covector(h3, (0, 0, 1)), False),
        (poin.algebra, poin.ideals["translations"],
         Covector(poin.algebra, poin.covectors["timelike"]), True),
    ]
    for alg, ideal, cov, expected_trivial in cases:
        data = little_group_step(alg, ideal, cov)
        reference = obstruction_step(data)
        assert reference.trivial is expected_trivial
        for rows in _random_sections(data, rng, 6):
            ob = obstruction_step(data, section_rows=rows)
            assert ob.trivial is expected_trivial
            # the two cocycles differ by an exact coboundary
            diff = reference.cocycle - ob.cocycle
            m = ob.quotient_algebra.dim
            cq = ob.quotient_algebra.structure
            pair_rows = [[cq[a][b][k] for k in range(m)]
                         for a in range(m) for b in range(a + 1, m)]
            rhs = [diff.entries[a][b] for a in range(m) for b in range(a + 1, m)]
            from orbitkit.linalg import solve
            if pair_rows:
                assert solve(Matrix(pair_rows), rhs) is not None


def test_cocycle_identity(entries, rng):
    for name in ("heisenberg3", "filiform4", "poincare", "euclid2"):
        entry = entries[name]
        alg = entry.algebra
        for ideal in entry.ideals.values():
            for _ in range(4):
                cov = rand_covector(alg, rng)
                data = little_group_step(alg, ideal, cov)
                ob = obstruction_step(data)
                assert cocycle_identity_defect(ob.quotient_algebra, ob.cocycle) == 0


# -- semidirect witness --------------------------------------------------------


def test_semidirect_witness_poincare_little_group(entries):
    poin = entries["poincare"]
    cov = Covector(poin.algebra, poin.covectors["timelike"])
    data = little_group_step(poin.algebra, poin.ideals["translations"], cov)
    emb = subalgebra(poin.algebra, data.g_c)
    n_inner = Subspace(7, [emb.from_parent(r)
                           for r in poin.ideals["translations"].basis_rows()])
    cov_inner, _ = restrict(poin.algebra, cov, data.g_c)
    rot = poin.complements["lorentz"].intersect(data.g_c)
    rot_inner = Subspace(7, [emb.from_parent(r) for r in rot.basis_rows()])
    rep = semidirect_witness(emb.algebra, n_inner, cov_inner, [("rotations", rot_inner)])
    assert rep.witness_name == "rotations"
    assert rep.cocycle_zero


def test_semidirect_witness_heisenberg_fails(entries):
    h3e = entries["heisenberg3"]
    rep = semidirect_witness(h3e.algebra, h3e.ideals["center"],
                             Covector(h3e.algebra, (0, 0, 1)),
                             [("xy_plane", h3e.complements["xy_plane"])])
    assert rep.witness_name is None
    assert rep.rejections == (("xy_plane", "declared complement is not a subalgebra"),)


def test_semidirect_witness_abelian(entries):
    ab = entries["abelian3"].algebra
    rep = semidirect_witness(ab, _span(3, 1, 2), Covector(ab, (1, 2, 3)),
                             [("line", _span(3, 0))])
    assert rep.witness_name == "line" and rep.cocycle_zero


def test_semidirect_witness_requires_point_orbit(entries):
    poin = entries["poincare"]
    with pytest.raises(ValueError):
        semidirect_witness(poin.algebra, poin.ideals["translations"],
                           Covector(poin.algebra, poin.covectors["timelike"]),
                           [("lorentz", poin.complements["lorentz"])])


# -- abelian step and classification -------------------------------------------


def test_abelian_step_poincare_dims(entries):
    poin = entries["poincare"]
    trans = poin.ideals["translations"]
    spin0 = abelian_step(poin.algebra, trans,
                         Covector(poin.algebra, poin.covectors["timelike"]))
    assert (spin0.dim_x, spin0.dim_gh, spin0.dim_y) == (6, 3, 0)
    assert spin0.dims_match
    spinning = abelian_step(poin.algebra, trans,
                            Covector(poin.algebra, poin.covectors["timelike_spinning"]))
    assert (spinning.dim_x, spinning.dim_gh, spinning.dim_y) == (8, 3, 2)
    assert spinning.dims_match


def test_abelian_step_heisenberg(entries):
    h3 = entries["heisenberg3"].algebra
    step = abelian_step(h3, _span(3, 1, 2), Covector(h3, (0, 0, 1)))
    assert step.h == _span(3, 1, 2)
    assert (step.dim_x, step.dim_gh, step.dim_y) == (2, 1, 0)
    assert step.dims_match


def test_abelian_step_rejects_non_orbit_abelian(entries):
    sl2 = entries["sl2"].algebra
    with pytest.raises(ValueError):
        abelian_step(sl2, Subspace.full(3), Covector(sl2, (2, 0, 0)))


def test_classification_poincare_cases(entries):
    poin = entries["poincare"]
    trans = poin.ideals["translations"]
    expected = {
        "timelike": ("so(3)", 3, False, (0, 3, 3)),
        "lightlike": ("e(2)", 3, True, (0, 1, 1)),
        "spacelike": ("sl(2,R)", 3, False, (2, 1, 3)),
        "zero_momentum": ("so(3,1)", 6, False, (3, 3, 6)),
    }
    for name, (label, dim, solv, sig) in expected.items():
        kind = classify_little_algebra(poin.algebra, trans,
                                       Covector(poin.algebra, poin.covectors[name]))
        assert kind.label == label
        assert kind.dim == dim
        assert kind.is_solvable is solv
        assert kind.killing_signature == sig


def test_classification_rejects_nonabelian_ideal(entries):
    poin = entries["poincare"]
    with pytest.raises(ValueError):
        classify_little_algebra(poin.algebra, Subspace.full(10),
                                Covector(poin.algebra, poin.covectors["timelike"]))


# -- exact coadjoint exponential ------------------------------------------------


def test_exp_coadjoint_central(entries):
    h3 = entries["heisenberg3"].algebra
    cov = Covector(h3, (1, 2, 3))
    assert exp_coadjoint(h3, (0, 0, 5), cov).coords == cov.coords


def test_exp_coadjoint_heisenberg(entries):
    h3 = entries["heisenberg3"].algebra
    out = exp_coadjoint(h3, (0, 1, 0), Covector(h3, (0, 0, 1)))
    assert out.coords == (F(1), F(0), F(1))  # cov + e1*


def _matrix_exp_nilpotent(m):
    n = m.rows
    total = Matrix.identity(n)
    term = Matrix.identity(n)
    k = 1
    while True:
        term = term * m
        if term.is_zero():
            return total
        total = total + term.scale(F(1, _factorial(k)))
        k += 1


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def test_exp_coadjoint_matches_matrix_exponential(entries, rng):
    n4 = entries["filiform4"].algebra
    for _ in range(12):
        z = rand_vec(rng, 4, lo=-3, hi=3, max_den=2)
        cov = rand_covector(n4, rng)
        flow = exp_coadjoint(n4, z, cov)
        gen = ad_matrix(n4, z).transpose().scale(-1)
        oracle = _matrix_exp_nilpotent(gen).apply(cov.coords)
        assert flow.coords == oracle


def test_exp_coadjoint_inverse(entries, rng):
    h3 = entries["heisenberg3"].algebra
    for _ in range(10):
        z = rand_vec(rng, 3, lo=-4, hi=4, max_den=2)
        cov = rand_covector(h3, rng)
        back = exp_coadjoint(h3, vec_scale(-1, z), exp_coadjoint(h3, z, cov))
        assert back.coords == cov.coords


def test_exp_coadjoint_refuses_non_nilpotent(entries):
    sl2 = entries["sl2"].algebra
    with pytest.raises(ValueError):
        exp_coadjoint(sl2, (1, 0, 0), Covector(sl2, (2, 0, 0)))


# -- full report and fuzzed theorem guard ---------------------------------------


def test_mackey_report_heisenberg(entries):
    h3 = entries["heisenberg3"].algebra
    rep = mackey_report(h3, _span(3, 2), Covector(h3, (0, 0, 1)))
    assert (rep.dim_x, rep.dim_u, rep.dim_gh, rep.dim_v) == (2, 0, 0, 2)
    assert rep.dims_consistent and rep.all_checks()
    assert rep.fiber_rank == rep.dim_v


def test_mackey_report_poincare(entries):
    poin = entries["poincare"]
    rep = mackey_report(poin.algebra, poin.ideals["translations"],
                        Covector(poin.algebra, poin.covectors["timelike_spinning"]))
    assert (rep.dim_x, rep.dim_u, rep.dim_gh, rep.dim_v) == (8, 0, 3, 2)
    assert rep.fiber_rank == 2


def random_ideals(alg, rng, count):
    out = []
    for _ in range(count):
        seed = Subspace(alg.dim, [rand_vec(rng, alg.dim, lo=-2, hi=2, max_den=1)
                                  for _ in range(rng.randint(1, 2))])
        out.append(ideal_closure(alg, seed))
    return out


def test_annihilator_identity_guard_fuzzed(entries, rng):
    # theorem guard: a failure here is an implementation bug
    cases = 0
    for entry in entries.values():
        alg = entry.algebra
        ideals = list(entry.ideals.values()) + random_ideals(alg, rng, 4)
        for ideal in ideals:
            cov = rand_covector(alg, rng)
            data = little_group_step(alg, ideal, cov)
            rel = verify_step_relations(data)
            assert rel.annihilator_identity, (entry.name, ideal.basis_rows(), cov.coords)
            assert not rel.theorem_violated
            cases += 1
    assert cases >= 40


def test_dim_v_even_and_fiber_rank(entries, rng):
    for name in ("heisenberg3", "filiform4", "poincare", "euclid2"):
        entry = entries[name]
        alg = entry.algebra
        for ideal in entry.ideals.values():
            for _ in range(4):
                cov = rand_covector(alg, rng)
                rep = mackey_report(alg, ideal, cov)
                assert rep.dim_v % 2 == 0 and rep.dim_v >= 0
                assert rep.dim_v == rep.fiber_rank
