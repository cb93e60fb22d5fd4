import random
from fractions import Fraction as F

import pytest

from orbitkit.liealg import (
    Covector,
    LieAlgebra,
    NotClosedError,
    ad_matrix,
    ascending_central_series,
    centralizer,
    ideal_closure,
    is_ideal,
    kks_pairing,
    krylov_hull,
    orbit_record,
    quotient,
    restrict,
    stabilizer,
    structure_probe,
    subalgebra,
    validate,
)
from orbitkit.linalg import Matrix, Subspace, basis_vector, rank_kernel
from orbitkit.mackey import exp_coadjoint
from conftest import rand_covector, rand_vec


def test_validate_heisenberg(entries):
    assert validate(entries["heisenberg3"].algebra).ok


def test_validate_abelian(entries):
    assert validate(entries["abelian3"].algebra).ok


def test_validate_antisymmetry_failure():
    # raw tensor with c[0][1] = e3 but c[1][0] = 0
    z = F(0)
    one = F(1)
    c = [[[z, z, z] for _ in range(3)] for _ in range(3)]
    c[0][1][2] = one
    tensor = tuple(tuple(tuple(r) for r in p) for p in c)
    alg = LieAlgebra(3, ("e1", "e2", "e3"), tensor)
    rep = validate(alg)
    assert not rep.ok
    assert (0, 1, 2) in rep.antisymmetry_failures


def test_validate_jacobi_failure():
    # [e1,e2]=e3, [e1,e3]=e1 breaks Jacobi on (e1,e2,e3)
    alg = LieAlgebra.from_brackets(
        ("e1", "e2", "e3"), {(0, 1): {2: 1}, (0, 2): {0: 1}})
    rep = validate(alg)
    assert not rep.ok
    assert rep.jacobi_failures and rep.jacobi_failures[0][:3] == (0, 1, 2)


def test_ad_matrix_central_and_generic(entries):
    h3 = entries["heisenberg3"].algebra
    assert ad_matrix(h3, (0, 0, 1)).is_zero()
    ad1 = ad_matrix(h3, (1, 0, 0))
    # e1 sends e2 to e3 and kills the rest
    assert ad1.apply((0, 1, 0)) == (F(0), F(0), F(1))
    assert ad1.apply((1, 0, 0)) == (F(0), F(0), F(0))


def test_ad_matrix_sl2(entries):
    sl2 = entries["sl2"].algebra
    assert ad_matrix(sl2, (1, 0, 0)) == Matrix([[0, 0, 0], [0, 2, 0], [0, 0, -2]])


def test_kks_pairing_heisenberg(entries):
    h3 = entries["heisenberg3"].algebra
    b = kks_pairing(h3, Covector(h3, (0, 0, 1)))
    assert b == Matrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    assert kks_pairing(h3, Covector(h3, (0, 0, 0))).is_zero()


def test_kks_pairing_sl2_trace_dual(entries):
    sl2 = entries["sl2"].algebra
    b = kks_pairing(sl2, Covector(sl2, (2, 0, 0)))  # trace dual of h
    assert b.entries[1][2] == 2 and b.entries[2][1] == -2
    assert rank_kernel(b)[0] == 2


def test_orbit_record_heisenberg(entries):
    h3 = entries["heisenberg3"].algebra
    rec = orbit_record(h3, Covector(h3, (0, 0, 1)))
    assert rec.orbit_dim == 2
    assert rec.stabilizer == Subspace(3, [(0, 0, 1)])
    assert rec.affine_hull_dirs == Subspace(3, [(1, 0, 0), (0, 1, 0)])
    assert rec.hull_exact


def test_orbit_record_abelian(entries):
    ab = entries["abelian3"].algebra
    rec = orbit_record(ab, Covector(ab, (1, 2, 3)))
    assert rec.orbit_dim == 0
    assert rec.stabilizer == Subspace.full(3)
    assert rec.affine_hull_dirs.dim == 0


def test_orbit_record_poincare_timelike(entries):
    poin = entries["poincare"]
    rec = orbit_record(poin.algebra, Covector(poin.algebra, poin.covectors["timelike"]))
    assert rec.orbit_dim == 6
    assert rec.stabilizer.dim == 4


def test_restrict_heisenberg(entries):
    h3 = entries["heisenberg3"].algebra
    cov = Covector(h3, (0, 0, 1))
    sub = Subspace(3, [basis_vector(3, 1), basis_vector(3, 2)])
    c, emb = restrict(h3, cov, sub)
    assert c.coords == (F(0), F(1))
    full, _ = restrict(h3, cov, Subspace.full(3))
    assert full.coords == cov.coords
    center_restricted, _ = restrict(h3, Covector(h3, (1, 0, 0)), Subspace(3, [basis_vector(3, 2)]))
    assert center_restricted.is_zero()


def test_restrict_rejects_non_subalgebra(entries):
    h3 = entries["heisenberg3"].algebra
    with pytest.raises(NotClosedError):
        restrict(h3, Covector(h3, (0, 0, 1)), Subspace(3, [(1, 0, 0), (0, 1, 0)]))


def test_structure_probe_heisenberg(entries):
    p = structure_probe(entries["heisenberg3"].algebra)
    assert p.is_nilpotent and p.is_solvable
    assert p.center == Subspace(3, [(0, 0, 1)])
    assert [s.dim for s in p.derived_series] == [3, 1, 0]


def test_structure_probe_sl2(entries):
    p = structure_probe(entries["sl2"].algebra)
    assert not p.is_solvable
    assert p.killing_signature() == (2, 1, 3)
    # Killing form is 4x the trace form on sl2
    assert p.killing_form == Matrix([[8, 0, 0], [0, 0, 4], [0, 4, 0]])


def test_structure_probe_abelian(entries):
    p = structure_probe(entries["abelian3"].algebra)
    assert p.is_nilpotent
    assert p.center == Subspace.full(3)


def test_subalgebra_and_quotient(entries):
    h3 = entries["heisenberg3"].algebra
    sub = Subspace(3, [basis_vector(3, 1), basis_vector(3, 2)])
    emb = subalgebra(h3, sub)
    assert validate(emb.algebra).ok
    assert structure_probe(emb.algebra).center.dim == 2  # abelian plane
    q = quotient(h3, Subspace(3, [basis_vector(3, 2)]))
    assert q.algebra.dim == 2
    assert structure_probe(q.algebra).center.dim == 2  # h3 / center is abelian


def test_ideal_tools(entries):
    h3 = entries["heisenberg3"].algebra
    assert is_ideal(h3, Subspace(3, [basis_vector(3, 2)]))
    assert not is_ideal(h3, Subspace(3, [basis_vector(3, 0)]))
    closed = ideal_closure(h3, Subspace(3, [basis_vector(3, 0)]))
    assert closed == Subspace(3, [(1, 0, 0), (0, 0, 1)])
    assert centralizer(h3, Subspace(3, [basis_vector(3, 0)])) == Subspace(3, [(1, 0, 0), (0, 0, 1)])


def test_ascending_central_series(entries):
    n4 = entries["filiform4"].algebra
    series = ascending_central_series(n4)
    assert [s.dim for s in series] == [0, 1, 2, 4]


# -- fuzzed invariants --------------------------------------------------------


def test_even_rank_and_dim_split(entries, rng):
    for entry in entries.values():
        alg = entry.algebra
        for _ in range(30):
            cov = rand_covector(alg, rng)
            rank, ker = rank_kernel(kks_pairing(alg, cov))
            assert rank % 2 == 0
            assert rank + ker.dim == alg.dim


def test_stabilizer_is_subalgebra(entries, rng):
    for entry in entries.values():
        alg = entry.algebra
        for _ in range(8):
            cov = rand_covector(alg, rng)
            stab = stabilizer(alg, cov)
            subalgebra(alg, stab)  # raises when not closed


def test_ad_is_morphism(entries, rng):
    for entry in entries.values():
        alg = entry.algebra
        for _ in range(8):
            z, w = rand_vec(rng, alg.dim), rand_vec(rng, alg.dim)
            lhs = ad_matrix(alg, alg.bracket(z, w))
            az, aw = ad_matrix(alg, z), ad_matrix(alg, w)
            assert lhs == az * aw - aw * az


def test_flows_stay_in_affine_hull(entries, rng):
    for name in ("heisenberg3", "filiform4", "abelian3"):
        alg = entries[name].algebra
        for _ in range(10):
            cov = rand_covector(alg, rng)
            hull = krylov_hull(alg, cov)
            z = rand_vec(rng, alg.dim, lo=-3, hi=3, max_den=2)
            moved = exp_coadjoint(alg, z, cov)
            diff = tuple(a - b for a, b in zip(moved.coords, cov.coords))
            assert hull.contains(diff)
