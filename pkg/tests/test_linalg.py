import random
from fractions import Fraction as F

import pytest

from orbitkit.linalg import (
    Matrix,
    Subspace,
    annihilator,
    rank_kernel,
    solve,
    sum_intersect,
    symmetric_signature,
)
from conftest import rand_vec


def test_rank_kernel_identity():
    rank, ker = rank_kernel(Matrix.identity(3))
    assert rank == 3 and ker.dim == 0


def test_rank_kernel_zero():
    rank, ker = rank_kernel(Matrix.zeros(2, 4))
    assert rank == 0 and ker == Subspace.full(4)


def test_rank_kernel_antisymmetric():
    # hand row-reduction: rows (0,1,0), (-1,0,0) pivot on columns 0,1
    m = Matrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    rank, ker = rank_kernel(m)
    assert rank == 2
    assert ker == Subspace(3, [(0, 0, 1)])
    for row in ker.basis_rows():
        assert all(x == 0 for x in m.apply(row))


def test_sum_intersect_disjoint_lines():
    a = Subspace(3, [(1, 0, 0)])
    b = Subspace(3, [(0, 1, 0)])
    s, m = sum_intersect(a, b)
    assert s == Subspace(3, [(1, 0, 0), (0, 1, 0)])
    assert m.dim == 0


def test_sum_intersect_idempotent():
    v = Subspace(3, [(1, 2, 3), (0, 1, 1)])
    s, m = sum_intersect(v, v)
    assert s == v and m == v


def test_sum_intersect_transversal():
    # Gaussian elimination by hand: (e1+e2) + (e2, e3) spans everything
    a = Subspace(3, [(1, 1, 0)])
    b = Subspace(3, [(0, 1, 0), (0, 0, 1)])
    s, m = sum_intersect(a, b)
    assert s == Subspace.full(3)
    assert m.dim == 0


def test_sum_intersect_dim_mismatch():
    with pytest.raises(ValueError):
        sum_intersect(Subspace.full(2), Subspace.full(3))


def test_annihilator_extremes():
    assert annihilator(Subspace.full(4)).dim == 0
    assert annihilator(Subspace.zero(4)) == Subspace.full(4)


def test_annihilator_pairing():
    s = Subspace(3, [(0, 1, 0), (0, 0, 1)])
    ann = annihilator(s)
    assert ann == Subspace(3, [(1, 0, 0)])
    for u in ann.basis_rows():
        for v in s.basis_rows():
            assert sum(a * b for a, b in zip(u, v)) == 0


def test_solve_identity():
    assert solve(Matrix.identity(3), (1, 2, 3)) == (F(1), F(2), F(3))


def test_solve_inconsistent():
    assert solve(Matrix.zeros(2, 2), (1, 0)) is None


def test_solve_back_substitution():
    assert solve(Matrix([[1, 1], [0, 1]]), (3, 1)) == (F(2), F(1))


def test_rref_canonical_under_generator_shuffle():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 6)
        rows = [rand_vec(rng, n) for _ in range(rng.randint(1, n))]
        s = Subspace(n, rows)
        shuffled = rows[:]
        rng.shuffle(shuffled)
        factors = [F(rng.randint(1, 5)) for _ in shuffled]
        scaled = [tuple(c * x for x in row) for c, row in zip(factors, shuffled)]
        assert Subspace(n, scaled) == s


def test_annihilator_involution_and_inclusion_reversal():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(2, 6)
        a = Subspace(n, [rand_vec(rng, n) for _ in range(rng.randint(0, n))])
        b = a.add(Subspace(n, [rand_vec(rng, n)]))
        assert annihilator(annihilator(a)) == a
        assert annihilator(b).dim <= annihilator(a).dim
        assert annihilator(a).contains_subspace(annihilator(b))
        assert annihilator(a).dim == n - a.dim


def test_grassmann_identity():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randint(2, 7)
        a = Subspace(n, [rand_vec(rng, n) for _ in range(rng.randint(0, n))])
        b = Subspace(n, [rand_vec(rng, n) for _ in range(rng.randint(0, n))])
        s, m = sum_intersect(a, b)
        assert s.dim + m.dim == a.dim + b.dim
        assert s.contains_subspace(a) and s.contains_subspace(b)
        assert a.contains_subspace(m) and b.contains_subspace(m)


def test_symmetric_signature_examples():
    assert symmetric_signature(Matrix.identity(3)) == (3, 0, 3)
    assert symmetric_signature(Matrix([[0, 1], [1, 0]])) == (1, 1, 2)
    assert symmetric_signature(Matrix([[-2, 0], [0, 0]])) == (0, 1, 1)


def test_symmetric_signature_congruence_invariance():
    rng = random.Random(17)
    for _ in range(25):
        n = rng.randint(1, 5)
        entries = [[F(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        sym = [[entries[i][j] + entries[j][i] for j in range(n)] for i in range(n)]
        m = Matrix(sym)
        # congruence by a random invertible triangular matrix preserves signature
        t = [[F(1) if i == j else (F(rng.randint(-3, 3)) if j > i else F(0))
              for j in range(n)] for i in range(n)]
        tm = Matrix(t)
        assert symmetric_signature(tm * m * tm.transpose()) == symmetric_signature(m)
