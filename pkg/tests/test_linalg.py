"""Rank / nullspace over every backend, rank-nullity, QQ vs GF(p) ranks."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dslie.fields import field_for
from dslie.linalg import Echelon, Matrix, mat_mul_vec, mat_nullspace, mat_rank, mat_solve


def _mat(field, int_rows, ncols=None):
    return Matrix(field, [[field.from_int(a) for a in row] for row in int_rows], ncols=ncols)


def test_rank_identity_gf2():
    f = field_for(2)
    m = _mat(f, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert mat_rank(m) == 3


def test_rank_brj_matrix_gf5():
    f = field_for(5)
    m = _mat(f, [[0, -1], [-2, 1]])
    assert mat_rank(m) == 2  # det = -2, a unit mod 5


def test_rank_zero_matrix():
    f = field_for(7)
    m = _mat(f, [[0] * 7 for _ in range(4)])
    assert mat_rank(m) == 0


def test_nullspace_identity_empty():
    f = field_for(3)
    assert mat_nullspace(_mat(f, [[1, 0], [0, 1]])) == []


def test_nullspace_zero_full():
    f = field_for(3)
    basis = mat_nullspace(_mat(f, [[0, 0], [0, 0]]))
    assert len(basis) == 2


def test_nullspace_gf2_ones():
    f = field_for(2)
    basis = mat_nullspace(_mat(f, [[1, 1], [1, 1]]))
    assert basis == [[1, 1]]


@pytest.mark.parametrize("p", [0, 2, 3, 5])
def test_rank_nullity_random(p):
    f = field_for(p)
    rng = random.Random(7 + p)
    for _ in range(12):
        m = rng.randrange(1, 6)
        n = rng.randrange(1, 6)
        rows = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(m)]
        M = _mat(f, rows)
        assert mat_rank(M) + len(mat_nullspace(M)) == n
        for v in mat_nullspace(M):
            assert all(f.is_zero(x) for x in mat_mul_vec(M, v))


def test_rank_q_vs_gfp_when_pivots_are_units():
    rng = random.Random(99)
    for _ in range(20):
        n = rng.randrange(1, 5)
        rows = [[rng.randrange(-3, 4) for _ in range(n)] for _ in range(n)]
        q = field_for(0)
        rq = mat_rank(_mat(q, rows))
        for p in (5, 7, 11):
            rp = mat_rank(_mat(field_for(p), rows))
            assert rp <= rq
        # a prime large enough divides no nonzero minor of this size
        assert mat_rank(_mat(field_for(101), rows)) == rq


def test_solve_particular():
    f = field_for(5)
    M = _mat(f, [[1, 2], [3, 4]])
    x = mat_solve(M, [f.from_int(1), f.from_int(2)])
    assert mat_mul_vec(M, x) == [f.from_int(1), f.from_int(2)]
    M2 = _mat(f, [[1, 1], [2, 2]])
    assert mat_solve(M2, [f.from_int(0), f.from_int(1)]) is None


def test_parametric_rank():
    f = field_for(2, parametric=True)
    a = f.param()
    M = Matrix(f, [[f.one, a], [a, f.mul(a, a)]])
    assert mat_rank(M) == 1
    M2 = Matrix(f, [[f.one, a], [a, f.one]])  # det = 1 + a^2 = (1+a)^2 != 0
    assert mat_rank(M2) == 2


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=5),
       st.sampled_from([2, 3, 5]))
def test_echelon_matches_rank(rows, p):
    f = field_for(p)
    M = _mat(f, rows)
    ech = Echelon(f, 3, track=True)
    for i, row in enumerate(M.rows):
        ech.add(row, vid=i)
    assert len(ech) == mat_rank(M)
    # every original row reduces to zero against the completed echelon
    for row in M.rows:
        res, combo = ech.reduce(row)
        assert all(f.is_zero(x) for x in res)
        # and the tracked combination reproduces the row
        recon = [f.zero] * 3
        for vid, c in combo.items():
            recon = [f.add(x, f.mul(c, y)) for x, y in zip(recon, M.rows[vid])]
        assert recon == row
