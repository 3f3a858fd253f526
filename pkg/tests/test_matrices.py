"""Unit and property tests for the exact matrix kernel."""

import doctest
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import k3ord.matrices as matrices
from k3ord.errors import DimensionMismatch, NonSquare, NotSymmetric
from k3ord.matrices import (
    IntMatrix,
    RatMatrix,
    det,
    hermite_row_basis,
    integer_kernel,
    signature,
    snf,
    solve_integer,
)

from oracles import (
    det_cofactor,
    no_solution_in_box,
    random_int_matrix,
    random_symmetric,
    random_unimodular,
    rational_kernel_basis,
)

S2_GRAM = IntMatrix.from_rows([[-2, 3, 0], [3, -2, 1], [0, 1, -2]])
H_GRAM = IntMatrix.from_rows([[0, 1], [1, 0]])


def test_doctests_pass():
    failures, _ = doctest.testmod(matrices)
    assert failures == 0


def test_shape_validation():
    with pytest.raises(DimensionMismatch):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(DimensionMismatch):
        IntMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(TypeError):
        IntMatrix.from_rows([[1.5, 2], [3, 4]])


def test_basic_ops():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert a.transpose().to_rows() == ((1, 3), (2, 4))
    assert (a @ IntMatrix.identity(2)) == a
    assert a.mul_vec((1, 1)) == (3, 7)
    assert (a - a) == IntMatrix.zeros(2, 2)
    assert a.hstack(a).row(0) == (1, 2, 1, 2)
    assert IntMatrix.block_diag([a, IntMatrix.identity(1)]).row(2) == (0, 0, 1)
    with pytest.raises(DimensionMismatch):
        a.mul_vec((1, 2, 3))


def test_snf_identity_case():
    r = snf(IntMatrix.identity(3))
    assert r.U == IntMatrix.identity(3)
    assert r.D == IntMatrix.identity(3)
    assert r.V == IntMatrix.identity(3)


def test_snf_worked_example():
    a = IntMatrix.from_rows([[2, 4], [6, 8]])
    r = snf(a)
    assert r.diagonal == (2, 4)
    assert r.U @ a @ r.V == r.D
    assert abs(det(r.U)) == 1 and abs(det(r.V)) == 1
    assert r.diagonal[0] * r.diagonal[1] == abs(det(a))


def test_snf_already_diagonal():
    a = IntMatrix.from_rows([[1, 0], [0, 0]])
    assert snf(a).diagonal == (1, 0)


def _check_snf(a: IntMatrix):
    r = snf(a)
    assert r.U @ a @ r.V == r.D
    assert abs(det(r.U)) == 1
    assert abs(det(r.V)) == 1
    diag = r.diagonal
    assert all(d >= 0 for d in diag)
    for x, y in zip(diag, diag[1:]):
        if x == 0:
            assert y == 0
        else:
            assert y % x == 0
    for i in range(r.D.rows):
        for j in range(r.D.cols):
            if i != j:
                assert r.D.entry(i, j) == 0


def test_snf_random_suite():
    rng = random.Random(20260814)
    for _ in range(150):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        _check_snf(random_int_matrix(rng, rows, cols, -9, 9))


@given(st.lists(st.lists(st.integers(-30, 30), min_size=1, max_size=4), min_size=1, max_size=4)
       .filter(lambda rows: len({len(r) for r in rows}) == 1))
@settings(max_examples=60, deadline=None)
def test_snf_property(rows):
    _check_snf(IntMatrix.from_rows(rows))


def test_kernel_examples():
    k = integer_kernel(IntMatrix.from_rows([[1, 1]]))
    assert k.cols == 1 and k.col(0) == (1, -1)
    assert integer_kernel(IntMatrix.identity(4)).cols == 0
    assert integer_kernel(IntMatrix.zeros(3, 3)) == IntMatrix.identity(3)


def test_kernel_saturated_and_complete():
    rng = random.Random(7)
    for _ in range(80):
        a = random_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 5), -6, 6)
        k = integer_kernel(a)
        assert a @ k == IntMatrix.zeros(a.rows, k.cols)
        assert k.cols == a.cols - snf(a).rank
        assert k.cols == len(rational_kernel_basis(a))
        if k.cols:
            assert all(f == 1 for f in snf(k).invariant_factors)


def test_kernel_is_deterministic_canonical():
    a = IntMatrix.from_rows([[2, -4, 6], [1, -2, 3]])
    k1 = integer_kernel(a)
    k2 = integer_kernel(IntMatrix.from_rows([[1, -2, 3], [2, -4, 6]]))
    assert k1 == k2


def test_solve_examples():
    two_i = IntMatrix.from_rows([[2, 0], [0, 2]])
    assert solve_integer(two_i, (2, 4)) == (1, 2)
    assert solve_integer(two_i, (1, 0)) is None
    a = IntMatrix.from_rows([[1, 1], [0, 2]])
    x = solve_integer(a, (3, 4))
    assert x is not None and a.mul_vec(x) == (3, 4)


def test_solve_random_roundtrip_and_certified_no_solution():
    rng = random.Random(99)
    for _ in range(120):
        a = random_int_matrix(rng, rng.randint(1, 3), rng.randint(1, 3), -3, 3)
        x0 = tuple(rng.randint(-3, 3) for _ in range(a.cols))
        b = a.mul_vec(x0)
        x = solve_integer(a, b)
        assert x is not None and a.mul_vec(x) == b
        b2 = tuple(rng.randint(-4, 4) for _ in range(a.rows))
        x2 = solve_integer(a, b2)
        if x2 is None:
            assert no_solution_in_box(a, b2, 6)
        else:
            assert a.mul_vec(x2) == b2


def test_det_examples():
    assert det(H_GRAM) == -1
    assert det(S2_GRAM) == 12
    assert det(IntMatrix(0, 0, ())) == 1
    with pytest.raises(NonSquare):
        det(IntMatrix.zeros(2, 3))


def test_det_against_cofactor_oracle():
    rng = random.Random(4242)
    for _ in range(150):
        n = rng.randint(1, 6)
        a = random_int_matrix(rng, n, n, -9, 9)
        assert det(a) == det_cofactor(a)


def test_signature_examples():
    assert signature(H_GRAM) == (1, 1, 0)
    assert signature(S2_GRAM) == (1, 2, 0)
    assert signature(IntMatrix.zeros(3, 3)) == (0, 0, 3)
    assert signature(IntMatrix.diagonal([3, -5, 0, 2])) == (2, 1, 1)
    with pytest.raises(NonSquare):
        signature(IntMatrix.zeros(2, 3))
    with pytest.raises(NotSymmetric):
        signature(IntMatrix.from_rows([[0, 1], [2, 0]]))


def test_signature_zero_diagonal_pivot_fix():
    # all-zero diagonal with off-diagonal pairings, needs the row+column trick
    g = IntMatrix.from_rows([[0, 2, 1], [2, 0, 0], [1, 0, 0]])
    pos, neg, zero = signature(g)
    assert (pos, neg, zero) == (1, 1, 1)


def test_signature_congruence_invariance():
    rng = random.Random(1234)
    for _ in range(60):
        n = rng.randint(1, 5)
        g = random_symmetric(rng, n, -6, 6)
        p = random_unimodular(rng, n)
        assert abs(det(p)) == 1
        assert signature(p.transpose() @ g @ p) == signature(g)


def test_signature_matches_diag_of_rank_deficient():
    g = IntMatrix.from_rows([[1, 1], [1, 1]])
    assert signature(g) == (1, 0, 1)


def test_hermite_row_basis_canonical():
    m = IntMatrix.from_rows([[0, 2, 4], [0, 3, 6], [0, 0, 0]])
    h = hermite_row_basis(m)
    assert h == IntMatrix.from_rows([[0, 1, 2]])
    assert hermite_row_basis(h) == h
    m2 = IntMatrix.from_rows([[2, 1], [1, 2]])
    h2 = hermite_row_basis(m2)
    assert h2 == IntMatrix.from_rows([[1, 2], [0, 3]])


def test_rat_matrix_inverse_and_integrality():
    a = IntMatrix.from_rows([[1, 2], [3, 5]]).to_rat()
    inv = a.inverse()
    assert a @ inv == RatMatrix.identity(2)
    assert inv.is_integral
    half = RatMatrix.from_rows([[Fraction(1, 2)]])
    assert not half.is_integral
    with pytest.raises(ValueError):
        half.to_int()
    with pytest.raises(ValueError):
        RatMatrix.from_rows([[1, 1], [1, 1]]).inverse()
