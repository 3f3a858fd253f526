"""Tests for cyclic group cohomology on lattices."""

import doctest
import random

import pytest

import k3ord.cohomology as cohomology
from k3ord import catalog
from k3ord.cohomology import (
    CohResult,
    GLattice,
    fixed_sublattice,
    h1,
    half_gram_quotient,
    norm_and_diff,
)
from k3ord.errors import (
    ActionNotIsometric,
    DimensionMismatch,
    OddEntry,
    UnsupportedParameter,
)
from k3ord.lattices import Lattice
from k3ord.matrices import IntMatrix, solve_integer

from oracles import h1_box_class_count, random_unimodular


def q_glattice(n):
    return GLattice(Lattice(catalog.q_gram(n)), catalog.sextic_action(n), 2)


def model_glattice(model):
    return GLattice(model.pic, model.action, 2)


def class_in_subgroup(v, generators, diff):
    """Is the class of v generated by the given cocycle classes mod im D?"""
    if not generators:
        return solve_integer(diff, v) is not None
    gens = IntMatrix.from_cols([list(g) for g in generators])
    return solve_integer(gens.hstack(diff), v) is not None


def test_doctests_pass():
    failures, _ = doctest.testmod(cohomology)
    assert failures == 0


def test_glattice_validation():
    z2 = Lattice(IntMatrix.zeros(2, 2))
    with pytest.raises(DimensionMismatch):
        GLattice(z2, IntMatrix.identity(3), 2)
    with pytest.raises(UnsupportedParameter):
        GLattice(z2, IntMatrix.identity(2), 0)
    with pytest.raises(UnsupportedParameter):
        GLattice(z2, IntMatrix.identity(2).scale(-1), 3)
    h = Lattice(IntMatrix.from_rows([[0, 1], [1, 0]]))
    shear = IntMatrix.from_rows([[1, 1], [0, 1]])
    with pytest.raises(ActionNotIsometric):
        GLattice(h, shear, 2)


def test_norm_and_diff_trivial_cases():
    z2 = Lattice(IntMatrix.zeros(2, 2))
    n, d = norm_and_diff(GLattice(z2, IntMatrix.identity(2), 1))
    assert n == IntMatrix.identity(2)
    assert d == IntMatrix.zeros(2, 2)
    n, d = norm_and_diff(GLattice(z2, IntMatrix.identity(2).scale(-1), 2))
    assert n == IntMatrix.zeros(2, 2)
    assert d == IntMatrix.identity(2).scale(2)


def test_norm_and_diff_rank3():
    gl = q_glattice(3)
    n, d = norm_and_diff(gl)
    assert n == IntMatrix.from_rows([[1, 1, 1], [1, 1, 1], [0, 0, 0]])
    assert d == IntMatrix.from_rows([[1, -1, -1], [-1, 1, -1], [0, 0, 2]])
    zero = IntMatrix.zeros(3, 3)
    assert n @ d == zero
    assert d @ n == zero


def test_norm_times_diff_vanishes_for_models():
    for model in [catalog.sextic_model(7), catalog.quadric_model(),
                  catalog.hirzebruch2_model()]:
        n, d = norm_and_diff(model_glattice(model))
        zero = IntMatrix.zeros(model.pic.rank, model.pic.rank)
        assert n @ d == zero
        assert d @ n == zero


def test_h1_rank_family():
    for n in catalog.RANK_RANGE:
        res = h1(q_glattice(n))
        assert res.invariant_factors == tuple([2] * (n - 2)), n
        assert res.free_rank == 0
        assert len(res.generators) == n - 2


def test_h1_generators_are_valid_cocycles():
    for gl in [q_glattice(3), q_glattice(10),
               model_glattice(catalog.quadric_model()),
               model_glattice(catalog.hirzebruch2_model())]:
        norm, diff = norm_and_diff(gl)
        res = h1(gl)
        for g in res.generators:
            assert all(x == 0 for x in norm.mul_vec(g))
            assert solve_integer(diff, g) is None  # class is nontrivial


def test_h1_generators_match_named_classes():
    # The subgroup generated by the computed classes equals the subgroup
    # generated by the named difference classes, checked by mutual
    # membership modulo im D.
    for n in catalog.RANK_RANGE:
        gl = q_glattice(n)
        _, diff = norm_and_diff(gl)
        res = h1(gl)
        named = []
        for i in range(2, n):
            v = [0] * n
            v[0], v[i] = 1, -1
            named.append(tuple(v))
        for v in named:
            assert class_in_subgroup(v, res.generators, diff)
        for g in res.generators:
            assert class_in_subgroup(g, tuple(named), diff)


def test_h1_quadric():
    gl = model_glattice(catalog.quadric_model())
    res = h1(gl)
    assert res.invariant_factors == (2,)
    _, diff = norm_and_diff(gl)
    named = (0, 1, 0, -1)
    assert class_in_subgroup(named, res.generators, diff)
    assert class_in_subgroup(res.generators[0], (named,), diff)


def test_h1_hirzebruch2():
    gl = model_glattice(catalog.hirzebruch2_model())
    res = h1(gl)
    assert res.invariant_factors == (2,)
    _, diff = norm_and_diff(gl)
    named = (0, 0, 1, 0, -1)
    assert class_in_subgroup(named, res.generators, diff)
    assert class_in_subgroup(res.generators[0], (named,), diff)


def test_h1_identity_action_trivial():
    for order in (1, 2, 3):
        gl = GLattice(Lattice(IntMatrix.zeros(3, 3)), IntMatrix.identity(3), order)
        res = h1(gl)
        assert res == CohResult((), 0, ())


def test_h1_minus_identity():
    gl = GLattice(Lattice(IntMatrix.zeros(3, 3)), IntMatrix.identity(3).scale(-1), 2)
    res = h1(gl)
    assert res.invariant_factors == (2, 2, 2)
    assert res.group_order == 8


def test_h1_always_torsion():
    # n times any cocycle telescopes into im D, so free_rank must vanish.
    rng = random.Random(11)
    for _ in range(30):
        r = rng.randint(1, 4)
        perm = list(range(r))
        rng.shuffle(perm)
        signs = [rng.choice((1, -1)) for _ in range(r)]
        rows = [[0] * r for _ in range(r)]
        for j, (i, s) in enumerate(zip(perm, signs)):
            rows[i][j] = s
        sigma = IntMatrix.from_rows(rows)
        order = 1
        power = sigma
        while power != IntMatrix.identity(r):
            power = power @ sigma
            order += 1
        gl = GLattice(Lattice(IntMatrix.zeros(r, r)), sigma, order)
        assert h1(gl).free_rank == 0


def test_h1_matches_box_enumeration():
    cases = [
        (q_glattice(3), 2),
        (q_glattice(4), 4),
        (model_glattice(catalog.quadric_model()), 2),
        (model_glattice(catalog.hirzebruch2_model()), 2),
        (GLattice(Lattice(IntMatrix.zeros(2, 2)), IntMatrix.identity(2).scale(-1), 2), 4),
    ]
    for gl, expected in cases:
        res = h1(gl)
        assert res.group_order == expected
        assert h1_box_class_count(gl.sigma, gl.order, box=3) == expected


def test_h1_box_enumeration_random_involutions():
    rng = random.Random(2718)
    for _ in range(20):
        r = rng.randint(2, 4)
        perm = list(range(r))
        rng.shuffle(perm)
        signs = [rng.choice((1, -1)) for _ in range(r)]
        rows = [[0] * r for _ in range(r)]
        for j, (i, s) in enumerate(zip(perm, signs)):
            rows[i][j] = s
        sigma = IntMatrix.from_rows(rows)
        if sigma @ sigma != IntMatrix.identity(r):
            continue
        gl = GLattice(Lattice(IntMatrix.zeros(r, r)), sigma, 2)
        res = h1(gl)
        assert res.group_order == h1_box_class_count(sigma, 2, box=3)


def test_h1_invariant_under_conjugation():
    rng = random.Random(404)
    base_cases = [q_glattice(5), model_glattice(catalog.quadric_model())]
    for gl in base_cases:
        expected = h1(gl).invariant_factors
        for _ in range(20):
            p = random_unimodular(rng, gl.lattice.rank)
            p_inv = p.to_rat().inverse().to_int()
            sigma = p_inv @ gl.sigma @ p
            gram = p.transpose() @ gl.lattice.gram @ p
            conj = GLattice(Lattice(gram), sigma, gl.order)
            assert h1(conj).invariant_factors == expected


def test_doubled_differences_lie_in_image():
    for n in catalog.RANK_RANGE:
        _, diff = norm_and_diff(q_glattice(n))
        for i in range(2, n):
            v = [0] * n
            v[0], v[i] = 2, -2
            assert solve_integer(diff, v) is not None


def test_fixed_sublattice_rank_family():
    for n in (3, 9, 18):
        fixed = fixed_sublattice(q_glattice(n))
        assert fixed.source.rank == 1
        expected = tuple([1, 1] + [0] * (n - 2))
        assert fixed.matrix.col(0) == expected
        assert fixed.source.gram == IntMatrix.from_rows([[2]])


def test_fixed_sublattice_quadric():
    fixed = fixed_sublattice(model_glattice(catalog.quadric_model()))
    assert fixed.source.rank == 2
    assert fixed.matrix.col(0) == (1, 0, 0, 0)
    assert fixed.matrix.col(1) == (0, 1, 1, 0)
    assert fixed.source.gram == IntMatrix.from_rows([[0, 2], [2, 0]])


def test_fixed_sublattice_hirzebruch2():
    fixed = fixed_sublattice(model_glattice(catalog.hirzebruch2_model()))
    assert fixed.source.rank == 2
    assert fixed.matrix.col(0) == (1, 1, 0, 0, 0)
    assert fixed.matrix.col(1) == (0, 0, 1, 1, 0)
    assert fixed.source.gram == IntMatrix.from_rows([[-4, 2], [2, 0]])


def test_fixed_sublattice_minus_identity_empty():
    gl = GLattice(Lattice(IntMatrix.zeros(3, 3)), IntMatrix.identity(3).scale(-1), 2)
    assert fixed_sublattice(gl).source.rank == 0


def test_half_gram_quotient_models():
    quadric = half_gram_quotient(model_glattice(catalog.quadric_model()))
    assert quadric.gram == IntMatrix.from_rows([[0, 1], [1, 0]])
    f2 = half_gram_quotient(model_glattice(catalog.hirzebruch2_model()))
    assert f2.gram == IntMatrix.from_rows([[-2, 1], [1, 0]])
    plane = half_gram_quotient(q_glattice(6))
    assert plane.gram == IntMatrix.from_rows([[1]])


def test_half_gram_quotient_identity_on_doubled_form():
    doubled = Lattice(IntMatrix.from_rows([[0, 2], [2, 0]]))
    gl = GLattice(doubled, IntMatrix.identity(2), 2)
    assert half_gram_quotient(gl).gram == IntMatrix.from_rows([[0, 1], [1, 0]])


def test_half_gram_quotient_errors():
    odd = Lattice(IntMatrix.from_rows([[1, 0], [0, 1]]))
    with pytest.raises(OddEntry):
        half_gram_quotient(GLattice(odd, IntMatrix.identity(2), 2))
    z2 = Lattice(IntMatrix.zeros(2, 2))
    with pytest.raises(UnsupportedParameter):
        half_gram_quotient(GLattice(z2, IntMatrix.identity(2), 3))
