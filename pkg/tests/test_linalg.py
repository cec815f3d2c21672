import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realroots import errors
from realroots.families import reflection, rotation, sample_orthogonal
from realroots.linalg import (
    MinusOne,
    PlusOne,
    Reflection,
    Rotation,
    Tolerances,
    as_matrix,
    det,
    direct_sum,
    identity,
    is_idempotent,
    is_involutory,
    is_orthogonal,
    lu_invert,
    matmul,
    matrices_close,
    orthogonal_canonical_form,
    pivot_columns,
    symmetric_eig,
    transpose,
)

seeds = st.integers(min_value=0, max_value=2**32)


def adjugate_inverse_2x2(m):
    (a, b), (c, d) = m
    return np.array([[d, -b], [-c, a]]) / (a * d - b * c)


# -- plumbing ---------------------------------------------------------------

def test_tolerances_validated():
    assert Tolerances().eq_rtol == 1e-10
    with pytest.raises(ValueError):
        Tolerances(eq_rtol=0.0)
    with pytest.raises(ValueError):
        Tolerances(pair_tol=1.5)


@pytest.mark.parametrize("bad", [[[np.nan]], [[1.0, np.inf]], [1.0, 2.0], [[]]])
def test_as_matrix_rejects(bad):
    with pytest.raises(errors.ShapeError):
        as_matrix(bad)


def test_results_are_read_only():
    with pytest.raises(ValueError):
        identity(2)[0, 0] = 5.0


def test_direct_sum_examples():
    np.testing.assert_array_equal(direct_sum([np.eye(1)]), np.eye(1))
    np.testing.assert_array_equal(direct_sum([[[1.0]], [[-1.0]]]), np.diag([1.0, -1.0]))
    got = direct_sum([[[0, -1], [1, 0]], [[2]]])
    np.testing.assert_array_equal(got, [[0, -1, 0], [1, 0, 0], [0, 0, 2]])


def test_direct_sum_errors():
    with pytest.raises(errors.ShapeError):
        direct_sum([])
    with pytest.raises(errors.ShapeError):
        direct_sum([np.ones((2, 3))])


def test_matmul_transpose_identity():
    x = np.arange(6.0).reshape(2, 3)
    np.testing.assert_array_equal(matmul(identity(2), x), x)
    np.testing.assert_array_equal(transpose([[1, 2], [3, 4]]), [[1, 3], [2, 4]])
    j = [[0.0, -1.0], [1.0, 0.0]]
    np.testing.assert_array_equal(matmul(j, j), -np.eye(2))
    with pytest.raises(errors.ShapeError):
        matmul(np.ones((2, 3)), np.ones((2, 3)))


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 32), st.integers(1, 32), st.integers(1, 32), st.integers(1, 32))
def test_matmul_associative(seed, n, k, l, m):
    rng = np.random.default_rng(seed)
    a, b, c = rng.standard_normal((n, k)), rng.standard_normal((k, l)), rng.standard_normal((l, m))
    left = matmul(matmul(a, b), c)
    right = matmul(a, matmul(b, c))
    assert np.linalg.norm(left - right) <= 1e-12 * (1 + np.linalg.norm(left)) * max(n, k, l, m)


def test_matrices_close_is_relative():
    assert matrices_close(1e6 * np.eye(2), 1e6 * np.eye(2) + 1e-6, 1e-10)
    assert not matrices_close(np.eye(2), np.eye(2) + 1e-6, 1e-10)
    assert not matrices_close(np.eye(2), np.eye(3), 1.0)


# -- LU -------------------------------------------------------------------

def test_lu_invert_examples():
    np.testing.assert_array_equal(lu_invert(np.eye(3)), np.eye(3))
    np.testing.assert_allclose(lu_invert([[2, 0], [0, 4]]), [[0.5, 0], [0, 0.25]])
    m = [[1.0, 1.0], [1.0, 2.0]]
    expected = adjugate_inverse_2x2(m)
    np.testing.assert_allclose(expected, [[2, -1], [-1, 1]])
    np.testing.assert_allclose(lu_invert(m), expected, atol=1e-15)


def test_lu_invert_needs_pivoting():
    m = [[0.0, 1.0], [1.0, 0.0]]
    np.testing.assert_array_equal(lu_invert(m), m)


@pytest.mark.parametrize("m, index", [
    ([[1.0, 1.0], [1.0, 1.0]], 1),
    ([[0.0, 0.0], [0.0, 0.0]], 0),
    ([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]], 2),
])
def test_lu_invert_singular(m, index):
    with pytest.raises(errors.Singular) as info:
        lu_invert(m)
    assert info.value.index == index


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 64))
def test_lu_round_trip(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1, 1, (n, n)) + 2 * n * np.eye(n)
    assert matrices_close(a @ lu_invert(a), np.eye(n), 1e-10)
    np.testing.assert_allclose(lu_invert(a), np.linalg.inv(a), rtol=1e-10, atol=1e-14)


def test_det_examples():
    assert det(np.eye(4)) == 1.0
    assert det(np.diag([1.0, -1.0])) == -1.0
    (a, b), (c, d) = [[3, 2], [-4, -3]]
    assert a * d - b * c == -1
    assert det([[3, 2], [-4, -3]]) == pytest.approx(-1.0, abs=1e-15)
    assert det([[1.0, 2.0], [2.0, 4.0]]) == 0.0


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 32))
def test_det_of_orthogonal_is_unit(seed, n):
    q = sample_orthogonal(n, seed)
    assert is_orthogonal(q)
    assert abs(abs(det(q)) - 1.0) <= 1e-8
    assert np.sign(det(q)) == np.sign(np.linalg.det(q))


# -- Jacobi -------------------------------------------------------------

def test_eig_diagonal_input_untouched():
    e = symmetric_eig(np.diag([2.0, 1.0]))
    np.testing.assert_array_equal(e.lam, [2.0, 1.0])
    np.testing.assert_array_equal(np.abs(e.q), np.eye(2))


def test_eig_swap_matrix():
    # characteristic polynomial l^2 - 1
    roots = sorted(np.roots([1.0, 0.0, -1.0]), reverse=True)
    e = symmetric_eig([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(e.lam, roots, atol=1e-15)
    np.testing.assert_allclose(e.reconstruct(), [[0, 1], [1, 0]], atol=1e-15)


def test_eig_round_trip_recovers_spectrum():
    rng = np.random.default_rng(3)
    q = np.asarray(sample_orthogonal(9, 17))
    lam = np.sort(rng.uniform(-5, 5, 9))[::-1]
    e = symmetric_eig(q.T @ np.diag(lam) @ q)
    np.testing.assert_allclose(e.lam, lam, atol=1e-8)


def test_eig_rejects_nonsymmetric():
    with pytest.raises(errors.NotSymmetric):
        symmetric_eig([[1.0, 2.0], [0.0, 1.0]])


def test_eig_sweep_cap(monkeypatch):
    from realroots import linalg

    monkeypatch.setattr(linalg, "MAX_SWEEPS", 1)
    rng = np.random.default_rng(0)
    x = rng.standard_normal((12, 12))
    with pytest.raises(errors.NoConvergence):
        symmetric_eig(x + x.T)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 64))
def test_eig_reconstruction(seed, n):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, n))
    s = x + x.T
    e = symmetric_eig(s)
    assert np.all(np.diff(e.lam) <= 0)
    assert np.linalg.norm(e.q @ e.q.T - np.eye(n)) <= 1e-12 * n
    assert np.linalg.norm(e.reconstruct() - s) <= 1e-8 * np.linalg.norm(s)
    np.testing.assert_allclose(e.lam, np.linalg.eigvalsh(s)[::-1], atol=1e-9 * np.linalg.norm(s))


# -- basis extraction -------------------------------------------------------

def test_pivot_columns():
    assert pivot_columns(np.eye(3), 1e-10) == [0, 1, 2]
    assert pivot_columns(np.zeros((3, 3)), 1e-10) == []
    assert pivot_columns([[1.0, 2.0, 0.0], [2.0, 4.0, 1.0]], 1e-10) in ([0, 2], [1, 2])


# -- canonical form -------------------------------------------------------

def test_canonical_identity():
    form = orthogonal_canonical_form(np.eye(3))
    assert form.blocks == (PlusOne(), PlusOne(), PlusOne())
    np.testing.assert_array_equal(form.p, np.eye(3))


def test_canonical_rotation_block():
    form = orthogonal_canonical_form(rotation(math.pi / 3))
    assert len(form.blocks) == 1 and isinstance(form.blocks[0], Rotation)
    assert form.blocks[0].theta == pytest.approx(math.pi / 3, abs=1e-14)
    np.testing.assert_allclose(form.reconstruct(), rotation(math.pi / 3), atol=1e-14)


def test_canonical_negative_angle_is_reoriented():
    form = orthogonal_canonical_form(rotation(-0.4))
    assert form.blocks[0].theta == pytest.approx(0.4, abs=1e-14)
    np.testing.assert_allclose(form.reconstruct(), rotation(-0.4), atol=1e-14)


def test_canonical_reflection_splits():
    form = orthogonal_canonical_form(reflection(math.pi / 4))
    assert form.blocks == (PlusOne(), MinusOne())
    np.testing.assert_allclose(form.reconstruct(), reflection(math.pi / 4), atol=1e-14)


def test_canonical_ordering():
    c = direct_sum([rotation(2.0), [[-1.0]], rotation(0.5), [[1.0]], reflection(0.3)])
    q = np.asarray(sample_orthogonal(8, 5))
    form = orthogonal_canonical_form(q @ c @ q.T)
    names = [type(b).__name__ for b in form.blocks]
    assert names == ["PlusOne", "PlusOne", "MinusOne", "MinusOne", "Rotation", "Rotation"]
    assert [b.theta for b in form.blocks[4:]] == pytest.approx([0.5, 2.0], abs=1e-10)


def test_canonical_repeated_angle():
    c = direct_sum([rotation(1.0), rotation(1.0), rotation(-1.0)])
    q = np.asarray(sample_orthogonal(6, 9))
    a = q @ c @ q.T
    form = orthogonal_canonical_form(a)
    assert all(b.theta == pytest.approx(1.0, abs=1e-10) for b in form.blocks)
    assert matrices_close(form.reconstruct(), a, 1e-12)


def test_canonical_rejects_nonorthogonal():
    with pytest.raises(errors.NotOrthogonal):
        orthogonal_canonical_form(np.diag([1.0, 2.0]))


def test_rotation_block_range():
    with pytest.raises(ValueError):
        Rotation(0.0)
    with pytest.raises(ValueError):
        Rotation(math.pi)
    np.testing.assert_allclose(Reflection(0.0).matrix(), np.diag([1.0, -1.0]))


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 64))
def test_canonical_reconstruction(seed, n):
    q = sample_orthogonal(n, seed)
    form = orthogonal_canonical_form(q)
    assert is_orthogonal(form.p)
    assert np.linalg.norm(form.reconstruct() - q) <= 1e-8 * (1 + np.linalg.norm(q))
    assert sum(b.size for b in form.blocks) == n


# -- predicates -------------------------------------------------------------

def test_predicates():
    assert is_involutory(np.eye(3))
    assert is_idempotent([[2.0, -1.0], [2.0, -1.0]])
    assert not is_idempotent([[2.0, -1.0], [2.0, 1.0]])
    assert not is_orthogonal(np.diag([1.0, 2.0]))
    assert is_orthogonal(rotation(0.3))
    assert not is_involutory(rotation(0.3))
