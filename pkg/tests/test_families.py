import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realroots import errors, families
from realroots.families import (
    General,
    LowerTriangular,
    Scalar,
    involutory_2x2,
    psi,
    reflection,
    rotation,
)
from realroots.linalg import is_orthogonal, symmetric_eig

angles = st.floats(-10.0, 10.0, allow_nan=False)


def test_general_branch():
    m = involutory_2x2(General(3, 2))
    np.testing.assert_array_equal(m, [[3, 2], [-4, -3]])
    np.testing.assert_array_equal(m @ m, np.eye(2))


def test_other_branches():
    np.testing.assert_array_equal(involutory_2x2(Scalar(1)), np.eye(2))
    np.testing.assert_array_equal(involutory_2x2(Scalar(-1)), -np.eye(2))
    m = involutory_2x2(LowerTriangular(1, 5))
    np.testing.assert_array_equal(m, [[1, 0], [5, -1]])
    np.testing.assert_array_equal(m @ m, np.eye(2))


@pytest.mark.parametrize("make", [lambda: General(1.0, 0.0), lambda: General(1.0, 1e-13),
                                  lambda: psi(0.0, 0.0)])
def test_zero_b_rejected(make):
    with pytest.raises(errors.DegenerateParameters):
        make()


def test_bad_sign_rejected():
    with pytest.raises(ValueError):
        Scalar(2)


@pytest.mark.parametrize("a, b, expected", [
    (0, 1, [[0, -1], [1, 0]]),
    (1, 2, [[1, -2], [1, -1]]),
    (0, -1, [[0, 1], [-1, 0]]),
])
def test_psi_examples(a, b, expected):
    m = psi(a, b)
    np.testing.assert_array_equal(m, expected)
    np.testing.assert_array_equal(m @ m, -np.eye(2))


def test_rotation_and_reflection_examples():
    np.testing.assert_array_equal(rotation(0), np.eye(2))
    np.testing.assert_allclose(rotation(math.pi), -np.eye(2), atol=1e-15)
    np.testing.assert_allclose(rotation(math.pi / 2), [[0, 1], [-1, 0]], atol=1e-15)
    np.testing.assert_array_equal(reflection(0), np.diag([1.0, -1.0]))
    np.testing.assert_allclose(reflection(math.pi / 2), [[0, 1], [1, 0]], atol=1e-15)
    r = reflection(0.7)
    np.testing.assert_allclose(r @ r, np.eye(2), atol=1e-15)


def test_involutory_property_1000_draws():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        m = involutory_2x2(General(rng.uniform(-10, 10), rng.uniform(1e-3, 10) * rng.choice([-1, 1])))
        assert np.linalg.norm(m @ m - np.eye(2)) <= 1e-9 * (1 + np.linalg.norm(m) ** 2)


def test_psi_property_1000_draws():
    rng = np.random.default_rng(12)
    for _ in range(1000):
        m = psi(rng.uniform(-10, 10), rng.uniform(1e-3, 10) * rng.choice([-1, 1]))
        assert np.linalg.norm(m @ m + np.eye(2)) <= 1e-9 * (1 + np.linalg.norm(m) ** 2)


@given(st.floats(-10, 10), st.floats(1e-3, 10), st.booleans())
def test_psi_trace_and_det(a, b, negate):
    b = -b if negate else b
    m = psi(a, b)
    assert abs(np.trace(m)) <= 1e-12
    # det = -a^2 + b (1 + a^2)/b, relative to the size of its terms
    assert abs(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0] - 1.0) <= 1e-12 * (1 + a * a)


@settings(max_examples=100)
@given(angles)
def test_reflection_symmetric_involutory(theta):
    r = reflection(theta)
    np.testing.assert_array_equal(r, r.T)
    assert np.linalg.norm(r @ r - np.eye(2)) <= 1e-12
    assert np.linalg.det(r) == pytest.approx(-1.0, abs=1e-12)


@given(angles, angles)
def test_rotation_angle_addition(t1, t2):
    assert np.linalg.norm(rotation(t1) @ rotation(t2) - rotation(t1 + t2)) <= 1e-12


def test_samplers_deterministic():
    for sampler in (families.sample_involutory_2x2, lambda s: families.sample_orthogonal(4, s),
                    lambda s: families.sample_symmetric_paired(5, 2, s)):
        np.testing.assert_array_equal(sampler(99), sampler(99))


@pytest.mark.parametrize("seed", range(20))
def test_sample_involutory(seed):
    m = families.sample_involutory_2x2(seed)
    assert np.linalg.norm(m @ m - np.eye(2)) <= 1e-9 * (1 + np.linalg.norm(m) ** 2)


@pytest.mark.parametrize("seed", range(10))
def test_sample_orthogonal_2x2(seed):
    q = families.sample_orthogonal(2, seed)
    np.testing.assert_allclose(q.T @ q, np.eye(2), atol=1e-15)
    assert abs(abs(np.linalg.det(q)) - 1.0) < 1e-14


def test_sample_symmetric_paired_spectrum():
    s = families.sample_symmetric_paired(3, 1, 5)
    lam = symmetric_eig(s).lam
    assert lam[0] > 0
    assert lam[1] < 0 and lam[1] == pytest.approx(lam[2], abs=1e-10)


def test_sample_dimension_errors():
    with pytest.raises(errors.ShapeError):
        families.sample_symmetric_paired(3, 2, 0)
    with pytest.raises(errors.ShapeError):
        families.sample_orthogonal(0, 0)
    with pytest.raises(ValueError):
        families.sample_orthogonal(3, -1)


def test_sample_orthogonal_larger():
    q = families.sample_orthogonal(20, 4)
    assert is_orthogonal(q)
