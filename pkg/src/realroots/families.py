"""Explicit 2x2 families and seeded random test inputs.

Every real 2x2 involution belongs to one of three branches (see
:class:`General`, :class:`LowerTriangular`, :class:`Scalar`); every real
2x2 square root of -I is ``psi(a, b)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DegenerateParameters, ShapeError
from .linalg import freeze

MIN_B = 1e-12

# sampling ranges; fixed so seeded suites are reproducible
A_RANGE = (-10.0, 10.0)
B_RANGE = (1e-3, 10.0)
POSITIVE_EIG_RANGE = (0.5, 5.0)
NEGATIVE_EIG_RANGE = (0.5, 5.0)


def require_nonzero_b(b: float) -> None:
    if not math.isfinite(b) or abs(b) < MIN_B:
        raise DegenerateParameters(f"|b| must be at least {MIN_B:g}, got {b!r}")


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")


@dataclass(frozen=True)
class General:
    """[[a, b], [(1 - a^2)/b, -a]] with b != 0."""

    a: float
    b: float

    def __post_init__(self):
        require_nonzero_b(self.b)


@dataclass(frozen=True)
class LowerTriangular:
    """[[s, 0], [c, -s]] with s = +-1."""

    sign: int
    c: float

    def __post_init__(self):
        _check_sign(self.sign)


@dataclass(frozen=True)
class Scalar:
    sign: int

    def __post_init__(self):
        _check_sign(self.sign)


InvolutoryParam = Union[General, LowerTriangular, Scalar]


def involutory_2x2(p: InvolutoryParam) -> np.ndarray:
    if isinstance(p, General):
        require_nonzero_b(p.b)
        m = [[p.a, p.b], [(1.0 - p.a * p.a) / p.b, -p.a]]
    elif isinstance(p, LowerTriangular):
        m = [[p.sign, 0.0], [p.c, -p.sign]]
    elif isinstance(p, Scalar):
        m = [[p.sign, 0.0], [0.0, p.sign]]
    else:
        raise TypeError(f"not an involutory parameter: {p!r}")
    return freeze(np.array(m, dtype=np.float64))


def psi(a: float, b: float) -> np.ndarray:
    """[[a, -b], [(1 + a^2)/b, -a]]; squares to -I for every b != 0."""
    require_nonzero_b(b)
    return freeze(np.array([[a, -b], [(1.0 + a * a) / b, -a]]))


def rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return freeze(np.array([[c, s], [-s, c]]))


def reflection(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return freeze(np.array([[c, s], [s, -c]]))


# --------------------------------------------------------------------------
# seeded sampling
# --------------------------------------------------------------------------

def _rng(seed: int) -> np.random.Generator:
    if not 0 <= seed < 2 ** 64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    return np.random.default_rng(seed)


def _signed_b(rng: np.random.Generator) -> float:
    return float(rng.uniform(*B_RANGE) * rng.choice([-1.0, 1.0]))


def sample_involutory_param(seed: int) -> InvolutoryParam:
    """General with probability 0.8, LowerTriangular 0.15, Scalar 0.05."""
    rng = _rng(seed)
    u = rng.random()
    sign = int(rng.choice([-1, 1]))
    if u < 0.8:
        return General(float(rng.uniform(*A_RANGE)), _signed_b(rng))
    if u < 0.95:
        return LowerTriangular(sign, float(rng.uniform(*A_RANGE)))
    return Scalar(sign)


def sample_involutory_2x2(seed: int) -> np.ndarray:
    return involutory_2x2(sample_involutory_param(seed))


def sample_psi_params(seed: int) -> tuple[float, float]:
    rng = _rng(seed)
    return float(rng.uniform(*A_RANGE)), _signed_b(rng)


def _orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    q = np.eye(n)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for k in rng.permutation(len(pairs)):
        i, j = pairs[k]
        t = rng.uniform(0.0, 2.0 * math.pi)
        c, s = math.cos(t), math.sin(t)
        qi = q[:, i].copy()
        q[:, i] = c * qi - s * q[:, j]
        q[:, j] = s * qi + c * q[:, j]
    flips = rng.choice([-1.0, 1.0], size=n)
    return q * flips


def sample_orthogonal(n: int, seed: int) -> np.ndarray:
    """Product of plane rotations (one per index pair, random order and
    angle) followed by random column sign flips."""
    if n < 1:
        raise ShapeError(f"n must be positive, got {n}")
    return freeze(_orthogonal(n, _rng(seed)))


def sample_symmetric_paired(n: int, num_negative_pairs: int, seed: int) -> np.ndarray:
    """Q^T diag(lam) Q where each negative eigenvalue appears exactly twice."""
    if n < 1 or num_negative_pairs < 0 or 2 * num_negative_pairs > n:
        raise ShapeError(
            f"need n >= 1 and 0 <= 2*pairs <= n, got n={n}, pairs={num_negative_pairs}"
        )
    rng = _rng(seed)
    q = _orthogonal(n, rng)
    neg = -rng.uniform(*NEGATIVE_EIG_RANGE, size=num_negative_pairs)
    pos = rng.uniform(*POSITIVE_EIG_RANGE, size=n - 2 * num_negative_pairs)
    lam = np.concatenate([pos, np.repeat(neg, 2)])
    s = q.T @ np.diag(lam) @ q
    return freeze(0.5 * (s + s.T))
