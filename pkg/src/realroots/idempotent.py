"""Idempotent matrices from 2x2 block data.

Given invertible ``a`` (n x n) and ``d`` (m x m) with invertible Schur
complements, the matrix

    [[ a t,  -b s          ],
     [ c t,  -c a^-1 b s   ]]

with s = (d - c a^-1 b)^-1 and t = (a - b d^-1 c)^-1 is idempotent, and
2P - I is then an involution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConsistencyError,
    DegenerateParameters,
    NotIdempotent,
    ShapeError,
    Singular,
    SingularBlock,
    SingularSchur,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    as_matrix,
    as_square,
    column_basis,
    freeze,
    frobenius,
    idempotent_residual,
    is_idempotent,
    lu_invert,
    matrices_close,
)


@dataclass(frozen=True)
class BlockQuadruple:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        a = as_square(self.a, "a")
        d = as_square(self.d, "d")
        b = as_matrix(self.b, "b")
        c = as_matrix(self.c, "c")
        n, m = a.shape[0], d.shape[0]
        if b.shape != (n, m):
            raise ShapeError(f"b must be {n}x{m}, got {b.shape[0]}x{b.shape[1]}")
        if c.shape != (m, n):
            raise ShapeError(f"c must be {m}x{n}, got {c.shape[0]}x{c.shape[1]}")
        for name, value in (("a", a), ("b", b), ("c", c), ("d", d)):
            object.__setattr__(self, name, value)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def m(self) -> int:
        return self.d.shape[0]

    def assemble(self) -> np.ndarray:
        return freeze(np.block([[self.a, self.b], [self.c, self.d]]))


@dataclass(frozen=True)
class SchurPair:
    """s = (d - c a^-1 b)^-1 and t = (a - b d^-1 c)^-1."""

    s: np.ndarray
    t: np.ndarray


def _invert_against(x: np.ndarray, scale: float, tol: Tolerances) -> np.ndarray:
    # a complement that cancels to rounding noise is singular, whatever its
    # own pivot ratios say
    if np.max(np.abs(x)) <= tol.rank_tol * scale:
        raise Singular(0)
    return lu_invert(x, tol)


def _schur(q: BlockQuadruple, tol: Tolerances):
    try:
        a_inv = lu_invert(q.a, tol)
    except Singular:
        raise SingularBlock("a") from None
    try:
        d_inv = lu_invert(q.d, tol)
    except Singular:
        raise SingularBlock("d") from None
    cab = q.c @ a_inv @ q.b
    bdc = q.b @ d_inv @ q.c
    try:
        s = _invert_against(q.d - cab, max(np.max(np.abs(q.d)), np.max(np.abs(cab))), tol)
    except Singular:
        raise SingularSchur("s") from None
    try:
        t = _invert_against(q.a - bdc, max(np.max(np.abs(q.a)), np.max(np.abs(bdc))), tol)
    except Singular:
        raise SingularSchur("t") from None
    woodbury = a_inv + a_inv @ q.b @ s @ q.c @ a_inv
    if not matrices_close(woodbury, t, tol.eq_rtol):
        raise ConsistencyError(
            f"inverse identity violated by {frobenius(woodbury - t):.3e}; "
            "the Schur complements are too ill-conditioned"
        )
    return a_inv, freeze(s), freeze(t)


def schur_pair(q: BlockQuadruple, tol: Tolerances = DEFAULT_TOL) -> SchurPair:
    """Inverses of both Schur complements.

    Also checks a^-1 + a^-1 b s c a^-1 = t, which holds exactly whenever
    everything involved is invertible.
    """
    _, s, t = _schur(q, tol)
    return SchurPair(s=s, t=t)


def block_idempotent(q: BlockQuadruple, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    a_inv, s, t = _schur(q, tol)
    top = np.hstack([q.a @ t, -q.b @ s])
    bottom = np.hstack([q.c @ t, -q.c @ a_inv @ q.b @ s])
    return freeze(np.vstack([top, bottom]))


def involutory_from_idempotent(p, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """2p - I, an involution whenever p is idempotent."""
    p = as_square(p)
    if not is_idempotent(p, tol):
        raise NotIdempotent(f"||p^2 - p|| = {idempotent_residual(p):.3e}")
    return freeze(2.0 * p - np.eye(p.shape[0]))


def example_quadruple(a: float, b: float, c: float, d: float, n: int, m: int) -> BlockQuadruple:
    """(a I_n, b [I_m; 0], c [I_m 0], d I_m)."""
    if not (isinstance(n, (int, np.integer)) and isinstance(m, (int, np.integer))) or not n >= m >= 1:
        raise ShapeError(f"need integers n >= m >= 1, got n={n!r}, m={m!r}")
    embed = np.zeros((n, m))
    embed[:m, :m] = np.eye(m)
    return BlockQuadruple(a * np.eye(n), b * embed, c * embed.T, d * np.eye(m))


def example_family(a: float, b: float, c: float, d: float, n: int, m: int,
                   tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form idempotent P and involution 2P - I for scalar blocks.

    Requires ad != 0 and ad != bc.  The result is cross-checked against
    :func:`block_idempotent` on the same blocks.
    """
    quad = example_quadruple(a, b, c, d, n, m)
    ad, bc = a * d, b * c
    delta = ad - bc
    if abs(ad) <= tol.rank_tol or abs(delta) <= tol.rank_tol:
        raise DegenerateParameters(f"need ad != 0 and ad != bc, got ad={ad!r}, bc={bc!r}")
    p = np.zeros((n + m, n + m))
    idx = np.arange(m)
    p[idx, idx] = ad / delta
    rest = np.arange(m, n)
    p[rest, rest] = 1.0
    p[idx, n + idx] = -a * b / delta
    p[n + idx, idx] = c * d / delta
    p[n + idx, n + idx] = -bc / delta
    general = block_idempotent(quad, tol)
    if not matrices_close(p, general, tol.eq_rtol):
        raise ConsistencyError(
            f"closed form differs from the block formula by {frobenius(p - general):.3e}"
        )
    return freeze(p), freeze(2.0 * p - np.eye(n + m))


def idempotent_canonicalize(p, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, int]:
    """Invertible ``m`` and rank ``r`` with ``inv(m) @ p @ m = I_r (+) 0``.

    Columns of ``m`` are independent columns of p (its range) followed by
    independent columns of I - p (its kernel), each scaled to unit length.
    """
    p = as_square(p)
    if not is_idempotent(p, tol):
        raise NotIdempotent(f"||p^2 - p|| = {idempotent_residual(p):.3e}")
    n = p.shape[0]
    rng = column_basis(p, tol.rank_tol)
    ker = column_basis(np.eye(n) - p, tol.rank_tol)
    r = rng.shape[1]
    if r + ker.shape[1] != n:
        raise NotIdempotent(f"range and kernel have dimensions {r} + {ker.shape[1]} != {n}")
    m = np.hstack([rng, ker])
    try:
        lu_invert(m, tol)
    except Singular:
        raise NotIdempotent("range and kernel bases are dependent") from None
    return freeze(m), r


def canonical_projection(n: int, r: int) -> np.ndarray:
    out = np.zeros((n, n))
    out[np.arange(r), np.arange(r)] = 1.0
    return freeze(out)
