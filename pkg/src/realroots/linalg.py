"""Dense real-matrix kernels and canonical forms.

Matrices are plain ``numpy.ndarray`` objects of dtype float64.  Everything
returned from this package is marked read-only so results can be shared
freely; pass ``.copy()`` if you need to mutate one.

The heavy lifting here is done by two hand-written kernels: an LU
factorisation with partial pivoting (inverse, determinant) and a cyclic
Jacobi eigensolver for symmetric matrices.  The orthogonal canonical form
is built on top of the latter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .errors import (
    ConsistencyError,
    NoConvergence,
    NotOrthogonal,
    NotSymmetric,
    ShapeError,
    Singular,
)

MAX_SWEEPS = 30


@dataclass(frozen=True)
class Tolerances:
    """Numerical policy shared by every routine.

    eq_rtol  -- relative Frobenius tolerance for matrix equality
    rank_tol -- pivot threshold relative to the largest pivot
    pair_tol -- eigenvalue clustering tolerance for multiplicity counting
    """

    eq_rtol: float = 1e-10
    rank_tol: float = 1e-10
    pair_tol: float = 1e-8

    def __post_init__(self):
        for field in ("eq_rtol", "rank_tol", "pair_tol"):
            value = getattr(self, field)
            if not (0.0 < value < 1.0):
                raise ValueError(f"{field} must lie in (0, 1), got {value!r}")


DEFAULT_TOL = Tolerances()


# --------------------------------------------------------------------------
# construction and plumbing
# --------------------------------------------------------------------------

def freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate ``a`` as a finite 2-D real array and return a read-only copy."""
    try:
        m = np.array(a, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"{name}: not a real matrix ({exc})") from None
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeError(f"{name}: expected a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ShapeError(f"{name}: entries must be finite")
    return freeze(m)


def as_square(a, name: str = "matrix") -> np.ndarray:
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"{name}: expected a square matrix, got shape {m.shape}")
    return m


def identity(n: int) -> np.ndarray:
    if n < 1:
        raise ShapeError(f"identity size must be positive, got {n}")
    return freeze(np.eye(n))


def transpose(a) -> np.ndarray:
    return freeze(as_matrix(a).T.copy())


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return freeze(a @ b)


def direct_sum(blocks: Sequence) -> np.ndarray:
    """Block-diagonal matrix with ``blocks`` along the diagonal."""
    if len(blocks) == 0:
        raise ShapeError("direct_sum needs at least one block")
    mats = [as_square(b, f"block {i}") for i, b in enumerate(blocks)]
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n))
    i = 0
    for m in mats:
        k = m.shape[0]
        out[i:i + k, i:i + k] = m
        i += k
    return freeze(out)


def frobenius(a) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=np.float64), "fro"))


def matrices_close(x, y, rtol: float) -> bool:
    """Relative Frobenius equality: ||x-y|| <= rtol (1 + max(||x||, ||y||))."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        return False
    return frobenius(x - y) <= rtol * (1.0 + max(frobenius(x), frobenius(y)))


# --------------------------------------------------------------------------
# LU with partial pivoting
# --------------------------------------------------------------------------

def _lu(a: np.ndarray, rank_tol: float, strict: bool):
    """In-place style LU on a copy of ``a``.

    Returns (lu, perm, sign, det_zero).  With ``strict`` a pivot whose
    magnitude falls below ``rank_tol`` times the reference scale raises
    :class:`Singular`; otherwise the factorisation records a zero pivot.
    """
    lu = np.array(a, dtype=np.float64)
    n = lu.shape[0]
    perm = np.arange(n)
    sign = 1.0
    scale = float(np.max(np.abs(lu)))
    det_zero = False
    for k in range(n):
        r = k + int(np.argmax(np.abs(lu[k:, k])))
        pivot = lu[r, k]
        if abs(pivot) <= rank_tol * scale or pivot == 0.0:
            if strict:
                raise Singular(k)
            det_zero = True
            continue
        scale = max(scale, abs(pivot))
        if r != k:
            lu[[k, r]] = lu[[r, k]]
            perm[[k, r]] = perm[[r, k]]
            sign = -sign
        lu[k + 1:, k] /= pivot
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm, sign, det_zero


def lu_invert(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Inverse via LU with partial pivoting.

    Raises :class:`Singular` carrying the index of the first pivot that
    falls below ``tol.rank_tol`` times the largest pivot seen.
    """
    a = as_square(a)
    n = a.shape[0]
    lu, perm, _, _ = _lu(a, tol.rank_tol, strict=True)
    # solve L U X = P I column block at once
    x = np.eye(n)[perm]
    for k in range(n):
        x[k + 1:] -= np.outer(lu[k + 1:, k], x[k])
    for k in range(n - 1, -1, -1):
        x[k] /= lu[k, k]
        x[:k] -= np.outer(lu[:k, k], x[k])
    return freeze(x)


def det(a, tol: Tolerances = DEFAULT_TOL) -> float:
    """Determinant as the signed product of LU pivots; 0.0 when singular."""
    a = as_square(a)
    lu, _, sign, det_zero = _lu(a, tol.rank_tol, strict=False)
    if det_zero:
        return 0.0
    return float(sign * np.prod(np.diag(lu)))


# --------------------------------------------------------------------------
# predicates
# --------------------------------------------------------------------------

def involutory_residual(a) -> float:
    a = as_square(a)
    return frobenius(a @ a - np.eye(a.shape[0]))


def idempotent_residual(a) -> float:
    a = as_square(a)
    return frobenius(a @ a - a)


def orthogonal_residual(a) -> float:
    a = as_square(a)
    return frobenius(a.T @ a - np.eye(a.shape[0]))


def is_involutory(a, tol: Tolerances = DEFAULT_TOL) -> bool:
    a = as_square(a)
    return involutory_residual(a) <= tol.eq_rtol * (1.0 + frobenius(a) ** 2)


def is_idempotent(a, tol: Tolerances = DEFAULT_TOL) -> bool:
    a = as_square(a)
    return idempotent_residual(a) <= tol.eq_rtol * (1.0 + frobenius(a) ** 2)


def is_orthogonal(a, tol: Tolerances = DEFAULT_TOL) -> bool:
    a = as_square(a)
    return orthogonal_residual(a) <= tol.eq_rtol * (1.0 + frobenius(a) ** 2)


def is_symmetric(a, tol: Tolerances = DEFAULT_TOL) -> bool:
    a = as_square(a)
    return frobenius(a - a.T) <= tol.eq_rtol * frobenius(a)


# --------------------------------------------------------------------------
# symmetric eigenproblem: cyclic Jacobi
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralDecomposition:
    """``s = q.T @ diag(lam) @ q`` with ``q`` orthogonal and ``lam`` descending.

    Rows of ``q`` are the eigenvectors.
    """

    q: np.ndarray
    lam: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return freeze(self.q.T @ np.diag(self.lam) @ self.q)


@lru_cache(maxsize=None)
def _round_robin(n: int):
    """Tournament ordering: n-1 (or n) rounds of disjoint index pairs that
    together visit every off-diagonal pair exactly once per sweep."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for i in range(m // 2):
            p, q = sorted((players[i], players[m - 1 - i]))
            if q < n:
                pairs.append((p, q))
        if pairs:
            p_idx, q_idx = (np.array(x) for x in zip(*pairs))
            rounds.append((p_idx, q_idx))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    return frobenius(a - np.diag(np.diag(a)))


def _jacobi(s: np.ndarray, target: float):
    n = s.shape[0]
    a = 0.5 * (s + s.T)
    v = np.eye(n)
    if n == 1:
        return np.diag(a).copy(), v
    rounds = _round_robin(n)
    for _ in range(MAX_SWEEPS):
        if _off_norm(a) <= target:
            break
        for p, q in rounds:
            apq = a[p, q]
            app = a[p, p]
            aqq = a[q, q]
            active = apq != 0.0
            t = np.zeros_like(apq)
            if np.any(active):
                tau = (aqq[active] - app[active]) / (2.0 * apq[active])
                sgn = np.where(tau >= 0.0, 1.0, -1.0)
                t[active] = sgn / (np.abs(tau) + np.hypot(1.0, tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            sn = t * c
            j = np.eye(n)
            j[p, p] = c
            j[q, q] = c
            j[p, q] = sn
            j[q, p] = -sn
            a = j.T @ a @ j
            v = v @ j
    else:
        off = _off_norm(a)
        if off > target:
            raise NoConvergence(MAX_SWEEPS, off)
    return np.diag(a).copy(), v


def symmetric_eig(s, tol: Tolerances = DEFAULT_TOL) -> SpectralDecomposition:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi.

    Sweeps use a round-robin pair ordering so each round's rotations are
    disjoint and applied as one orthogonal similarity.  Iteration stops when
    the off-diagonal Frobenius mass is at most ``eq_rtol * ||s||_F``.
    """
    s = as_square(s)
    if not is_symmetric(s, tol):
        raise NotSymmetric(f"||s - s^T|| = {frobenius(s - s.T):.3e}")
    lam, v = _jacobi(s, tol.eq_rtol * frobenius(s))
    order = np.argsort(-lam, kind="stable")
    return SpectralDecomposition(q=freeze(v[:, order].T.copy()), lam=freeze(lam[order]))


def cluster_sorted(values: np.ndarray, gap: float) -> list[np.ndarray]:
    """Split sorted ``values`` into runs whose neighbours differ by <= ``gap``."""
    if len(values) == 0:
        return []
    breaks = np.nonzero(np.abs(np.diff(values)) > gap)[0] + 1
    return np.split(np.arange(len(values)), breaks)


# --------------------------------------------------------------------------
# basis extraction by column-pivoted elimination
# --------------------------------------------------------------------------

def pivot_columns(m, rank_tol: float) -> list[int]:
    """Indices of a maximal set of independent columns of ``m``.

    Gaussian elimination with complete pivoting; elimination stops once the
    largest remaining entry drops below ``rank_tol`` times the first pivot
    (and never counts a pivot below ``rank_tol`` in absolute terms, which is
    the right floor for projectors, whose non-zero norm is at least one).
    """
    w = np.array(m, dtype=np.float64)
    rows, cols = w.shape
    row_left = list(range(rows))
    col_left = list(range(cols))
    chosen: list[int] = []
    first = None
    while row_left and col_left:
        sub = np.abs(w[np.ix_(row_left, col_left)])
        i, j = np.unravel_index(int(np.argmax(sub)), sub.shape)
        pivot = sub[i, j]
        if first is None:
            first = max(pivot, 1.0)
        if pivot <= rank_tol * first:
            break
        r, c = row_left[i], col_left[j]
        chosen.append(c)
        row_left.remove(r)
        others = np.array(row_left, dtype=int)
        w[others, :] -= np.outer(w[others, c] / w[r, c], w[r, :])
        col_left.remove(c)
    return sorted(chosen)


def column_basis(m, rank_tol: float) -> np.ndarray:
    """Unit-norm independent columns of ``m`` spanning its range.

    Each column's sign is chosen so its largest-magnitude entry is positive.
    """
    m = np.asarray(m, dtype=np.float64)
    idx = pivot_columns(m, rank_tol)
    basis = m[:, idx].copy()
    for k in range(basis.shape[1]):
        col = basis[:, k]
        col /= np.linalg.norm(col)
        if col[int(np.argmax(np.abs(col)))] < 0:
            col *= -1.0
    return basis


# --------------------------------------------------------------------------
# orthogonal canonical form
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PlusOne:
    size = 1

    def matrix(self) -> np.ndarray:
        return np.ones((1, 1))

    def __str__(self):
        return "PlusOne"


@dataclass(frozen=True)
class MinusOne:
    size = 1

    def matrix(self) -> np.ndarray:
        return -np.ones((1, 1))

    def __str__(self):
        return "MinusOne"


@dataclass(frozen=True)
class Rotation:
    """The block [[cos t, sin t], [-sin t, cos t]] with t strictly in (0, pi)."""

    theta: float
    size = 2

    def __post_init__(self):
        if not (0.0 < self.theta < math.pi):
            raise ValueError(f"Rotation angle must lie in (0, pi), got {self.theta!r}")

    def matrix(self) -> np.ndarray:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return np.array([[c, s], [-s, c]])

    def __str__(self):
        return f"Rotation({self.theta:.17g})"


@dataclass(frozen=True)
class Reflection:
    """The block [[cos t, sin t], [sin t, -cos t]].

    Never produced by :func:`orthogonal_canonical_form`; it exists for
    building inputs and for describing involutory orthogonal matrices.
    """

    theta: float
    size = 2

    def matrix(self) -> np.ndarray:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return np.array([[c, s], [s, -c]])

    def __str__(self):
        return f"Reflection({self.theta:.17g})"


Block = Union[PlusOne, MinusOne, Rotation, Reflection]


@dataclass(frozen=True)
class CanonicalOrthogonalForm:
    """``q = p @ direct_sum(blocks) @ p.T`` with ``p`` orthogonal.

    Blocks are ordered: all PlusOne, then all MinusOne, then rotations by
    ascending angle.
    """

    p: np.ndarray
    blocks: tuple

    def block_matrix(self) -> np.ndarray:
        return direct_sum([b.matrix() for b in self.blocks])

    def reconstruct(self) -> np.ndarray:
        return freeze(self.p @ self.block_matrix() @ self.p.T)

    def count(self, kind) -> int:
        return sum(isinstance(b, kind) for b in self.blocks)


def _orthonormal_complement(u: np.ndarray, remove: np.ndarray) -> np.ndarray:
    """Orthonormal basis of span(u) minus the span of the columns of ``remove``."""
    z = u - remove @ (remove.T @ u)
    left, sv, _ = np.linalg.svd(z, full_matrices=False)
    keep = u.shape[1] - remove.shape[1]
    return left[:, :keep]


def orthogonal_canonical_form(q, tol: Tolerances = DEFAULT_TOL) -> CanonicalOrthogonalForm:
    """Real orthogonal block-diagonalisation of an orthogonal matrix.

    The symmetric part (q + q^T)/2 commutes with q, so each of its
    eigenspaces (eigenvalue cos t) is q-invariant.  Inside a cluster the
    skew part separates genuine +-1 eigenvectors (where it vanishes) from
    rotation planes, which are then peeled off pairwise and oriented so the
    angle lands in (0, pi).  Reflection planes have eigenvalues +1 and -1
    and therefore come out as PlusOne and MinusOne.
    """
    q = as_square(q)
    if not is_orthogonal(q, tol):
        raise NotOrthogonal(f"||q^T q - I|| = {orthogonal_residual(q):.3e}")
    n = q.shape[0]
    # tighter internal tolerance: invariant-subspace error scales like
    # off-diagonal mass / spectral gap
    inner = Tolerances(min(tol.eq_rtol, 1e-13), tol.rank_tol, tol.pair_tol)
    sym = 0.5 * (q + q.T)
    spec = symmetric_eig(sym, inner)
    vecs = spec.q.T
    null_tol = tol.eq_rtol

    plus, minus, planes = [], [], []
    for idx in cluster_sorted(spec.lam, tol.pair_tol):
        w = vecs[:, idx]
        m = w.T @ q @ w
        d = len(idx)
        skew = 0.5 * (m - m.T)
        if d == 1 or frobenius(skew) <= null_tol:
            null_basis = np.eye(d)
            rot_basis = np.zeros((d, 0))
        else:
            g = skew.T @ skew
            gs = symmetric_eig(0.5 * (g + g.T), inner)
            is_null = gs.lam <= null_tol ** 2
            null_basis = gs.q[is_null].T
            rot_basis = gs.q[~is_null].T
        if rot_basis.shape[1] % 2:
            raise ConsistencyError("rotation subspace of odd dimension in canonical form")

        for k in range(null_basis.shape[1]):
            x = null_basis[:, k]
            target = plus if x @ m @ x > 0 else minus
            target.append(w @ x)

        remaining = rot_basis
        while remaining.shape[1]:
            u = remaining[:, 0]
            y = remaining @ (remaining.T @ (m @ u))
            y -= (u @ y) * u
            ny = np.linalg.norm(y)
            if ny <= null_tol:
                raise ConsistencyError("degenerate rotation plane in canonical form")
            y /= ny
            v1, v2 = w @ u, w @ y
            r2 = np.array([v1, v2]) @ q @ np.column_stack([v1, v2])
            theta = math.atan2(r2[0, 1], r2[0, 0])
            if theta < 0:
                v2 = -v2
                theta = -theta
            if not (0.0 < theta < math.pi):
                raise ConsistencyError(f"rotation angle {theta!r} outside (0, pi)")
            planes.append((theta, v1, v2))
            remaining = _orthonormal_complement(remaining, np.column_stack([u, y]))

    planes.sort(key=lambda item: item[0])
    columns = plus + minus
    blocks: list = [PlusOne()] * len(plus) + [MinusOne()] * len(minus)
    for theta, v1, v2 in planes:
        columns.extend([v1, v2])
        blocks.append(Rotation(theta))
    p = np.column_stack(columns) if columns else np.zeros((n, 0))
    if p.shape[1] != n:
        raise ConsistencyError(f"canonical basis has {p.shape[1]} columns, expected {n}")
    return CanonicalOrthogonalForm(p=freeze(p), blocks=tuple(blocks))
