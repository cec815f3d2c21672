"""Real square roots of involutory, symmetric and orthogonal matrices.

All three constructors follow the same recipe: bring the input to a simple
block form by a real similarity, take a root of each block (a signed
scalar root, or a 2x2 block squaring to a negative multiple of the
identity for each pair of repeated negative eigenvalues), and conjugate
back.  A negative eigenvalue with odd multiplicity blocks the recipe and
raises :class:`OddNegativeMultiplicity`; for ``diag(1, -1)`` no real root
exists at all.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    ClusterAmbiguous,
    NotInvolutory,
    NotSymmetric,
    OddNegativeMultiplicity,
    Singular,
)
from .families import require_nonzero_b, psi, rotation
from .linalg import (
    DEFAULT_TOL,
    CanonicalOrthogonalForm,
    MinusOne,
    PlusOne,
    Rotation,
    Tolerances,
    as_square,
    cluster_sorted,
    column_basis,
    direct_sum,
    freeze,
    frobenius,
    involutory_residual,
    is_involutory,
    is_symmetric,
    lu_invert,
    orthogonal_canonical_form,
    symmetric_eig,
)

MAX_TOWER_DEPTH = 40


@dataclass(frozen=True)
class RootOptions:
    """Free choices in the root constructions.

    ``signs`` picks the sign of each scalar root (one per +1 eigenvalue of an
    involution, or per non-negative eigenvalue of a symmetric matrix);
    ``psi_params`` gives the (a, b) of the 2x2 block used for each pair of
    negative eigenvalues.  Defaults: all +1, and (0, 1) for every pair.
    """

    signs: Optional[Sequence[int]] = None
    psi_params: Optional[Sequence[tuple]] = None

    def __post_init__(self):
        if self.signs is not None:
            object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
            if any(s not in (1, -1) for s in self.signs):
                raise ValueError(f"signs must be +1 or -1, got {self.signs}")
        if self.psi_params is not None:
            params = tuple((float(a), float(b)) for a, b in self.psi_params)
            for _, b in params:
                require_nonzero_b(b)
            object.__setattr__(self, "psi_params", params)

    def resolve(self, n_signs: int, n_pairs: int):
        signs = self.signs if self.signs is not None else (1,) * n_signs
        params = self.psi_params if self.psi_params is not None else ((0.0, 1.0),) * n_pairs
        if len(signs) != n_signs:
            raise ValueError(f"expected {n_signs} signs, got {len(signs)}")
        if len(params) != n_pairs:
            raise ValueError(f"expected {n_pairs} psi parameter pairs, got {len(params)}")
        return signs, params


DEFAULT_OPTIONS = RootOptions()


def square_repeatedly(m: np.ndarray, times: int) -> np.ndarray:
    """m^(2^times) by repeated squaring."""
    out = np.asarray(m)
    for _ in range(times):
        out = out @ out
    return out


# --------------------------------------------------------------------------
# involutory matrices
# --------------------------------------------------------------------------

def _involutory_basis(a: np.ndarray, tol: Tolerances):
    if not is_involutory(a, tol):
        raise NotInvolutory(f"||a^2 - I|| = {involutory_residual(a):.3e}")
    n = a.shape[0]
    eye = np.eye(n)
    plus = column_basis(0.5 * (eye + a), tol.rank_tol)
    minus = column_basis(0.5 * (eye - a), tol.rank_tol)
    k = plus.shape[1]
    if k + minus.shape[1] != n:
        raise NotInvolutory(f"eigenspaces have dimensions {k} + {minus.shape[1]} != {n}")
    b = np.hstack([plus, minus])
    try:
        b_inv = lu_invert(b, tol)
    except Singular:
        raise NotInvolutory("eigenvectors of the two eigenspaces are dependent") from None
    return freeze(b), b_inv, k


def involutory_eigenbasis(a, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, int]:
    """Real ``b`` with ``inv(b) @ a @ b = diag(1,..,1,-1,..,-1)`` and the
    number ``k`` of +1 eigenvalues.

    The columns of ``b`` are independent columns of the spectral projectors
    (I + a)/2 and (I - a)/2, normalised to unit length.
    """
    b, _, k = _involutory_basis(as_square(a), tol)
    return b, k


def involutory_real_root(a, opts: RootOptions = DEFAULT_OPTIONS,
                         tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Real R with R @ R = a for an involution with det(a) > 0."""
    a = as_square(a)
    b, b_inv, k = _involutory_basis(a, tol)
    n_neg = a.shape[0] - k
    if n_neg % 2:
        raise OddNegativeMultiplicity(-1.0, n_neg)
    signs, params = opts.resolve(k, n_neg // 2)
    blocks = [np.diag(np.asarray(signs, dtype=np.float64))] if k else []
    blocks += [psi(pa, pb) for pa, pb in params]
    return freeze(b @ direct_sum(blocks) @ b_inv)


# --------------------------------------------------------------------------
# symmetric matrices
# --------------------------------------------------------------------------

def symmetric_real_root(s, opts: RootOptions = DEFAULT_OPTIONS,
                        tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Real R with R @ R = s when every negative eigenvalue of the symmetric
    matrix ``s`` has even multiplicity.

    Eigenvalues within ``pair_tol * ||s||`` of each other form one cluster;
    eigenvalues at or above ``-pair_tol * ||s||`` count as non-negative.
    When negative eigenvalues exist the root is not symmetric.
    """
    s = as_square(s)
    if not is_symmetric(s, tol):
        raise NotSymmetric(f"||s - s^T|| = {frobenius(s - s.T):.3e}")
    spec = symmetric_eig(s, tol)
    lam = spec.lam
    thresh = tol.pair_tol * frobenius(s)
    k = int(np.sum(lam >= -thresh))
    if 0 < k < len(lam) and lam[k - 1] - lam[k] <= thresh:
        raise ClusterAmbiguous(
            f"eigenvalue {lam[k]:.17g} is within {thresh:.3g} of the non-negative spectrum"
        )
    negative = lam[k:]
    pairs = []
    for idx in cluster_sorted(negative, thresh):
        if len(idx) % 2:
            raise OddNegativeMultiplicity(float(np.mean(negative[idx])), len(idx))
        pairs.extend(idx[0::2] + k)
    signs, params = opts.resolve(k, len(pairs))
    blocks = []
    if k:
        blocks.append(np.diag(np.asarray(signs) * np.sqrt(np.maximum(lam[:k], 0.0))))
    for i, (pa, pb) in zip(pairs, params):
        mu = -0.5 * (lam[i] + lam[i + 1])
        blocks.append(math.sqrt(mu) * psi(pa, pb))
    return freeze(spec.q.T @ direct_sum(blocks) @ spec.q)


# --------------------------------------------------------------------------
# orthogonal matrices
# --------------------------------------------------------------------------

def _halved_blocks(form: CanonicalOrthogonalForm, level: int) -> np.ndarray:
    """Block matrix whose 2^level-th power is the canonical form.

    Consecutive MinusOne blocks are paired into half-turns; every angle is
    divided by 2^level.
    """
    if level == 0:
        return form.block_matrix()
    scale = 2.0 ** level
    blocks = []
    minus_pending = 0
    for blk in form.blocks:
        if isinstance(blk, PlusOne):
            blocks.append(np.ones((1, 1)))
        elif isinstance(blk, MinusOne):
            minus_pending += 1
            if minus_pending == 2:
                blocks.append(rotation(math.pi / scale))
                minus_pending = 0
        elif isinstance(blk, Rotation):
            blocks.append(rotation(blk.theta / scale))
        else:
            raise TypeError(f"unexpected block {blk!r} in canonical form")
    return direct_sum(blocks)


def _rootable_form(q, tol: Tolerances) -> CanonicalOrthogonalForm:
    form = orthogonal_canonical_form(q, tol)
    n_minus = form.count(MinusOne)
    if n_minus % 2:
        raise OddNegativeMultiplicity(-1.0, n_minus)
    return form


def orthogonal_real_root(q, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Real orthogonal R with R @ R = q, when -1 has even multiplicity in q."""
    form = _rootable_form(q, tol)
    return freeze(form.p @ _halved_blocks(form, 1) @ form.p.T)


@dataclass(frozen=True)
class RootTower:
    """Levels D_0 .. D_depth with (p D_j p^T)^(2^j) equal to the input.

    ``dk[0]`` is the canonical form itself; each level squares to the one
    before it and the levels approach the identity as j grows.
    """

    p: np.ndarray
    dk: tuple = field(repr=False)
    depth: int

    def level_root(self, j: int) -> np.ndarray:
        return freeze(self.p @ self.dk[j] @ self.p.T)

    def distance_to_identity(self, j: int) -> float:
        d = self.dk[j]
        return frobenius(d - np.eye(d.shape[0]))

    def reconstruct(self, j: int) -> np.ndarray:
        return freeze(square_repeatedly(self.level_root(j), j))


def root_tower(q, depth: int, tol: Tolerances = DEFAULT_TOL) -> RootTower:
    if not 1 <= depth <= MAX_TOWER_DEPTH:
        raise ValueError(f"depth must be between 1 and {MAX_TOWER_DEPTH}, got {depth}")
    form = _rootable_form(q, tol)
    levels = tuple(_halved_blocks(form, j) for j in range(depth + 1))
    return RootTower(p=form.p, dk=levels, depth=depth)


class OrthogonalClass(enum.Enum):
    INVOLUTORY_ORTHOGONAL = "InvolutoryOrthogonal"
    HAS_REAL_ORTHOGONAL_ROOT = "HasRealOrthogonalRoot"
    NO_REAL_ROOT_CONSTRUCTION = "NoRealRootConstruction"


@dataclass(frozen=True)
class OrthogonalClassification:
    kind: OrthogonalClass
    root_eligible: bool
    form: CanonicalOrthogonalForm = field(repr=False)


def classify_orthogonal(q, tol: Tolerances = DEFAULT_TOL) -> OrthogonalClassification:
    """Label an orthogonal matrix by its canonical form.

    Only +-1 blocks means the matrix is an involution (reflection planes are
    already split into +1 and -1).  Otherwise it is rootable exactly when -1
    has even multiplicity.  ``root_eligible`` reports that second property
    independently, since an involution such as -I can also have a root.
    NoRealRootConstruction means no construction here applies, not that a
    real root cannot exist.
    """
    form = orthogonal_canonical_form(q, tol)
    eligible = form.count(MinusOne) % 2 == 0
    if form.count(Rotation) == 0:
        kind = OrthogonalClass.INVOLUTORY_ORTHOGONAL
    elif eligible:
        kind = OrthogonalClass.HAS_REAL_ORTHOGONAL_ROOT
    else:
        kind = OrthogonalClass.NO_REAL_ROOT_CONSTRUCTION
    return OrthogonalClassification(kind=kind, root_eligible=eligible, form=form)
