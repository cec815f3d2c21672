"""Real square roots of involutory, symmetric and orthogonal matrices, and
idempotent/involutory matrices built from block data."""

from .errors import (
    ClusterAmbiguous,
    ConsistencyError,
    DegenerateParameters,
    DomainError,
    MatrixFormatError,
    NoConvergence,
    NotIdempotent,
    NotInvolutory,
    NotOrthogonal,
    NotSymmetric,
    OddNegativeMultiplicity,
    RealRootsError,
    ShapeError,
    Singular,
    SingularBlock,
    SingularSchur,
)
from .families import (
    General,
    LowerTriangular,
    Scalar,
    involutory_2x2,
    psi,
    reflection,
    rotation,
    sample_involutory_2x2,
    sample_orthogonal,
    sample_symmetric_paired,
)
from .idempotent import (
    BlockQuadruple,
    SchurPair,
    block_idempotent,
    example_family,
    idempotent_canonicalize,
    involutory_from_idempotent,
    schur_pair,
)
from .linalg import (
    CanonicalOrthogonalForm,
    MinusOne,
    PlusOne,
    Reflection,
    Rotation,
    SpectralDecomposition,
    Tolerances,
    det,
    direct_sum,
    identity,
    is_idempotent,
    is_involutory,
    is_orthogonal,
    lu_invert,
    matmul,
    orthogonal_canonical_form,
    symmetric_eig,
    transpose,
)
from .matrixio import format_matrix, parse_matrix, read_matrix, write_matrix
from .roots import (
    OrthogonalClass,
    RootOptions,
    RootTower,
    classify_orthogonal,
    involutory_eigenbasis,
    involutory_real_root,
    orthogonal_real_root,
    root_tower,
    symmetric_real_root,
)

__version__ = "0.1.0"
