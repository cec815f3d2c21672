"""Exception types raised by the library.

Every error carries a stable ``name`` so the CLI can report it verbatim.
:class:`DomainError` subclasses are mathematical obstructions (CLI exit
code 2); :class:`ShapeError` and :class:`MatrixFormatError` are input
problems (exit code 1).
"""


class RealRootsError(Exception):
    @property
    def name(self):
        return type(self).__name__


class ShapeError(RealRootsError, ValueError):
    """Wrong dimensions, non-square input, empty block list, non-finite entries."""


class MatrixFormatError(RealRootsError, ValueError):
    """Malformed matrix text."""


class DomainError(RealRootsError):
    pass


class Singular(DomainError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"pivot {index} below rank tolerance")


class NotSymmetric(DomainError):
    pass


class NotOrthogonal(DomainError):
    pass


class NotInvolutory(DomainError):
    pass


class NotIdempotent(DomainError):
    pass


class NoConvergence(DomainError):
    def __init__(self, sweeps, off_norm):
        self.sweeps = sweeps
        self.off_norm = off_norm
        super().__init__(
            f"Jacobi iteration did not converge in {sweeps} sweeps "
            f"(off-diagonal mass {off_norm:.3e})"
        )


class OddNegativeMultiplicity(DomainError):
    """A negative eigenvalue (or -1 for involutory/orthogonal input) has odd
    multiplicity, so none of the real-root constructions applies."""

    def __init__(self, eigenvalue, count):
        self.eigenvalue = eigenvalue
        self.count = count
        super().__init__(f"eigenvalue {eigenvalue:.17g} has odd multiplicity {count}")


class ClusterAmbiguous(DomainError):
    pass


class SingularBlock(DomainError):
    def __init__(self, which):
        self.which = which
        super().__init__(f"block {which} is singular")


class SingularSchur(DomainError):
    def __init__(self, which):
        self.which = which
        super().__init__(f"Schur complement for {which} is singular")


class ConsistencyError(DomainError):
    """An internal cross-check between two algebraically equal expressions failed."""


class DegenerateParameters(DomainError):
    pass
