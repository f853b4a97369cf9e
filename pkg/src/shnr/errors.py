"""Exception types shared across the package."""


class ShnrError(Exception):
    """Base class for all package-specific errors."""


class NonSquareError(ShnrError):
    """A square matrix was required."""


class NotHermitianError(ShnrError):
    """Symmetry residual of a supposedly Hermitian matrix exceeds tolerance."""


class NotPSDError(ShnrError):
    """A positive semidefinite matrix was required."""


class DimensionMismatchError(ShnrError):
    """Operand dimensions are incompatible with the space."""


class NoAdjointError(ShnrError):
    """Operator does not admit a weighted adjoint (membership test failed)."""


class ZeroOperatorError(ShnrError):
    """Functional is undefined for the (effectively) zero operator."""


class UnknownIdError(ShnrError):
    """Inequality identifier is not in the registry."""


class ArityMismatchError(ShnrError):
    """Operands supplied do not match the arity of the requested inequality."""


class FamilyNeedsIdentityAError(ShnrError):
    """Requested random family is only defined for the identity weight."""
