"""Exception and warning types shared across the package.

Precondition violations (bad argument values, malformed input files) raise
plain ValueError.  The classes below cover domain outcomes a caller may want
to catch and act on: moment data that cannot support a construction, and
numerical classifications produced by the linear-algebra kernels.
"""


class MomquadError(Exception):
    """Base class for all library-specific errors."""


class InsufficientMomentsError(MomquadError):
    """A construction needs a moment of higher degree than the sequence holds."""


class MomentOverflowError(MomquadError):
    """A closed-form moment exceeds the double-precision range."""


class DegenerateMomentsError(MomquadError):
    """The moment matrix is singular at the degree a construction requires."""


class NotPositiveDefiniteError(MomquadError):
    """Cholesky met a non-positive pivot.

    This is a classification, not a failure: callers route semidefinite or
    indefinite matrices to the appropriate solver.
    """


class IndefinitePencilError(MomquadError):
    """The leading matrix of a pencil has a genuinely negative eigenvalue."""


class SingularDeflationError(MomquadError):
    """The trailing matrix is singular on the null space of the leading one
    (higher-order infinite eigenvalues); the one-step deflation does not apply."""


class ConvergenceError(MomquadError):
    """An eigensolve failed to converge or failed its residual check."""


class SingularSystemError(MomquadError):
    """A square linear system is singular (or failed its residual check)."""


class ZeroPolynomialError(MomquadError):
    """Root extraction was asked for the identically-zero polynomial."""


class ComplexRootsError(MomquadError):
    """A polynomial expected to be real-rooted has complex roots."""


class RepeatedInfinityError(MomquadError):
    """A node list would contain the point at infinity more than once."""


class RepeatedRootError(MomquadError):
    """A polynomial that should have simple roots has a (near-)multiple root."""


class NonPositiveWeightError(MomquadError):
    """Weight recovery produced a non-positive weight; the node set admits no rule."""

    def __init__(self, index: int, weight: float):
        self.index = index
        self.weight = weight
        super().__init__(f"weight {index} is non-positive ({weight:.6g})")


class ResidualTooLargeError(MomquadError):
    """The node set cannot match the moments within tolerance."""


class CrossCheckError(MomquadError):
    """Two independent computations of the same quantity disagree."""


class NumericalWarning(UserWarning):
    """Base class for warnings attached to otherwise-successful results."""


class ConditioningWarning(NumericalWarning):
    """The moment matrix is ill-conditioned; results carry reduced accuracy."""


class MergedRootsWarning(NumericalWarning):
    """Nearly coincident roots were merged; indicates conditioning trouble."""
