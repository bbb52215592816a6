"""Exception hierarchy shared by all modules."""


class PseudoMilnorError(Exception):
    """Base class for errors raised by this package."""


class DegenerateMetric(PseudoMilnorError, ValueError):
    """A bilinear form has an eigenvalue within tolerance of zero."""


class NotSymmetric(PseudoMilnorError, ValueError):
    pass


class ZeroPair(PseudoMilnorError, ValueError):
    pass


class DegeneratePlane(PseudoMilnorError, ValueError):
    pass


class UnsupportedSignature(PseudoMilnorError, ValueError):
    """The requested reduction needs a signature it was not given."""


class UnsupportedAlgebra(PseudoMilnorError, ValueError):
    """No set of representatives is wired for this Lie algebra."""


class SingularMatrix(PseudoMilnorError, ValueError):
    pass


class InvalidAlgebra(PseudoMilnorError, ValueError):
    """Structure constants are malformed or violate the Jacobi identity."""


class InternalConsistencyError(PseudoMilnorError, RuntimeError):
    """A constructed witness failed its own verification."""
