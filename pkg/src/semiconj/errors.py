"""Exception hierarchy shared by all modules."""


class SemiconjError(Exception):
    """Base class for every error raised by this package."""


class BothZero(SemiconjError):
    pass


class ParseError(SemiconjError):
    pass


class ClusterAmbiguity(SemiconjError):
    """Numeric clusters could not be separated at the precision floor."""


class ContinuationFailure(SemiconjError):
    pass


class InvariantViolation(SemiconjError):
    """A computed object failed a structural check; indicates a numerics bug."""


class IdentityMismatch(SemiconjError):
    pass


class ExtractionFailure(SemiconjError):
    pass


class DegreeMismatch(SemiconjError):
    pass


class BadParameters(SemiconjError):
    pass


class TranscriptionInvalid(SemiconjError):
    pass


class SingularCurve(SemiconjError):
    pass


class Unsupported(SemiconjError):
    pass


class UnsupportedRoot(Unsupported):
    pass


class NotHolomorphicMap(SemiconjError):
    pass


class InternalInconsistency(SemiconjError):
    pass
