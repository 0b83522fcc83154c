"""Exception and warning types shared across the package."""


class MasscutError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(MasscutError):
    """Operands live in different ambient dimensions."""


class DegenerateRestriction(MasscutError):
    """Hyperplane is (nearly) parallel to the base slice and cannot be restricted."""


class BoundaryPoints(MasscutError):
    """A strict split encountered points lying on the cutting hyperplane."""


class EmptyHalf(MasscutError):
    """A split produced a half with zero total weight."""


class PreconditionViolated(MasscutError):
    """A strategy was invoked outside the domain where its construction applies."""


class NoBoundAvailable(MasscutError):
    """The bound search exhausted its state space without deriving any bound."""


class DomainError(MasscutError):
    """Arguments outside the domain of a closed-form bound."""


class CertificateError(MasscutError):
    """A bound certificate failed to replay to its stated value."""


class InstanceParseError(MasscutError):
    """An instance or cuts file could not be parsed."""


class InstanceSchemaError(InstanceParseError):
    """A file parsed but violated the schema (shapes, signs, unit normals)."""


class PreconditionOutsideGuarantee(UserWarning):
    """Solve attempted outside the regime where convergence is guaranteed."""
