"""Exception types shared across the toolkit."""


class OddstabError(Exception):
    """Base class for all toolkit errors."""


class InvalidParameterError(OddstabError):
    """A constructor or operation received out-of-range parameters."""


class PreconditionError(OddstabError):
    """A documented precondition of an operation was violated."""


class ConstructionError(OddstabError):
    """A constructive procedure ran out of admissible choices.

    Raised with a diagnostic message; callers that invoke the procedure
    inside its guaranteed regime treat this as an internal invariant
    failure, not a recoverable condition.
    """


class SizeLimitError(OddstabError):
    """Input exceeds the documented exact-computation size limit."""


class BracketError(OddstabError):
    """Root bracketing failed: the sign/root-count conditions do not hold."""


class FormatError(OddstabError):
    """Malformed graph file or certificate payload."""


class VerificationError(OddstabError):
    """A certificate or cross-check failed re-verification."""
