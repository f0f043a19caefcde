"""Exception types shared across the package."""


class CapCupError(Exception):
    """Base class for all domain errors raised by capcup."""


class DegenerateInputError(CapCupError, ValueError):
    """A point set violates general position (duplicate x or collinear triple)."""

    def __init__(self, message, points=()):
        super().__init__(message)
        self.points = tuple(points)


class ParseError(CapCupError, ValueError):
    """Malformed point, configuration or certificate text."""


class PreconditionError(CapCupError, ValueError):
    """An operation was called with inputs outside its contract."""


class ForbiddenPatternError(CapCupError):
    """The configuration contains a pattern the operation assumed absent.

    ``witness`` carries the offending chain (or gon) so callers can report it.
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class ProofInvariantError(CapCupError, AssertionError):
    """A runtime check of a proof step failed.

    Such a failure would mean the construction (or the argument it follows) is
    wrong, so it carries every piece of context available at the failure site.
    """

    def __init__(self, message, **context):
        detail = ", ".join(f"{k}={v!r}" for k, v in context.items())
        super().__init__(f"{message} ({detail})" if detail else message)
        self.context = context
