"""Exception types shared across the package."""


class FSchemeError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class RingAxiomError(FSchemeError):
    pass


class SizeCapError(FSchemeError):
    pass


class HomomorphismError(FSchemeError):
    pass


class NonCommutativeError(FSchemeError):
    pass


class ZeroLocalizationError(FSchemeError):
    """The requested localization is the zero ring."""


class ImproperIdealError(FSchemeError):
    """Quotient by the whole ring was requested."""


class InvalidFractionError(FSchemeError):
    pass


class BoundExceededError(FSchemeError):
    pass


class NoCenterError(FSchemeError):
    pass


class PreconditionError(FSchemeError):
    pass


class NotSigmaStableError(FSchemeError):
    """A point of F(R0) that sigma moves has no homogeneous lift."""


class StepBudgetExceeded(FSchemeError):
    """Rewriting stopped before a normal form; ``partial`` holds the last state."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
