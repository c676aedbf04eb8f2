"""Exception hierarchy shared by the inference, simulation and CLI layers.

Everything derives from ``ValueError`` so callers (and the CLI) can treat
pydantic validation failures and domain failures the same way.
"""


class InductionError(ValueError):
    """Base class for all errors raised by induction_confidence."""


class DomainError(InductionError):
    """An argument lies outside its mathematical domain."""


class NoObservationsError(InductionError):
    """An estimate needs at least one trial."""


class UndefinedConditionalError(InductionError):
    """Conditioning on an event of probability zero."""


class InconsistentProbabilityError(InductionError):
    """Joint probability exceeds the marginal it is conditioned on."""


class InsufficientAcceptanceError(InductionError):
    """Rejection sampling kept no runs."""


class ConvergenceError(InductionError):
    """An iterative evaluation did not reach its tolerance."""


def require_probability(value: float, name: str = "x") -> float:
    """Return ``value`` as float if it lies in [0, 1], else raise DomainError."""
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value}")
    return value
