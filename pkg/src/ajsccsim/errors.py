"""Shared exception types for configuration and data-contract violations."""


class ConfigError(ValueError):
    """A configuration object violates its invariants."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class InversionUndefinedError(DomainError):
    """Curve inversion requested with zero channel-length-modulation slope."""


class InsufficientDataError(ValueError):
    """Too few samples to run the requested operation."""


class ModulationRangeError(ValueError):
    """A current maps to a frequency outside the usable band."""


class ContractError(ValueError):
    """Arrays passed to an operation have incompatible shapes or metadata."""
