"""Exception types shared across the package."""


class WelfareRankError(Exception):
    """Base class for all package-specific errors."""


class InputError(WelfareRankError, ValueError):
    """An argument violates an operation's preconditions."""


class ConfigurationError(WelfareRankError, ValueError):
    """A requested configuration is inconsistent or unsupported."""


class UndefinedMetricError(WelfareRankError, ValueError):
    """A metric is undefined for the given inputs (e.g. single-class AUC)."""
