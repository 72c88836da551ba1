"""Exception types raised across the toolkit."""


class LMGError(Exception):
    """Base class for all toolkit errors."""


class InvalidInput(LMGError, ValueError):
    pass


class DomainError(LMGError, ValueError):
    """A closed-form expression is evaluated outside its domain of validity."""


class SolverFailure(LMGError, RuntimeError):
    """An eigensolver result failed its residual check."""


class ConsistencyError(LMGError, RuntimeError):
    """Two redundant computation paths disagree."""


class SizeError(InvalidInput):
    pass


class InvalidSites(InvalidInput):
    pass


class ConfigError(InvalidInput):
    pass


class GridError(InvalidInput):
    pass
