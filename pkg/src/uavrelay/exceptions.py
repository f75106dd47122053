"""Exception types raised across the simulator."""


class UavRelayError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(UavRelayError, ValueError):
    pass


class InvalidGeometryError(UavRelayError, ValueError):
    pass


class UnreachableUserError(UavRelayError):
    """A user with zero rate still has data to send; the UAV can never finish."""


class ModelDomainError(UavRelayError, ValueError):
    pass


class DivisionUndefinedError(UavRelayError, ZeroDivisionError):
    pass


class InvalidProblemError(UavRelayError, ValueError):
    pass


class ConfigError(UavRelayError, ValueError):
    pass
