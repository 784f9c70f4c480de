"""Exception hierarchy; ``exit_code`` is what the CLI returns for each class."""


class RingdecError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ConfigError(RingdecError):
    """Malformed or contradictory configuration / usage."""

    exit_code = 2


class NumericError(RingdecError):
    """A computation failed numerically or a tolerance was breached."""

    exit_code = 3


class LeakageError(NumericError):
    """Truncated-basis population reached the top levels; result rejected."""


class ResourceGuardError(ConfigError):
    """Requested problem size exceeds a hard desk-scale guard."""


class ValidityError(RingdecError):
    """Inputs violate the physical validity domain (e.g. 3P^2/2M^2c^2 >= 1)."""

    exit_code = 4
