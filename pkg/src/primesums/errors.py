"""Exception types raised across the package."""


class PrimeSumsError(Exception):
    """Base class for all package errors."""


class NotPrime(PrimeSumsError, ValueError):
    pass


class TooSmall(PrimeSumsError, ValueError):
    pass


class TooLarge(PrimeSumsError, ValueError):
    pass


class OrderDoesNotDivide(PrimeSumsError, ValueError):
    pass


class PowerOutOfRange(PrimeSumsError, ValueError):
    pass


class PrincipalCharacter(PrimeSumsError, ValueError):
    pass


class GcdViolation(PrimeSumsError, ValueError):
    pass


class DomainError(PrimeSumsError, ValueError):
    pass


class ConfigError(PrimeSumsError, ValueError):
    pass
