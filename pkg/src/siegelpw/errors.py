"""Shared exception types for the siegelpw package."""


class SiegelPWError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(SiegelPWError, ValueError):
    """A parameter is outside the domain an operation is defined on."""


class DivergentIntegralError(SiegelPWError, ArithmeticError):
    """The requested integral diverges for the given parameters."""


class UnderResolvedError(SiegelPWError, ValueError):
    """The requested truncation/accuracy exceeds what the quadrature resolves."""


class KernelDomainError(SiegelPWError, ValueError):
    """A kernel was evaluated outside its domain of holomorphy."""


class ConfigError(SiegelPWError, ValueError):
    """A CLI / suite configuration document is malformed."""
