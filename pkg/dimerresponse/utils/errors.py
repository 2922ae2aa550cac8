from __future__ import annotations

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class DimerResponseError(Exception):
    """Base class; `exit_code` is what the CLI returns for it."""

    exit_code = EXIT_CONFIG


class ParameterError(DimerResponseError, ValueError):
    exit_code = EXIT_CONFIG


class DomainError(ParameterError):
    """Green's function evaluated at a non-positive distance."""


class ConfigError(DimerResponseError, ValueError):
    exit_code = EXIT_CONFIG


class NumericError(DimerResponseError, ArithmeticError):
    exit_code = EXIT_NUMERIC


class StepSizeError(NumericError):
    pass


class QuadratureError(NumericError):
    def __init__(self, message: str, error_estimate: float) -> None:
        super().__init__(f"{message} (achieved error estimate {error_estimate:.3e})")
        self.error_estimate = error_estimate


class ValidityWarning(UserWarning):
    """Parameters outside the regime where the closed forms are accurate."""
