"""Shared error handling for paraspec operations."""

from enum import Enum
from typing import Any, TypeVar

from pydantic import Field

from paraspec.base.utils import BaseModel

E = TypeVar("E", bound="SpectralError")


class ErrorCode(Enum):
    DIMENSION_MISMATCH = "DIMENSION_MISMATCH"
    CARDINALITY_MISMATCH = "CARDINALITY_MISMATCH"
    OUT_OF_RANGE = "OUT_OF_RANGE"
    RULE_INAPPLICABLE = "RULE_INAPPLICABLE"
    UNSTABLE_REGIME = "UNSTABLE_REGIME"
    INVALID_CONFIG = "INVALID_CONFIG"
    NON_UNIQUE_STEADY_STATE = "NON_UNIQUE_STEADY_STATE"
    DIVERGENT_RELAXATION = "DIVERGENT_RELAXATION"
    EMPTY_SPECTRUM = "EMPTY_SPECTRUM"
    EIGENSOLVER_FAILURE = "EIGENSOLVER_FAILURE"
    NOT_DETECTED = "NOT_DETECTED"
    NOT_CONVERGED = "NOT_CONVERGED"


class ErrorDetail(BaseModel):
    """Structured description of a failed operation, also stored on failed sweep rows."""

    code: ErrorCode
    message: str
    context: dict[str, Any] = Field(default_factory=dict)


class SpectralError(Exception):
    """
    Base error of the package.

    Carries an ErrorDetail, so callers can record the failure without parsing messages.
    """

    error: ErrorDetail

    def __init__(self, error: ErrorDetail):
        super().__init__(error.message)
        self.error = error

    @property
    def code(self) -> ErrorCode:
        return self.error.code

    @classmethod
    def of(cls: type[E], code: ErrorCode, message: str, **context: Any) -> E:
        return cls(ErrorDetail(code=code, message=message, context=context))


class DomainError(SpectralError):
    """The inputs are outside the domain of the operation."""


class NumericalError(SpectralError):
    """The inputs are valid but the computation could not produce the requested quantity."""
