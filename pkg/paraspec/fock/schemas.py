from typing import Any

import numpy as np
from pydantic import ConfigDict, Field, field_validator, model_validator

from paraspec.base.exceptions import DomainError, ErrorCode
from paraspec.base.utils import ArrayModel, BaseModel, ComplexArray


class FockSpace(BaseModel):
    """Truncated Fock space spanned by |0>, ..., |n_max>."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    n_max: int = Field(..., ge=0, description="Maximum boson number N")

    @property
    def dim(self) -> int:
        return self.n_max + 1

    @classmethod
    def from_dim(cls, dim: int) -> "FockSpace":
        return cls(n_max=dim - 1)


class OperatorMatrix(ArrayModel):
    """Dense complex matrix of an operator acting on a truncated Fock space."""

    space: FockSpace
    entries: ComplexArray

    @field_validator("entries")
    @classmethod
    def finite_square(cls: type["OperatorMatrix"], v: np.ndarray) -> np.ndarray:
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("operator matrix has non-finite entries")
        return v

    @model_validator(mode="after")
    def matches_space(self) -> "OperatorMatrix":
        if self.entries.shape[0] != self.space.dim:
            raise ValueError(
                f"matrix dimension {self.entries.shape[0]} does not match space dimension {self.space.dim}"
            )
        return self

    @classmethod
    def wrap(cls, space: FockSpace, entries: Any) -> "OperatorMatrix":
        return cls(space=space, entries=entries)

    def dagger(self) -> "OperatorMatrix":
        return self.wrap(self.space, self.entries.conj().T)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0) < tol)

    def _check_space(self, other: "OperatorMatrix") -> None:
        if other.space != self.space:
            raise DomainError.of(
                ErrorCode.DIMENSION_MISMATCH,
                f"operators live on different spaces (dim {self.space.dim} and {other.space.dim})",
            )

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check_space(other)
        return self.wrap(self.space, self.entries @ other.entries)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check_space(other)
        return self.wrap(self.space, self.entries + other.entries)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check_space(other)
        return self.wrap(self.space, self.entries - other.entries)

    def __mul__(self, scalar: complex) -> "OperatorMatrix":
        return self.wrap(self.space, self.entries * scalar)

    __rmul__ = __mul__
