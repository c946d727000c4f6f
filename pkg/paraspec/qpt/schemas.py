import numpy as np
from pydantic import Field, field_validator

from paraspec.base.exceptions import ErrorDetail
from paraspec.base.utils import BaseModel
from paraspec.models.schemas import DissipationChannel, HamiltonianParams
from paraspec.qpt.constants import DEFAULT_BLOCK_THRESHOLD, Observable, SweepAxis


class ModelTemplate(BaseModel):
    hamiltonian: HamiltonianParams
    channels: list[DissipationChannel] = Field(default_factory=list)


class SweepConfig(BaseModel):
    template: ModelTemplate
    axis: SweepAxis
    grid: list[float] = Field(..., min_length=1)
    n_list: list[int] = Field(..., min_length=1, description="Truncation n_max, also the scale N of scaled models")
    observables: list[Observable] = Field(default_factory=lambda: [Observable.GAP, Observable.HAMILTONIAN_GAP])
    block_threshold: int = Field(DEFAULT_BLOCK_THRESHOLD, ge=1)

    @field_validator("grid")
    @classmethod
    def strictly_increasing(cls: type["SweepConfig"], v: list[float]) -> list[float]:
        if any(b <= a for a, b in zip(v, v[1:], strict=False)):
            raise ValueError("grid must be strictly increasing")
        return v

    @field_validator("n_list")
    @classmethod
    def positive_sizes(cls: type["SweepConfig"], v: list[int]) -> list[int]:
        if any(n < 1 for n in v):
            raise ValueError("every N must be >= 1")
        return sorted(set(v))


class SweepRow(BaseModel):
    coordinates: dict[str, float]
    n: int
    values: dict[str, float] = Field(default_factory=dict)
    error: ErrorDetail | None = None

    @property
    def sort_key(self) -> tuple:
        return (tuple(sorted(self.coordinates.items())), self.n)

    @property
    def ok(self) -> bool:
        return self.error is None


class SweepResult(BaseModel):
    axes: list[str]
    rows: list[SweepRow]

    @property
    def n_values(self) -> list[int]:
        return sorted({row.n for row in self.rows})

    @property
    def failures(self) -> list[SweepRow]:
        return [row for row in self.rows if not row.ok]

    def series(self, observable: Observable, n: int, axis: str | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Successful values of one observable at size n, along one axis."""
        axis = axis or self.axes[0]
        rows = [row for row in self.rows if row.n == n and row.ok and observable.value in row.values]
        rows.sort(key=lambda row: row.coordinates[axis])
        return (
            np.array([row.coordinates[axis] for row in rows]),
            np.array([row.values[observable.value] for row in rows]),
        )


class ScalingFit(BaseModel):
    amplitude: float = Field(..., gt=0)
    exponent: float
    residual: float = Field(..., ge=0, description="Largest deviation in log space")

    def predict(self, n: float | np.ndarray) -> float | np.ndarray:
        return self.amplitude * np.power(n, self.exponent)


class KissingPoint(BaseModel):
    xi: float
    gap: float = Field(..., ge=0)
    boundary: bool = False


class SecondOrderEstimate(BaseModel):
    chi_c: float
    chi_c_known: bool
    chi_max: dict[int, float]
    delta_chi: dict[int, float]


class FirstOrderJump(BaseModel):
    n: int | None = None
    chi_c: float
    jump: float


class FirstOrderTrend(BaseModel):
    jumps: list[FirstOrderJump]
    slope: float | None = None
    intercept: float | None = Field(None, description="Linear trend in 1/N evaluated at 1/N = 0")


class ConvergenceResult(BaseModel):
    n_conv: int
    shift: float

    @property
    def n_eff(self) -> float:
        return self.n_conv / 2
