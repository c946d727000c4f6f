from pathlib import Path

import numpy as np
import orjson
from pydantic import Field, model_validator

from paraspec.base.constants import SectorRule
from paraspec.base.utils import BaseModel
from paraspec.cli.constants import OutputFormat, TransitionKind
from paraspec.models.schemas import DissipationChannel, HamiltonianParams, SqueezeDrive
from paraspec.qpt.constants import DEFAULT_BLOCK_THRESHOLD, Observable, SweepAxis


class GridRange(BaseModel):
    start: float
    stop: float
    num: int = Field(..., ge=2)

    def values(self) -> list[float]:
        return [float(value) for value in np.linspace(self.start, self.stop, self.num)]


Grid = list[float] | GridRange


def grid_values(grid: Grid | None) -> list[float]:
    if grid is None:
        return []
    return grid.values() if isinstance(grid, GridRange) else list(grid)


class ModelSection(BaseModel):
    """Either (omega, kerr, eps2) or (eta, xi) with K = 1."""

    omega: float | None = None
    kerr: float | None = None
    eps2: float | None = None
    eta: float | None = None
    xi: float | None = None
    scaled: bool = False
    n: int | None = Field(None, ge=1, description="Scale N of a scaled Hamiltonian, n_max by default")

    @model_validator(mode="after")
    def one_parametrization(self) -> "ModelSection":
        physical = any(value is not None for value in (self.omega, self.kerr, self.eps2))
        dimensionless = any(value is not None for value in (self.eta, self.xi))
        if physical == dimensionless:
            raise ValueError("give exactly one of (omega, kerr, eps2) or (eta, xi)")
        if physical and self.omega is None:
            raise ValueError("omega is required with the (omega, kerr, eps2) parametrization")
        if dimensionless and self.eta is None:
            raise ValueError("eta is required with the (eta, xi) parametrization")
        return self

    def to_params(self) -> HamiltonianParams:
        if self.eta is not None:
            params = HamiltonianParams.kerr_oscillator(self.eta, self.xi or 0.0)
        else:
            drives = [SqueezeDrive(order=2, amplitude=self.eps2)] if self.eps2 else []
            params = HamiltonianParams(omega=self.omega or 0.0, kerr=self.kerr or 0.0, squeeze_amps=drives)
        return params.model_copy(update={"scaled": self.scaled, "scale_n": self.n})


class SpaceSection(BaseModel):
    n_fock: int | None = Field(None, ge=2)
    auto: bool = False
    tol: float = Field(1e-6, gt=0)
    k: int = Field(10, ge=1, description="Eigenvalues compared by the convergence search")

    @model_validator(mode="after")
    def explicit_or_auto(self) -> "SpaceSection":
        if (self.n_fock is None) != self.auto:
            raise ValueError("give n_fock or set auto, not both")
        return self


class TaskSection(BaseModel):
    rule: SectorRule | None = None
    axis: SweepAxis = SweepAxis.XI
    grid: Grid | None = None
    n_list: list[int] = Field(default_factory=list)
    observables: list[Observable] = Field(default_factory=lambda: [Observable.GAP, Observable.HAMILTONIAN_GAP])
    block_threshold: int = Field(DEFAULT_BLOCK_THRESHOLD, ge=1)
    transition: TransitionKind = TransitionKind.SECOND
    chi_c: float | None = None
    window: tuple[float, float] = (0.0, 0.8)
    eta_grid: Grid | None = None
    xi_grid: Grid | None = None
    j: float | None = Field(None, ge=0)
    kappa: float | None = Field(None, ge=0)


class OutputSection(BaseModel):
    path: str = "out"
    format: OutputFormat = OutputFormat.DSV


class RunConfig(BaseModel):
    model: ModelSection
    channels: list[DissipationChannel] = Field(default_factory=list)
    space: SpaceSection
    task: TaskSection = Field(default_factory=TaskSection)
    output: OutputSection = Field(default_factory=OutputSection)

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        return cls.model_validate(orjson.loads(Path(path).read_bytes()))

    def resolved(self) -> dict:
        return self.model_dump(mode="json")
