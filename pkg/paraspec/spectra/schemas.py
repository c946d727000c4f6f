import numpy as np
import orjson
from pydantic import Field, model_validator

from paraspec.base.constants import HERMITIAN_TOLERANCE, POSITIVITY_TOLERANCE, TRACE_TOLERANCE
from paraspec.base.utils import ArrayModel, BaseModel, ComplexArray
from paraspec.fock.schemas import OperatorMatrix


class SpectrumPoint(BaseModel):
    """
    One Liouvillian eigenvalue.

    Labels are free-form tags such as {"n": 1, "m": 0} or quasi-spin labels stored as doubled integers.
    """

    value: complex = Field(..., alias="lambda")
    labels: dict[str, int | str] = Field(default_factory=dict)
    multiplicity: int = Field(1, ge=1)

    @property
    def re(self) -> float:
        return self.value.real

    @property
    def im(self) -> float:
        return self.value.imag

    @property
    def label_key(self) -> bytes:
        return orjson.dumps(self.labels, option=orjson.OPT_SORT_KEYS)


class Spectrum(ArrayModel):
    points: list[SpectrumPoint]
    # right eigenvectors as columns, in the order of points
    vectors: ComplexArray | None = None

    @property
    def values(self) -> np.ndarray:
        return np.array([point.value for point in self.points], dtype=np.complex128)

    def __len__(self) -> int:
        return len(self.points)


class DensityMatrix(ArrayModel):
    matrix: OperatorMatrix

    @model_validator(mode="after")
    def physical(self) -> "DensityMatrix":
        rho = self.matrix.entries
        if not self.matrix.is_hermitian(HERMITIAN_TOLERANCE):
            raise ValueError("density matrix is not Hermitian")
        trace = np.trace(rho)
        if abs(trace - 1) > TRACE_TOLERANCE:
            raise ValueError(f"density matrix trace is {trace}, expected 1")
        lowest = float(np.linalg.eigvalsh(rho).min())
        if lowest < -POSITIVITY_TOLERANCE:
            raise ValueError(f"density matrix has negative eigenvalue {lowest:.3g}")
        return self


class GapSummary(BaseModel):
    liouvillian_gap: float = Field(..., ge=0, description="Delta = -Re lambda_1")
    hamiltonian_gap: float = Field(..., ge=0, description="|Im lambda_1|")
    second_gap: float | None = Field(None, ge=0, description="Delta_2 = -Re lambda_2")


class PhysicalReport(BaseModel):
    tolerance: float
    max_real: float
    min_abs: float
    conjugation_distance: float

    @property
    def passed(self) -> bool:
        return max(self.max_real, self.min_abs, self.conjugation_distance) < self.tolerance
