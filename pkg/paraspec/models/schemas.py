from typing import Literal

from pydantic import Field, field_validator, model_validator

from paraspec.base.constants import Phase
from paraspec.base.exceptions import DomainError, ErrorCode
from paraspec.base.utils import BaseModel
from paraspec.fock.schemas import FockSpace
from paraspec.models.constants import INTEGER_TOLERANCE, ModelFamily


class SqueezeDrive(BaseModel):
    order: int = Field(..., ge=1, description="Order k_s of the pairing operator")
    amplitude: float = Field(..., description="Drive amplitude eps_k")


class HamiltonianParams(BaseModel):
    """
    Parameters of a one-dimensional parametric oscillator.

    With a non-zero Kerr coefficient the Hamiltonian is -omega n + K n(n-1) - sum_k eps_k P_k,
    the harmonic family (K = 0) uses omega n - sum_k eps_k P_k.
    A scaled Hamiltonian divides K and every eps_k by scale_n.
    """

    omega: float = 0.0
    kerr: float = 0.0
    squeeze_amps: list[SqueezeDrive] = Field(default_factory=list)
    # extra u(1) terms, number_polynomial[k - 1] multiplies n^k
    number_polynomial: list[float] = Field(default_factory=list)
    scaled: bool = False
    scale_n: int | None = Field(None, ge=1)

    @field_validator("squeeze_amps")
    @classmethod
    def unique_orders(cls: type["HamiltonianParams"], v: list[SqueezeDrive]) -> list[SqueezeDrive]:
        orders = [drive.order for drive in v]
        if len(set(orders)) != len(orders):
            raise ValueError("each squeezing order may appear only once")
        return sorted(v, key=lambda drive: drive.order)

    @classmethod
    def harmonic(cls, omega: float, eps2: float = 0.0) -> "HamiltonianParams":
        drives = [SqueezeDrive(order=2, amplitude=eps2)] if eps2 else []
        return cls(omega=omega, squeeze_amps=drives)

    @classmethod
    def kerr_oscillator(cls, eta: float, xi: float = 0.0, kerr: float = 1.0) -> "HamiltonianParams":
        drives = [SqueezeDrive(order=2, amplitude=xi * kerr)] if xi else []
        return cls(omega=eta * kerr, kerr=kerr, squeeze_amps=drives)

    @classmethod
    def scaled_kerr(cls, eta: float, chi: float, n: int, kerr: float = 1.0) -> "HamiltonianParams":
        drives = [SqueezeDrive(order=2, amplitude=chi * n * kerr)] if chi else []
        return cls(omega=eta * kerr, kerr=kerr, squeeze_amps=drives, scaled=True, scale_n=n)

    @property
    def family(self) -> ModelFamily:
        return ModelFamily.HARMONIC if self.kerr == 0 else ModelFamily.KERR

    @property
    def is_squeezed(self) -> bool:
        return any(drive.amplitude != 0 for drive in self.squeeze_amps)

    @property
    def conserves_parity(self) -> bool:
        return all(drive.order % 2 == 0 for drive in self.squeeze_amps if drive.amplitude != 0)

    def amplitude(self, order: int) -> float:
        return next((drive.amplitude for drive in self.squeeze_amps if drive.order == order), 0.0)

    def with_amplitude(self, order: int, amplitude: float) -> "HamiltonianParams":
        drives = [drive for drive in self.squeeze_amps if drive.order != order]
        drives.append(SqueezeDrive(order=order, amplitude=amplitude))
        return self.model_copy(update={"squeeze_amps": sorted(drives, key=lambda drive: drive.order)})

    def at_scale(self, n: int) -> "HamiltonianParams":
        """The same scaled model at scale n: every eps_k / scale_n, hence chi, is kept."""
        if self.scale_n is None or self.scale_n == n:
            return self.model_copy(update={"scale_n": n})
        ratio = n / self.scale_n
        drives = [drive.model_copy(update={"amplitude": drive.amplitude * ratio}) for drive in self.squeeze_amps]
        return self.model_copy(update={"scale_n": n, "squeeze_amps": drives})

    def _require_kerr(self, name: str) -> None:
        if self.kerr == 0:
            raise DomainError.of(ErrorCode.OUT_OF_RANGE, f"{name} is defined only for a non-zero Kerr coefficient")

    @property
    def eta(self) -> float:
        self._require_kerr("eta")
        return self.omega / self.kerr

    @property
    def eta_prime(self) -> float:
        return self.eta + 1

    @property
    def is_integer_eta(self) -> bool:
        return self.kerr != 0 and abs(self.eta - round(self.eta)) < INTEGER_TOLERANCE

    @property
    def xi(self) -> float:
        self._require_kerr("xi")
        return self.amplitude(2) / self.kerr

    @property
    def chi(self) -> float:
        if self.scale_n is None:
            raise DomainError.of(ErrorCode.OUT_OF_RANGE, "chi requires scale_n")
        return self.xi / self.scale_n

    def scale_for(self, space: FockSpace) -> float:
        """Divisor applied to K and eps_k: scale_n when given, otherwise n_max."""
        if not self.scaled:
            return 1.0
        return float(self.scale_n if self.scale_n is not None else max(space.n_max, 1))


class DissipationChannel(BaseModel):
    """k-photon loss at rate kappa; linear channels may carry a thermal population."""

    order: int = Field(1, ge=1)
    kappa: float = Field(..., ge=0, description="Rate in inverse time units (us^-1 in the CLI)")
    n_th: float = Field(0.0, ge=0)

    @model_validator(mode="after")
    def thermal_only_linear(self) -> "DissipationChannel":
        if self.n_th > 0 and self.order != 1:
            raise ValueError("thermal population is supported for linear (order 1) channels only")
        return self

    @classmethod
    def linear(cls, kappa: float, n_th: float = 0.0) -> "DissipationChannel":
        return cls(order=1, kappa=kappa, n_th=n_th)

    @classmethod
    def quadratic(cls, kappa2: float) -> "DissipationChannel":
        return cls(order=2, kappa=kappa2)

    @property
    def is_thermal(self) -> bool:
        return self.n_th > 0


class HamiltonianLevel(BaseModel):
    index: int
    energy: float
    parity: Literal[1, -1]
    phase: Phase
