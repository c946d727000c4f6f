from fractions import Fraction

from pydantic import ConfigDict, Field, model_validator

from paraspec.base.utils import BaseModel
from paraspec.quasispin.constants import Branch


def half(doubled: int) -> float:
    return doubled / 2


def doubled(value: float) -> int:
    """2 * value as an exact integer, for values that are integers or half-integers."""
    twice = Fraction(value).limit_denominator(2) * 2
    if twice.denominator != 1 or abs(float(twice) - 2 * value) > 1e-12:
        raise ValueError(f"{value} is not an integer or half-integer")
    return int(twice)


class QuasiSpinLabel(BaseModel):
    """(j, m_j, m_j') stored as doubled integers."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    two_j: int = Field(..., ge=0)
    two_mj: int
    two_mj_prime: int

    @model_validator(mode="after")
    def within_multiplet(self) -> "QuasiSpinLabel":
        for value in (self.two_mj, self.two_mj_prime):
            if abs(value) > self.two_j or (self.two_j - value) % 2:
                raise ValueError(f"m={half(value)} is not a projection of j={half(self.two_j)}")
        return self

    @classmethod
    def from_dyad(cls, n: int, m: int, two_j: int) -> "QuasiSpinLabel":
        return cls(two_j=two_j, two_mj=two_j - 2 * n, two_mj_prime=two_j - 2 * m)

    @property
    def j(self) -> float:
        return half(self.two_j)

    @property
    def m_j(self) -> float:
        return half(self.two_mj)

    @property
    def m_j_prime(self) -> float:
        return half(self.two_mj_prime)

    @property
    def n(self) -> int:
        return (self.two_j - self.two_mj) // 2

    @property
    def m(self) -> int:
        return (self.two_j - self.two_mj_prime) // 2

    def eigenvalue(self, kappa: float) -> complex:
        return complex(-kappa * (self.j - (self.m_j + self.m_j_prime) / 2), -(self.m_j**2 - self.m_j_prime**2))


class JMLabel(BaseModel):
    """(J, M) on the right branch or (J-bar, M-bar) on the left one, as doubled integers."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    branch: Branch
    two_j: int = Field(..., ge=0, description="2j of the multiplet")
    two_big_j: int = Field(..., ge=0)
    two_big_m: int

    @model_validator(mode="after")
    def projection_bounded(self) -> "JMLabel":
        if abs(self.two_big_m) > self.two_big_j or self.two_big_j > self.two_j:
            raise ValueError("labels must satisfy |M| <= J <= j")
        return self

    @property
    def big_j(self) -> float:
        return half(self.two_big_j)

    @property
    def big_m(self) -> float:
        return half(self.two_big_m)

    def eigenvalue(self, kappa: float) -> complex:
        j = half(self.two_j)
        rotation = 4 * (j - self.big_j) * self.big_m
        match self.branch:
            case Branch.RIGHT:
                decay = self.big_j
            case Branch.LEFT:
                decay = 2 * j - self.big_j
        return complex(-kappa * decay, rotation)


class AnharmonicApprox(BaseModel):
    nu: int = Field(..., ge=0)
    parity: int = Field(..., description="+1 or -1, both share the energy")
    n_eff: float = Field(..., gt=0)
    xi: float

    @property
    def energy(self) -> float:
        return 4 * self.xi * self.nu * (1 - self.nu / self.n_eff)


class QuasiSpinLevel(BaseModel):
    two_mj: int
    energy: float = Field(..., description="Counted from the lowest level of the multiplet")
    total_energy: float = Field(..., description="m_j^2 - j^2")

    @property
    def m_j(self) -> float:
        return half(self.two_mj)
