from typing import Annotated, Any

import numpy as np
from pydantic import BeforeValidator, Field, field_validator, model_validator
from scipy import sparse

from paraspec.base.constants import SectorRule
from paraspec.base.utils import ArrayModel, ComplexArray, IndexArray
from paraspec.fock.schemas import FockSpace


def as_csr(value: Any) -> sparse.csr_matrix:
    return sparse.csr_matrix(value, dtype=np.complex128)


CsrMatrix = Annotated[sparse.csr_matrix, BeforeValidator(as_csr)]


class LiouvillianMatrix(ArrayModel):
    """
    Superoperator in the dyad basis |n><m| of a truncated Fock space.

    Dyads are ordered row-major: |n><m| sits at index n * space.dim + m.
    """

    space: FockSpace
    entries: CsrMatrix

    @field_validator("entries")
    @classmethod
    def finite_entries(cls: type["LiouvillianMatrix"], v: sparse.csr_matrix) -> sparse.csr_matrix:
        if not np.all(np.isfinite(v.data)):
            raise ValueError("superoperator has non-finite entries")
        return v

    @model_validator(mode="after")
    def matches_space(self) -> "LiouvillianMatrix":
        if self.entries.shape != (self.dim, self.dim):
            raise ValueError(f"superoperator shape {self.entries.shape} does not match dyad count {self.dim}")
        return self

    @property
    def dim(self) -> int:
        return self.space.dim**2

    def index(self, n: int, m: int) -> int:
        return n * self.space.dim + m

    def dyad(self, index: int) -> tuple[int, int]:
        n, m = divmod(index, self.space.dim)
        return n, m

    @property
    def basis_map(self) -> list[tuple[int, int]]:
        return [self.dyad(i) for i in range(self.dim)]

    def to_dense(self) -> np.ndarray:
        return self.entries.toarray()

    def norm_inf(self) -> float:
        if self.entries.nnz == 0:
            return 0.0
        return float(abs(self.entries).sum(axis=1).max())

    def __matmul__(self, vector: np.ndarray) -> np.ndarray:
        return self.entries @ vector

    def __add__(self, other: "LiouvillianMatrix") -> "LiouvillianMatrix":
        return LiouvillianMatrix(space=self.space, entries=self.entries + other.entries)


class SectorBlock(ArrayModel):
    label: int = Field(..., description="Coherence index n - m, or (n - m) mod 2")
    indices: IndexArray
    matrix: ComplexArray

    @property
    def size(self) -> int:
        return int(self.indices.size)


class BlockDecomposition(ArrayModel):
    sector_rule: SectorRule
    dim: int = Field(..., ge=1)
    blocks: list[SectorBlock]

    @model_validator(mode="after")
    def blocks_partition(self) -> "BlockDecomposition":
        covered = np.sort(np.concatenate([block.indices for block in self.blocks])) if self.blocks else np.empty(0)
        if covered.size != self.dim or not np.array_equal(covered, np.arange(self.dim)):
            raise ValueError("block index lists must partition the dyad basis")
        for block in self.blocks:
            if block.matrix.shape != (block.size, block.size):
                raise ValueError(f"block {block.label} matrix shape {block.matrix.shape} does not match its indices")
        return self

    @property
    def sizes(self) -> list[int]:
        return [block.size for block in self.blocks]
