from typing import Annotated, Any

import numpy as np
from pydantic import BaseModel as PydanticBaseModel
from pydantic import BeforeValidator, ConfigDict, PlainSerializer

__all__ = ["ArrayModel", "BaseModel", "ComplexArray", "IndexArray", "as_complex_array", "as_index_array"]


def as_complex_array(value: Any) -> np.ndarray:
    """Coerce nested sequences or arrays to a complex128 numpy array."""
    array = np.asarray(value, dtype=np.complex128)
    if not array.flags.c_contiguous:
        array = np.ascontiguousarray(array)
    return array


def _serialize_complex_array(value: np.ndarray) -> list:
    # orjson has no complex type, pairs of floats keep the output lossless
    return np.stack([value.real, value.imag], axis=-1).tolist()


ComplexArray = Annotated[
    np.ndarray,
    BeforeValidator(as_complex_array),
    PlainSerializer(_serialize_complex_array, return_type=list),
]


class BaseModel(PydanticBaseModel):
    model_config = ConfigDict(strict=False, populate_by_name=True, extra="forbid")


class ArrayModel(BaseModel):
    """Immutable model carrying numpy or scipy arrays."""

    model_config = ConfigDict(
        strict=False, populate_by_name=True, extra="forbid", frozen=True, arbitrary_types_allowed=True
    )


def as_index_array(value: Any) -> np.ndarray:
    array = np.asarray(value)
    if array.size and not np.issubdtype(array.dtype, np.integer):
        raise ValueError(f"index array must hold integers, got {array.dtype}")
    return array.astype(np.int64, copy=False).reshape(-1)


IndexArray = Annotated[
    np.ndarray,
    BeforeValidator(as_index_array),
    PlainSerializer(lambda value: value.tolist(), return_type=list),
]
