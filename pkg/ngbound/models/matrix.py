"""Pydantic schemas for dense matrices, polynomials and index partitions."""

import math

import numpy as np
from numpy.polynomial import polynomial as P
from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class DenseMatrix(BaseModel):
    """Small dense real square matrix, row-major."""

    model_config = ConfigDict(frozen=True)

    entries: list[list[float]]

    @field_validator("entries")
    @classmethod
    def _square_and_finite(cls, entries: list[list[float]]) -> list[list[float]]:
        n = len(entries)
        if n == 0:
            raise ValueError("matrix must have order at least 1")
        for i, row in enumerate(entries):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            if not all(math.isfinite(x) for x in row):
                raise ValueError(f"row {i} has a non-finite entry")
        return entries

    @property
    def n(self) -> int:
        return len(self.entries)

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)

    @classmethod
    def from_numpy(cls, array) -> "DenseMatrix":
        return cls(entries=np.asarray(array, dtype=float).tolist())


class Polynomial(BaseModel):
    """Real polynomial with coefficients in ascending degree."""

    model_config = ConfigDict(frozen=True)

    coeffs: list[float]

    @field_validator("coeffs")
    @classmethod
    def _trim(cls, coeffs: list[float]) -> list[float]:
        trimmed = list(coeffs)
        while len(trimmed) > 1 and trimmed[-1] == 0:
            trimmed.pop()
        return trimmed or [0.0]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return P.polyval(x, self.coeffs)

    def to_numpy(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=float)

    @classmethod
    def from_numpy(cls, coeffs) -> "Polynomial":
        return cls(coeffs=[float(c) for c in np.asarray(coeffs, dtype=float)])


class Partition(BaseModel):
    """Ordered blocks of 0-based indices; blocks are nonempty and disjoint."""

    model_config = ConfigDict(frozen=True)

    blocks: list[list[int]]

    @model_validator(mode="after")
    def _disjoint_nonempty(self) -> "Partition":
        seen: set[int] = set()
        for b, block in enumerate(self.blocks):
            if not block:
                raise ValueError(f"block {b} is empty")
            for idx in block:
                if idx < 0 or idx in seen:
                    raise ValueError(f"index {idx} is negative or repeated")
                seen.add(idx)
        return self

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def covers(self, n: int) -> bool:
        return self.size == n and all(i < n for b in self.blocks for i in b)

    @classmethod
    def from_sizes(cls, sizes: list[int]) -> "Partition":
        """Consecutive blocks of the given sizes; zero sizes are dropped."""
        blocks, start = [], 0
        for size in sizes:
            if size > 0:
                blocks.append(list(range(start, start + size)))
            start += max(size, 0)
        return cls(blocks=blocks)
