"""Pydantic schemas for staircase matrices and their parameters."""

import numpy as np
from pydantic import BaseModel, ConfigDict, computed_field, model_validator

from ngbound.models.matrix import DenseMatrix


class StaircaseMatrix(BaseModel):
    """0/1 matrix with a_ij = 1 iff j <= mu_i and i != j (1-indexed).

    Services hand out the canonical profile only: mu_i = i appears only when
    mu_{i+1} = i, since mu_i = i and mu_i = i - 1 describe the same row.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    mu: tuple[int, ...]

    @model_validator(mode="after")
    def _monotone_in_range(self) -> "StaircaseMatrix":
        if len(self.mu) != self.n:
            raise ValueError(f"profile has {len(self.mu)} entries for n={self.n}")
        for i, m in enumerate(self.mu):
            if not 0 <= m <= self.n:
                raise ValueError(f"mu[{i}]={m} outside [0, {self.n}]")
            if i and m > self.mu[i - 1]:
                raise ValueError(f"mu[{i}]={m} exceeds mu[{i - 1}]={self.mu[i - 1]}")
        return self

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(m - 1 if m >= i else m for i, m in enumerate(self.mu, start=1))

    def to_array(self) -> np.ndarray:
        cols = np.arange(1, self.n + 1)
        a = (cols[None, :] <= np.array(self.mu)[:, None]).astype(np.int8)
        np.fill_diagonal(a, 0)
        return a

    def to_dense(self) -> DenseMatrix:
        return DenseMatrix.from_numpy(self.to_array())


class Membership(BaseModel):
    in_S: bool
    in_Sstar: bool
    in_Sstar_sym: bool


class ParamSix(BaseModel):
    """Parameters (c, v, s) of A and of its reflected complement."""

    model_config = ConfigDict(frozen=True)

    c: int
    v: int
    s: int
    cbar: int
    vbar: int
    sbar: int

    @computed_field
    @property
    def T(self) -> int:
        d = self.c - self.cbar
        return d * d + 2 * d

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.c, self.v, self.s)

    @property
    def bar_triple(self) -> tuple[int, int, int]:
        return (self.cbar, self.vbar, self.sbar)

    def swapped(self) -> "ParamSix":
        """Parameters of the reflected complement."""
        return ParamSix(
            c=self.cbar, v=self.vbar, s=self.sbar,
            cbar=self.c, vbar=self.v, sbar=self.s,
        )


class ParamsEntry(BaseModel):
    """Profile, class membership and parameters of one matrix."""

    n: int
    mu: list[int]
    membership: Membership
    params: ParamSix
