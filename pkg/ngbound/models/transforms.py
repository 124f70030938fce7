"""Pydantic schemas for staircase rewrites and their audit traces."""

from typing import Literal

from pydantic import BaseModel

from ngbound.models.staircase import ParamSix

TransformTag = Literal["pad_column", "shift_row", "drain_column"]


class CellEdit(BaseModel):
    """One off-diagonal flip, 1-indexed."""

    row: int
    col: int
    old: int
    new: int


class TransformTrace(BaseModel):
    step: TransformTag
    before: ParamSix
    after: ParamSix
    moved_cells: list[CellEdit]
    stalled: bool = False


class ChainResult(BaseModel):
    """Outcome of normalizing one symmetric matrix.

    ``phi_sums`` lists phi(X) + phi(bar X) for the input and every stage
    that ran; ``chain_holds`` says the values never decrease, starting
    from rho(A) + rho(bar A).
    """

    n: int
    start_mu: list[int]
    result_mu: list[int]
    swapped: bool
    slack_regime: bool
    traces: list[TransformTrace]
    rho_sum: float
    rho0: float
    phi_sums: list[float]
    reaches_rho0: bool
    chain_holds: bool
    normalized: bool
    slack_below_rho0: bool | None = None
