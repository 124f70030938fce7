"""Pydantic schemas for bound reports and the split-graph target value."""

from typing import Literal

from pydantic import BaseModel

from ngbound.models.matrix import Polynomial
from ngbound.models.staircase import ParamSix


class EqualityWitness(BaseModel):
    """Structural form of a symmetric A with rho(A) = phi(A).

    ``clique_union`` is K_{r1+1} + N_{n-r1-1}; ``join_union`` is
    (K_{t-1} v N_{r1+2-t}) + N_{n-r1-1} for the recorded t.
    """

    form: Literal["clique_union", "join_union"]
    t: int | None = None


class BoundReport(BaseModel):
    n: int
    mu: list[int]
    rho: float
    rho_bar: float
    phi: float
    phi_bar: float
    phi_ell: list[float]
    equality_case: EqualityWitness | None = None
    attains_phi: bool | None = None
    params: ParamSix


class Rho0Breakdown(BaseModel):
    n: int
    k: int
    k_n: int
    rho0: float
    u_n: float
    f: Polynomial
    best_q: list[int]
