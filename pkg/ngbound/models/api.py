"""Request and response bodies of the HTTP surface."""

from typing import Literal

from pydantic import BaseModel

from ngbound.models.bounds import BoundReport, Rho0Breakdown
from ngbound.models.staircase import ParamsEntry


class GraphRequest(BaseModel):
    """One graph or profile, encoded as ``kind``."""

    kind: Literal["graph6", "edges", "profile"] = "graph6"
    data: str


class BoundsResponse(BaseModel):
    reports: list[BoundReport]


class ParamsResponse(BaseModel):
    entries: list[ParamsEntry]


class Rho0Table(BaseModel):
    rows: list[Rho0Breakdown]
