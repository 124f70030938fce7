"""rho0(n) breakdowns."""

from fastapi import APIRouter, HTTPException, Query

from ngbound.models.api import Rho0Table
from ngbound.models.bounds import Rho0Breakdown
from ngbound.services import bounds
from ngbound.utils.api_errors import ng_error_to_http
from ngbound.utils.errors import NGError

router = APIRouter(tags=["rho0"])

MAX_ROWS = 1000


@router.get("/rho0/{n}", response_model=Rho0Breakdown)
async def get_rho0(n: int) -> Rho0Breakdown:
    try:
        return bounds.rho0(n)
    except NGError as e:
        raise ng_error_to_http(e)


@router.get("/rho0", response_model=Rho0Table)
async def get_rho0_table(start: int = Query(3), stop: int = Query(12)) -> Rho0Table:
    if stop < start or stop - start + 1 > MAX_ROWS:
        raise HTTPException(status_code=400, detail=f"need start <= stop and at most {MAX_ROWS} rows")
    try:
        return Rho0Table(rows=[bounds.rho0(n) for n in range(start, stop + 1)])
    except NGError as e:
        raise ng_error_to_http(e)
