"""Final-case certificate rows for a single k."""

from fastapi import APIRouter, HTTPException

from ngbound.models.verifier import CertificateReport, FinalCaseInstance
from ngbound.services import verifier
from ngbound.utils.api_errors import ng_error_to_http
from ngbound.utils.errors import NGError

router = APIRouter(tags=["certificate"])

MAX_K = 30


@router.get("/certificate/{k}", response_model=CertificateReport)
async def get_certificate(k: int) -> CertificateReport:
    """Certificate sweep over 1..k, run in process."""
    if not 1 <= k <= MAX_K:
        raise HTTPException(status_code=400, detail=f"k must lie in [1, {MAX_K}]")
    return verifier.final_case_certificate(k, workers=1)


@router.get("/certificate/{k}/instance", response_model=FinalCaseInstance)
async def get_instance(k: int, s: int, a: int) -> FinalCaseInstance:
    try:
        return verifier.final_case_instance(k, s, a)
    except NGError as e:
        raise ng_error_to_http(e)
