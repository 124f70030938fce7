"""Bound reports for posted graphs or profiles."""

from fastapi import APIRouter, HTTPException

from ngbound.models.api import BoundsResponse, GraphRequest
from ngbound.services import bounds, graph_io
from ngbound.utils.api_errors import ng_error_to_http, unexpected_error_to_http
from ngbound.utils.errors import NGError

router = APIRouter(tags=["bounds"])


@router.post("/bounds", response_model=BoundsResponse)
async def post_bounds(request: GraphRequest) -> BoundsResponse:
    try:
        matrices = graph_io.parse_staircases(request.data, request.kind)
        return BoundsResponse(reports=[bounds.bound_report(A) for A in matrices])
    except NGError as e:
        raise ng_error_to_http(e, "Bounds request failed")
    except HTTPException:
        raise
    except Exception as e:
        raise unexpected_error_to_http(e, "bounds")
