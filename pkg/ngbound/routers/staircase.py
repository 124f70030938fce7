"""Staircase parameters for posted graphs or profiles."""

from fastapi import APIRouter, HTTPException

from ngbound.models.api import GraphRequest, ParamsResponse
from ngbound.services import graph_io, staircase
from ngbound.utils.api_errors import ng_error_to_http, unexpected_error_to_http
from ngbound.utils.errors import NGError

router = APIRouter(tags=["staircase"])


@router.post("/params", response_model=ParamsResponse)
async def post_params(request: GraphRequest) -> ParamsResponse:
    try:
        return ParamsResponse(
            entries=[staircase.params_entry(A) for A in graph_io.parse_staircases(request.data, request.kind)]
        )
    except NGError as e:
        raise ng_error_to_http(e, "Params request failed")
    except HTTPException:
        raise
    except Exception as e:
        raise unexpected_error_to_http(e, "params")
