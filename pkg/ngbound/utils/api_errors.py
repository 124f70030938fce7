"""Standardized API error handling utilities."""

from fastapi import HTTPException

from ngbound.utils.errors import GraphFormatError, NGError, ProfileError
from ngbound.utils.logging import log_error, log_warning


def ng_error_to_http(error: NGError, context: str = "") -> HTTPException:
    """Convert a typed NGError to a 422 HTTPException with a structured detail body."""
    if context:
        log_warning(f"{context}: {error.error_type} - {error.message}")
    detail = {"error_type": error.error_type, "message": error.message}
    if isinstance(error, GraphFormatError):
        detail["token"] = error.token
        detail["offset"] = error.offset
    elif isinstance(error, ProfileError):
        detail["index"] = error.index
    return HTTPException(status_code=422, detail=detail)


def unexpected_error_to_http(exc: Exception, context: str = "") -> HTTPException:
    """Convert an unexpected exception to a generic 500 HTTPException."""
    log_error(f"Unexpected {context} error: {exc}", exc)
    return HTTPException(
        status_code=500,
        detail={
            "error_type": "server",
            "message": "An unexpected error occurred.",
        },
    )
