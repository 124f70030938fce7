"""FastAPI application entry point."""

from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from ngbound.config import NGBOUND_DIR
from ngbound.routers import bounds, certificate, rho0, staircase
from ngbound.utils.logging import log_info


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Create the working directory and note startup in the log."""
    NGBOUND_DIR.mkdir(parents=True, exist_ok=True)
    log_info("ngbound API starting")
    yield
    log_info("ngbound API stopped")


app = FastAPI(title="ngbound API", lifespan=lifespan)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["http://localhost:5173", "http://localhost:8000"],
    allow_methods=["GET", "POST"],
    allow_headers=["Content-Type"],
)

app.include_router(bounds.router, prefix="/api")
app.include_router(staircase.router, prefix="/api")
app.include_router(rho0.router, prefix="/api")
app.include_router(certificate.router, prefix="/api")
