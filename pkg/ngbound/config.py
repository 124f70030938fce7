"""Application configuration: tolerances, size caps and paths."""

import os
from pathlib import Path
from typing import Any

from ngbound.utils.storage import read_json

NGBOUND_DIR = Path(os.environ.get("NGBOUND_HOME", str(Path.home() / ".ngbound")))
CONFIG_PATH = NGBOUND_DIR / "config.json"

# Numerical kernels
SYMMETRY_TOL = 1e-12
EIGEN_TOL = 1e-10
JACOBI_OFF_RATIO = 1e-13
JACOBI_MAX_SWEEPS = 100
POWER_ITER_TOL = 1e-12
POWER_ITER_MAX = 100_000
CHAR_POLY_MAX_ORDER = 16
CHAR_POLY_FALLBACK_ORDER = 8
STURM_PRUNE_ABS = 1e-300
STURM_PRUNE_REL = 1e-12
BISECT_WIDTH = 1e-12
BISECT_MAX_STEPS = 400
QUOTIENT_TOL = 1e-9

# Bounds and verification
BOUND_TOL = 1e-8
MAXIMIZER_TOL = 1e-9
FINGERPRINT_DECIMALS = 6
CERT_MARGIN = 1e-9
THIN_MARGIN = 1e-6
TRANSFORM_TOL = 1e-10

# Size caps
ENUM_SYM_RANGE = (3, 24)
ENUM_RANGE = (3, 16)
BRUTE_FORCE_MAX = 7
BRUTE_FORCE_OPT_IN_MAX = 8
SUITE_MAX = 14
SUITE_NONSYM_MAX = 8
BATCH_SIZE = 1 << 15

DEFAULT_PORT = 8000


def get_config() -> dict[str, Any]:
    """Read the optional user config file."""
    config = read_json(CONFIG_PATH)
    return config if isinstance(config, dict) else {}


def default_workers() -> int:
    """Worker count from NG_PARALLEL, then config.json, then 1."""
    raw = os.environ.get("NG_PARALLEL")
    if raw is None:
        raw = get_config().get("parallel", 1)
    try:
        return max(1, int(raw))
    except (TypeError, ValueError):
        return 1


def default_port() -> int:
    """Port for the HTTP surface from NGBOUND_PORT."""
    try:
        return int(os.environ.get("NGBOUND_PORT", str(DEFAULT_PORT)))
    except ValueError:
        return DEFAULT_PORT
