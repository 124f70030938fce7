import os
import tempfile

# Must run before ngbound.config is imported: it reads NGBOUND_HOME at import time.
os.environ["NGBOUND_HOME"] = tempfile.mkdtemp(prefix="ngbound-test-")
os.environ.pop("NG_PARALLEL", None)

import pytest

from ngbound.services import staircase


@pytest.fixture
def first_staircase():
    """Nonsymmetric member of S*(6) with row sums 5, 3, 2, 3, 2, 1."""
    return staircase.from_profile([6, 4, 3, 3, 2, 1])


@pytest.fixture
def second_staircase():
    """Row sums 4, 3, 3, 3, 4, 0; moving (5, 4) lowers v from 4 to 3."""
    return staircase.from_profile([5, 4, 4, 4, 4, 0])


@pytest.fixture
def final_case_staircase():
    """Symmetric, n = 5, (c, v, s) = (3, 2, 3) and (cbar, vbar, sbar) = (3, 1, 1)."""
    return staircase.from_profile([5, 4, 2, 2, 1])


@pytest.fixture
def padded_join():
    """K_4 v N_4 plus an isolated vertex; vbar sits below n - c - 1."""
    return staircase.from_profile([8, 8, 8, 8, 4, 4, 4, 4, 0])
