"""Shared fixtures; the expensive sweeps/roots are session-scoped so the
acceptance tests and unit tests reuse one computation. Wall times are
stashed in `timings` so the acceptance report can quote true costs."""

import time

import numpy as np
import pytest

from splitlab.inner import stokes_direct
from splitlab.splitting import fit_stokes, roots_for_range, sweep

GAMMA = -0.1
ALPHA_REF = 1.8184464592320668864510028464  # arccosh(1/sqrt(0.1)), 28 digits

TIMINGS = {}


@pytest.fixture(scope="session")
def timings():
    return TIMINGS


@pytest.fixture(scope="session")
def sweep60():
    t0 = time.time()
    out = sweep(GAMMA, np.linspace(0.07, 0.13, 60), mode="dd", jobs=1)
    TIMINGS["sweep60"] = time.time() - t0
    return out


@pytest.fixture(scope="session")
def roots_6_12():
    t0 = time.time()
    out = roots_for_range(GAMMA, 6, 12, mode="dd", eps_tol=1e-10,
                          check_return=True)
    TIMINGS["roots_6_12"] = time.time() - t0
    return out


@pytest.fixture(scope="session")
def theta_inner():
    t0 = time.time()
    out = stokes_direct((20.0, 25.0, 30.0))
    TIMINGS["theta_inner"] = time.time() - t0
    return out


@pytest.fixture(scope="session")
def qd_fit():
    t0 = time.time()
    records = sweep(GAMMA, np.linspace(0.025, 0.031, 24), mode="qd", jobs=1)
    out = fit_stokes(records)
    TIMINGS["qd_fit"] = time.time() - t0
    return out
