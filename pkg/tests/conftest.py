"""Shared fixtures.

The dodecahedron pipeline and its trajectories are expensive enough to
build once per session; everything here is read-only for the tests.
"""
import numpy as np
import pytest

from polyflex.constructions import (
    DEFAULT_PARAMS,
    FOOTNOTE_PARAMS,
    Min8Params,
    build_dodecahedron_detail,
    build_min8_twist,
)
from polyflex.flex import continue_flex
from polyflex.mesh import mesh_scale


@pytest.fixture(scope="session")
def default_build():
    return build_dodecahedron_detail(DEFAULT_PARAMS)


@pytest.fixture(scope="session")
def footnote_build():
    return build_dodecahedron_detail(FOOTNOTE_PARAMS)


@pytest.fixture(scope="session")
def dodec_traj(default_build):
    """Fine fixed-step trajectory of the default dodecahedron."""
    b = default_build
    return continue_flex(
        b.mesh, b.config, adapt=False,
        initial_step=0.008 * mesh_scale(b.config), max_steps=400,
    )


@pytest.fixture(scope="session")
def octa_traj(default_build):
    octa, ocfg = default_build.octahedron
    return continue_flex(
        octa, ocfg, adapt=False, initial_step=0.02 * mesh_scale(ocfg),
        max_steps=160, check_intersections=False,
    )


@pytest.fixture(scope="session")
def min8_build():
    return build_min8_twist(Min8Params())


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260816)


def pytest_terminal_summary(terminalreporter):
    # replay the acceptance checklist after the run, outside capture
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "REPORT_LINES", ())
    if lines:
        terminalreporter.section("acceptance checklist")
        for line in lines:
            terminalreporter.write_line(line)
