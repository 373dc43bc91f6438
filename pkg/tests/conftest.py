"""Shared fixtures.  The expensive scans are session-scoped because several
test modules slice into the same certificate."""

import pytest

from hilbnef import (
    cone_duality_check,
    gieseker_wall,
    slice_a1,
    slice_a2,
    weyl_orbit,
    E,
    H,
)


@pytest.fixture(scope="session")
def orbit_e9_3():
    return weyl_orbit(E[8], 3)


@pytest.fixture(scope="session")
def orbit_h_3():
    return weyl_orbit(H, 3)


@pytest.fixture(scope="session")
def orbit_ruling_3():
    return weyl_orbit(H - E[0], 3)


@pytest.fixture(scope="session")
def a1_slice_3():
    return slice_a1(3)


@pytest.fixture(scope="session")
def a2_slice_3():
    return slice_a2(3)


@pytest.fixture(scope="session")
def gieseker_a1_3(a1_slice_3):
    return gieseker_wall(a1_slice_3, 3)


@pytest.fixture(scope="session")
def gieseker_a2_3(a2_slice_3):
    return gieseker_wall(a2_slice_3, 3)


@pytest.fixture(scope="session")
def duality_3():
    return cone_duality_check(3, 3)
