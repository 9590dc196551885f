import numpy as np
import pytest

from solgeo.biconservative_family import (EXPLICIT, build_profile,
                                          family_surface,
                                          integrate_implicit_profile)


@pytest.fixture(scope="session")
def explicit_profile():
    return build_profile(EXPLICIT, u_grid=np.linspace(-4.0, -0.01, 64),
                         u0=-1.0)


@pytest.fixture(scope="session")
def patch_x1(explicit_profile):
    return family_surface(explicit_profile, "x1")


@pytest.fixture(scope="session")
def patch_x2(explicit_profile):
    return family_surface(explicit_profile, "x2")


@pytest.fixture(scope="session")
def implicit_solution():
    return integrate_implicit_profile(c=1.0, theta_start=2.2, u_span=1.5,
                                      step=1e-3)
