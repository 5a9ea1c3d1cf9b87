import pytest
from hypothesis import HealthCheck, settings

from conormal.germs import Germ, Parametrization
from conormal.poly import PolynomialRing

settings.register_profile(
    "suite",
    max_examples=30,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def ring3():
    return PolynomialRing(["x", "y", "z"])


@pytest.fixture(scope="session")
def ring4():
    return PolynomialRing(["x", "y", "z", "t"])


@pytest.fixture(scope="session")
def cusp(ring3):
    x, y, z = ring3.gens()
    return Germ(ring3, [x**3 - y * z], hypersurface=True, complete_intersection=True)


@pytest.fixture(scope="session")
def umbrella(ring3):
    x, y, z = ring3.gens()
    return Germ(ring3, [z**2 - x * y**2], hypersurface=True, complete_intersection=True)


@pytest.fixture(scope="session")
def umbrella_param(umbrella):
    pring = PolynomialRing(["u", "v"])
    u, v = pring.gens()
    return Parametrization(umbrella, pring, [u**2, v, u * v])


@pytest.fixture(scope="session")
def segre(ring4):
    x, y, z, t = ring4.gens()
    return Germ(ring4, [x * z - y * t], hypersurface=True, complete_intersection=True)
