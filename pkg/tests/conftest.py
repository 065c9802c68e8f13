import pytest

import hylos as hy


@pytest.fixture(scope="session")
def quartic_ns():
    return hy.power_focusing(a=2, p=4, c=1, equation="ns")


@pytest.fixture(scope="session")
def dp_nkg():
    return hy.double_power(a=2, p=4, q=6, c_p=1, c_q=0.1, equation="nkg")


@pytest.fixture(scope="session")
def sat_nkg():
    return hy.saturating_intro(equation="nkg")


@pytest.fixture(scope="session")
def quartic_profile(quartic_ns):
    # closed form sqrt(2) sech(r)
    return hy.find_ground_state(quartic_ns, omega=0.5, dim=1)


@pytest.fixture(scope="session")
def dp_profile(dp_nkg):
    return hy.find_ground_state(dp_nkg, omega=1.0, dim=1)


@pytest.fixture
def line_grid():
    return hy.make_grid(1, 40.0, 1024)
