import numpy as np
import pytest
from hypothesis import strategies as st

from eulerfan.gas import GasModel, RiemannData
from eulerfan.riemann1d import two_shock_threshold
from eulerfan.sampling import random_two_shock

positive = st.floats(min_value=0.1, max_value=10.0, allow_nan=False)
heat_capacity = st.floats(min_value=0.2, max_value=3.0)
overshoot = st.floats(min_value=0.05, max_value=3.0)


@st.composite
def two_shock_data(draw, c_v=heat_capacity):
    gas = GasModel(draw(c_v))
    rm, pm, rp, pp = (draw(positive) for _ in range(4))
    probe = RiemannData.from_values(rm, 0.0, pm, rp, 0.0, pp)
    jump = two_shock_threshold(probe, gas) - draw(overshoot) * np.sqrt(gas.gamma * max(pm / rm, pp / rp))
    shift = draw(st.floats(min_value=-3.0, max_value=3.0))
    return RiemannData.from_values(rm, shift - 0.5 * jump, pm, rp, shift + 0.5 * jump, pp), gas


@pytest.fixture
def symmetric():
    return RiemannData.from_values(1.0, 1.0, 1.0, 1.0, -1.0, 1.0)


@pytest.fixture
def unit_gas():
    return GasModel(1.0)


@pytest.fixture
def sample_family():
    rng = np.random.default_rng(20240611)
    return [random_two_shock(rng) for _ in range(40)]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
