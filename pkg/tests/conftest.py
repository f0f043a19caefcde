import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from capcup import Configuration, configuration_from_points  # noqa: E402

FIG2_POINTS = [(-4, 0), ("-3/2", -1), ("-1/2", -3), ("1/2", 3), ("3/2", 1), (4, 0)]
CFG6 = "AUUUUUUAAAUUUAAAAAAU"


@pytest.fixture
def fig2_points():
    return list(FIG2_POINTS)


@pytest.fixture
def cfg6():
    return Configuration.from_string(6, CFG6)


def free_configs(m, a=4, b=5):
    """All canonical ``a``-cap, ``b``-cup free configurations of size ``m``."""
    from capcup import AvoidanceSpec, enumerate_free

    out = []
    enumerate_free(m, AvoidanceSpec(a, b), on_config=out.append)
    return out


def sampled_free(m, count, a=4, b=6, seed=0):
    from capcup import AvoidanceSpec, random_free_configuration

    spec = AvoidanceSpec(a, b)
    got = (random_free_configuration(m, spec, seed=seed + t) for t in range(count))
    return [c for c in got if c is not None]


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)
