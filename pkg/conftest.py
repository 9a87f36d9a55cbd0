import os

import pytest
from hypothesis import HealthCheck, settings

from Distinguish.cost import CostTable
from Distinguish.limits import Limits

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.register_profile("thorough", parent=settings.get_profile("default"), max_examples=1000)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def table():
    """Fresh cost memo so tests never share cached values."""
    return CostTable()


@pytest.fixture
def limits():
    return Limits(search_budget=10 ** 6)


@pytest.fixture
def write_file(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write
