import pytest

from chiralret import MCP3, Medium

WATER = Medium.from_index(1.4 + 1e-8j)
MERCURY = Medium.from_index(0.52 + 2.39j)
EPS_MERCURY = -5.4417 + 2.4856j


@pytest.fixture
def mcp3():
    return MCP3
