import pytest

from orbitc.parsing import parse_element


@pytest.fixture
def el():
    """Shorthand parser: el('D4:SU(4)+')."""
    return parse_element
