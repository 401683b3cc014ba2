import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import pytest

from gkzkit import parse_matrix


@pytest.fixture
def staircase():
    """The 2 x 3 running example with a non-saturated semigroup."""
    return parse_matrix("3 2 0; 1 1 1")


@pytest.fixture
def hat():
    """Homogenization of (1 -1): saturated, pointed, spans Z^2."""
    return parse_matrix("1 1 1; 0 1 -1")


@pytest.fixture
def wedge():
    """Columns (1,0), (1,1): unimodular and saturated."""
    return parse_matrix("1 1; 0 1")


@pytest.fixture
def line():
    return parse_matrix("1")


@pytest.fixture
def numerical():
    """The numerical semigroup <2, 5> with gaps 1 and 3."""
    return parse_matrix("2 5")
