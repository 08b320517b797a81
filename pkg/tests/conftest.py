from fractions import Fraction

import pytest
from hypothesis import settings

from streamzeros import parse_poly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def kaneko():
    return parse_poly("z^2-3z+1")


@pytest.fixture
def neg3():
    return parse_poly("-3z^2+1")


def frac(s):
    return Fraction(s)
