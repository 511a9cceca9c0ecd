import hypothesis
import pytest
from hypothesis import strategies as st

from testcover.core import Instance

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("ci")


@st.composite
def instances(draw, max_n=6, max_t=8, max_r=3, min_t=0):
    n = draw(st.integers(2, max_n))
    t = draw(st.integers(min_t, max_t))
    r = draw(st.integers(1, max_r))
    tests = draw(st.lists(st.frozensets(st.integers(0, n - 1)), min_size=t, max_size=t))
    return Instance(n, tuple(tests), r)


@pytest.fixture
def singletons4():
    return Instance(4, tuple(frozenset({i}) for i in range(4)), 1)
