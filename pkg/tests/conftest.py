import numpy as np
import pytest
from hypothesis import strategies as st

from bdiv import Pmf


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@st.composite
def pmfs(draw, min_n=1, max_n=16, allow_zeros=True, n=None):
    size = n if n is not None else draw(st.integers(min_n, max_n))
    weights = draw(
        st.lists(
            st.floats(0.0 if allow_zeros else 1e-3, 1.0, allow_nan=False),
            min_size=size,
            max_size=size,
        )
    )
    total = sum(weights)
    if total == 0:
        weights = [1.0] + [0.0] * (size - 1)
        total = 1.0
    return Pmf([w / total for w in weights])


@st.composite
def pmf_pairs(draw, min_n=2, max_n=16, allow_zeros=True):
    n = draw(st.integers(min_n, max_n))
    return draw(pmfs(n=n, allow_zeros=allow_zeros)), draw(pmfs(n=n, allow_zeros=allow_zeros))
