import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from quasipoly.chain import ChainTuple, FiniteChain
from quasipoly.table import DiscreteFunction

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def chains(draw, max_size=5):
    return FiniteChain(draw(st.integers(2, max_size)))


@st.composite
def chain_tuples(draw, chain=None, n=None):
    chain = chain or draw(chains())
    n = n or draw(st.integers(1, 4))
    comps = draw(st.lists(st.integers(0, chain.top), min_size=n, max_size=n))
    return ChainTuple(chain, tuple(comps))


@st.composite
def functions(draw, m=None, n=None, max_m=4, max_n=2):
    m = m or draw(st.integers(2, max_m))
    n = n or draw(st.integers(1, max_n))
    table = draw(st.lists(st.integers(0, m - 1), min_size=m**n, max_size=m**n))
    return DiscreteFunction(FiniteChain(m), n, tuple(table))


@st.composite
def nondecreasing_functions(draw, m=None, n=None, max_m=4, max_n=2):
    """Monotone tables built as the max of random lower bounds over covering predecessors."""
    m = m or draw(st.integers(2, max_m))
    n = n or draw(st.integers(1, max_n))
    raw = draw(st.lists(st.integers(0, m - 1), min_size=m**n, max_size=m**n))
    chain = FiniteChain(m)
    values = {}
    for idx, x in enumerate(chain.tuples(n)):
        lb = max((values[tuple(x[:i]) + (x[i] - 1,) + tuple(x[i + 1 :])]
                  for i in range(n) if x[i] > 0), default=0)
        values[tuple(x)] = max(lb, raw[idx])
    return DiscreteFunction(chain, n, tuple(values.values()))


@pytest.fixture
def m3():
    return FiniteChain(3)
