import random

import pytest
from hypothesis import strategies as st

from grset.fincat import PartialBijection, PartialFn


@st.composite
def partial_fns(draw, max_size=4, source=None, target=None):
    m = draw(st.integers(0, max_size)) if source is None else source
    n = draw(st.integers(0, max_size)) if target is None else target
    graph = draw(st.lists(st.one_of(st.none(), st.integers(0, n - 1)) if n else st.none(),
                          min_size=m, max_size=m))
    return PartialFn(m, n, tuple(graph))


@st.composite
def partial_bijections(draw, max_size=5, source=None, target=None):
    m = draw(st.integers(0, max_size)) if source is None else source
    n = draw(st.integers(0, max_size)) if target is None else target
    slots = draw(st.permutations(list(range(n))))
    keep = draw(st.lists(st.booleans(), min_size=m, max_size=m))
    graph, free = [], list(slots)
    for k in keep:
        graph.append(free.pop() if k and free else None)
    return PartialBijection(m, n, tuple(graph))


@pytest.fixture
def rng():
    return random.Random(1234)
