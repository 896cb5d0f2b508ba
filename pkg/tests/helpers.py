"""Hypothesis strategies and shared state for the test suite."""

from hypothesis import settings, strategies as st

from wienerqap.core import WienerQapInstance

ACCEPTANCE_LINES = []


@st.composite
def instances(draw, max_n=8, alpha_max=10, beta_max=15, min_n=1):
    n = draw(st.integers(min_n, max_n))
    alphas = draw(st.lists(st.integers(0, alpha_max), min_size=n, max_size=n))
    betas = draw(st.lists(st.integers(0, beta_max), min_size=n, max_size=n))
    return WienerQapInstance(tuple(alphas), tuple(betas))


@st.composite
def instance_and_perm(draw, max_n=8, **kw):
    inst = draw(instances(max_n=max_n, **kw))
    perm = draw(st.permutations(range(1, inst.n + 1)))
    return inst, tuple(perm)


@st.composite
def degree_sequences(draw, max_r=12):
    r = draw(st.integers(2, max_r))
    extra = draw(st.lists(st.integers(0, r - 1), min_size=r - 2, max_size=r - 2))
    degrees = [1] * r
    for v in extra:
        degrees[v] += 1
    return degrees

