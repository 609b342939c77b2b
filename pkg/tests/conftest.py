from itertools import combinations

import pytest
from hypothesis import strategies as st

from slspheres.complex_core import Complex
from slspheres.exact_linalg import GenericityPolicy


@pytest.fixture
def policy():
    return GenericityPolicy(seed=0, trials=3)


@st.composite
def pure_complexes(draw, max_n=6, dims=(1, 2)):
    """Pure complexes with facets of size d+1 on at most ``max_n`` vertices."""
    k = draw(st.sampled_from(dims)) + 1
    n = draw(st.integers(k + 1, max_n))
    pool = list(combinations(range(1, n + 1), k))
    facets = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=len(pool), unique=True))
    return Complex(n, facets)


@st.composite
def complexes(draw, max_n=6):
    """Arbitrary complexes (possibly impure) given by random generating faces."""
    n = draw(st.integers(1, max_n))
    faces = draw(
        st.lists(
            st.sets(st.integers(1, n), min_size=1, max_size=min(n, 4)).map(lambda s: tuple(sorted(s))),
            min_size=1,
            max_size=8,
        )
    )
    return Complex.from_faces(n, faces)
