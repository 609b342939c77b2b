from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import complexes, pure_complexes
from slspheres.complex_core import (
    Complex,
    cross_polytope_boundary,
    cyclic_polytope_boundary,
    delta_dn,
    f_vector,
    is_shifted,
    octahedron,
    simplex_boundary,
    torus_7,
)
from slspheres.exact_linalg import QQ, GenericityPolicy
from slspheres.shifting import (
    ShiftingConsistencyError,
    _exterior_trial,
    _symmetric_trial,
    check_cm_condition,
    check_sl_condition,
    check_ubt,
    check_wwl_condition,
    exterior_shift,
    hierarchy_report,
    is_m_sequence,
    macaulay_representation,
    pseudo_power,
    s_of,
    shift,
    symmetric_shift,
    wwl_sufficient,
    y_monomial_less,
)

POLICY = GenericityPolicy(seed=0, trials=3)
small_matrix = st.integers(2, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
)


def test_s_of():
    assert s_of((1,)) == (1,)
    assert s_of((3, 3)) == (2, 3)
    assert s_of((3, 4, 7)) == (1, 3, 7)


def test_y_order_is_sorted_tuple_order():
    for r in (1, 2, 3):
        monos = list(combinations_with_replacement(range(1, 5), r))
        for a, b in zip(monos, monos[1:]):
            assert y_monomial_less(a, b) and not y_monomial_less(b, a)
    assert y_monomial_less((1, 1), (1, 2))
    assert not y_monomial_less((2, 2), (2, 2))
    with pytest.raises(ValueError):
        y_monomial_less((1,), (1, 1))


@given(complexes(max_n=5), st.data())
@settings(max_examples=30, deadline=None)
def test_exterior_trial_matches_sympy_minors(K, data):
    n = K.n
    A = data.draw(st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n))
    got = set(_exterior_trial(K, QQ.array(A), QQ)) | {()}
    assert got == oracles.exterior_shift(K, A)


@given(pure_complexes(max_n=5, dims=(1, 2)), st.data())
@settings(max_examples=20, deadline=None)
def test_symmetric_trial_matches_sympy_expansion(K, data):
    n = K.n
    Y = data.draw(st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n))
    faces, gin = _symmetric_trial(K, QQ.array(Y), QQ)
    assert Complex.from_faces(n, faces).face_set == oracles.symmetric_shift(K, Y)
    assert [s_of(m) for m in gin] == faces


@pytest.mark.parametrize("variant", ["exterior", "symmetric"])
@pytest.mark.parametrize("d,n", [(2, 6), (3, 6), (4, 7)])
def test_cyclic_polytopes_shift_to_delta(variant, d, n):
    res = shift(cyclic_polytope_boundary(d, n), variant, POLICY)
    assert res.stable
    assert res.complex == delta_dn(d, n)


@pytest.mark.parametrize("variant", ["e", "s"])
def test_shifted_complexes_are_fixed(variant):
    for D in (delta_dn(2, 5), delta_dn(3, 6), Complex(4, [(1, 2, 3), (1, 2, 4)])):
        assert shift(D, variant, POLICY).complex == D


@given(complexes(max_n=6))
@settings(max_examples=25, deadline=None)
def test_shift_preserves_f_vector_and_is_shifted(K):
    for res in (exterior_shift(K, POLICY), symmetric_shift(K, POLICY)):
        assert res.stable
        assert f_vector(res.complex) == f_vector(K)
        assert is_shifted(res.complex)


def test_isolated_labels_are_ignored():
    K = Complex(6, [(2, 4), (4, 6), (2, 6)])
    assert exterior_shift(K, POLICY).complex == Complex(6, [(1, 2), (1, 3), (2, 3)])


def test_gin_record():
    res = symmetric_shift(octahedron(), POLICY)
    assert set(res.gin.faces) <= res.complex.face_set


def test_cm_and_wwl_conditions():
    D = delta_dn(3, 6)
    assert check_cm_condition(D, 3) and check_wwl_condition(D, 3)
    assert check_sl_condition(D, 3)
    assert not check_cm_condition(Complex(4, [(1, 2), (3,)]), 2)
    assert wwl_sufficient(octahedron(), 3)
    assert not wwl_sufficient(Complex(3, [(1, 2), (1, 3)]), 4)


def test_sl_condition_rejects_t_sets():
    D = Complex.from_faces(5, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)])
    assert not check_sl_condition(D, 2)
    assert not check_sl_condition(simplex_boundary(3), 2)
    with pytest.raises(ShiftingConsistencyError):
        # not shifted: (2, 5) lies outside the extremal complex yet avoids both T-sets
        check_sl_condition(Complex(5, [(2, 5)]), 2)


def test_hierarchy_on_spheres():
    for K in (octahedron(), cyclic_polytope_boundary(4, 8), cross_polytope_boundary(4)):
        rep = hierarchy_report(symmetric_shift(K, POLICY).complex, K.d)
        assert rep.level1 and rep.level2


def test_ubt():
    assert check_ubt(cyclic_polytope_boundary(4, 8), 4, POLICY)["pass"]
    assert check_ubt(octahedron(), 3, POLICY, "exterior")["pass"]
    res = check_ubt(torus_7(), 3, POLICY)
    assert not res["f_bound"] and not res["contained"]


def test_macaulay():
    assert macaulay_representation(8, 2) == [(4, 2), (2, 1)]
    assert pseudo_power(8, 2) == 13
    assert pseudo_power(3, 1) == 6
    assert is_m_sequence([1, 3, 6, 10])
    assert not is_m_sequence([1, 2, 4])
    assert not is_m_sequence([1, -1])
    assert is_m_sequence([1])


@given(st.lists(st.integers(0, 5), min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_m_sequence_matches_multicomplex_search(tail):
    g = [1] + tail
    assert is_m_sequence(g) == oracles.multicomplex_exists(g)


def test_octahedron_shift_satisfies_criteria():
    D = symmetric_shift(octahedron(), POLICY).complex
    assert f_vector(D) == (1, 6, 12, 8)
    assert check_cm_condition(D, 3) and check_sl_condition(D, 3)


def test_hierarchy_on_delta():
    rep = hierarchy_report(delta_dn(3, 7), 3)
    assert (rep.level1, rep.level2) == (True, True)
    assert rep.witness1 is None


def test_hierarchy_reports_witness():
    # shifted, but too thin for level (1)
    D = Complex.from_faces(6, [(1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6)])
    rep = hierarchy_report(D, 3)
    assert not rep.level1 and rep.witness1 is not None
