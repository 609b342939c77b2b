import json
from itertools import combinations

import pytest
from hypothesis import given, settings

import oracles
from conftest import complexes
from slspheres.complex_core import (
    Complex,
    ComplexError,
    NotAFaceError,
    NotSymmetricError,
    cross_polytope_boundary,
    cycle,
    cyclic_polytope_boundary,
    delta_dn,
    dump_complex,
    f_vector,
    faces,
    g_vector,
    h_vector,
    is_shifted,
    link,
    load_complex,
    octahedron,
    simplex_boundary,
    star,
    t_set,
    torus_7,
)


def test_faces_of_triangle_boundary():
    K = simplex_boundary(2)
    assert faces(K, 1) == [(1, 2), (1, 3), (2, 3)]
    assert faces(K, -1) == [()]
    assert faces(K, 5) == []
    assert len(faces(octahedron(), 2)) == 8


def test_vectors_of_small_spheres():
    K = simplex_boundary(2)
    assert (f_vector(K), h_vector(K), g_vector(K)) == ((1, 3, 3), (1, 1, 1), (1, 0))
    O = octahedron()
    assert (f_vector(O), h_vector(O), g_vector(O)) == ((1, 6, 12, 8), (1, 3, 3, 1), (1, 2))
    assert h_vector(cyclic_polytope_boundary(4, 8)) == (1, 4, 10, 4, 1)


def test_g_vector_needs_symmetric_h():
    two_triangles = Complex(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
    assert h_vector(two_triangles) == (1, 4, 1)
    with pytest.raises(NotSymmetricError):
        g_vector(Complex(3, [(1, 2), (2, 3)]))


def test_links_and_stars():
    O = octahedron()
    lk = link(O, (1,))
    assert sorted(lk.facets) == [(3, 5), (3, 6), (4, 5), (4, 6)]
    assert link(O, ()) == O
    assert link(simplex_boundary(3), (1, 2)).facets == ((3,), (4,))
    with pytest.raises(NotAFaceError):
        link(O, (1, 2))
    assert len(star(O, (1,)).facets) == 4


def test_shiftedness_examples():
    assert is_shifted(delta_dn(2, 4))
    assert not is_shifted(cycle(4))
    assert is_shifted(simplex_boundary(4))


def test_generators():
    assert delta_dn(2, 4).facets == ((1, 2), (1, 3), (1, 4), (2, 3))
    for d in range(1, 5):
        assert delta_dn(d, d + 1) == simplex_boundary(d)
    for n in range(3, 8):
        assert cyclic_polytope_boundary(2, n) == cycle(n)
    assert cross_polytope_boundary(3) == octahedron()
    with pytest.raises(ComplexError):
        cyclic_polytope_boundary(3, 3)


@pytest.mark.parametrize("d,n", [(3, 6), (3, 7), (4, 7), (4, 8), (5, 8)])
def test_gale_evenness_matches_moment_curve(d, n):
    assert set(cyclic_polytope_boundary(d, n).facets) == oracles.moment_facets(d, n)


def test_t_sets():
    assert t_set(3, 0) == (2, 3, 5)
    assert t_set(2, 0) == (2, 4)
    assert t_set(4, 1) == (3, 5, 6)
    with pytest.raises(ValueError):
        t_set(3, 2)


def _dominates(S, T):
    # the top |T| entries of S sit componentwise above T
    tail = S[len(S) - len(T):]
    return len(T) <= len(S) and all(a >= b for a, b in zip(tail, T))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_delta_dn_is_complement_of_t_set_upset(d):
    n = d + 4
    D = delta_dn(d, n)
    ts = [t_set(d, k) for k in range(d // 2 + 1)]
    for S in combinations(range(1, n + 1), d):
        assert (S in D.face_set) != any(_dominates(S, T) for T in ts)
    assert is_shifted(D)
    assert D.face_set <= delta_dn(d, n + 1).face_set


def test_euler_characteristic_of_generated_spheres():
    spheres = [simplex_boundary(d) for d in range(1, 6)] + [
        cross_polytope_boundary(4), cyclic_polytope_boundary(3, 7), cyclic_polytope_boundary(4, 8)]
    for K in spheres:
        f = f_vector(K)
        reduced_euler = sum((-1) ** (i - 1) * f[i] for i in range(len(f)))
        assert reduced_euler == (-1) ** K.dim
        assert h_vector(K) == h_vector(K)[::-1]


def test_validation_and_json(tmp_path):
    with pytest.raises(ComplexError):
        Complex(3, [(1, 2), (1, 2, 3)])
    with pytest.raises(ComplexError):
        Complex(2, [(1, 3)])
    path = tmp_path / "t.json"
    dump_complex(torus_7(), path)
    assert load_complex(path) == torus_7()
    assert json.loads(path.read_text())["n"] == 7
    with pytest.raises(ComplexError):
        Complex.from_json({"facets": []})
    assert Complex(4, []).facets == ((),)


@given(complexes())
@settings(max_examples=60, deadline=None)
def test_f_and_h_match_oracle(K):
    assert f_vector(K) == oracles.f_vector(K)
    assert h_vector(K) == oracles.h_vector(K)
    assert is_shifted(K) == oracles.is_shifted(oracles.all_faces(K))


@given(complexes())
@settings(max_examples=40, deadline=None)
def test_link_of_link(K):
    for F in K.face_set:
        assert link(K, F).face_set == oracles.link(K, F)
        L = link(K, F)
        for Q in L.face_set:
            assert link(L, Q) == link(K, tuple(sorted(F + Q)))
