import pytest

import config
from helpers.complexes import (
    GPoset,
    SComplex,
    SimplicialMap,
    barycentric_subdivision,
    chain_poset,
    cross_polytope_boundary,
    disjoint_union,
    euler_characteristic,
    face_id,
    face_offsets,
    face_poset,
    from_maximal_faces,
    is_simplicial_map,
    join,
    order_complex,
    poset_product,
    simplex,
    skeleton,
    walker_product,
)
from helpers.corpus import Lcg, random_complex
from helpers.errors import CapExceeded, EmptyComplex, InvalidComplex, InvalidPoset


def test_simplex_and_cross_polytope_f_vectors():
    assert simplex(0).f_vector() == [1]
    assert simplex(2).f_vector() == [3, 3, 1]
    assert cross_polytope_boundary(1).f_vector() == [2]
    assert cross_polytope_boundary(3).f_vector() == [6, 12, 8]
    assert euler_characteristic(cross_polytope_boundary(3)) == 2
    assert euler_characteristic(cross_polytope_boundary(2)) == 0


def test_cross_polytope_needs_positive_dimension():
    with pytest.raises(EmptyComplex):
        cross_polytope_boundary(0)


def test_faces_are_sorted_and_closed():
    K = from_maximal_faces(range(4), [(2, 0, 1), (3, 2)])
    assert K.faces(0) == [(0,), (1,), (2,), (3,)]
    assert K.faces(1) == [(0, 1), (0, 2), (1, 2), (2, 3)]
    assert K.faces(2) == [(0, 1, 2)]
    assert K.has_face((1, 0))
    assert not K.has_face((0, 3))
    assert sorted(K.maximal_faces()) == [(0, 1, 2), (2, 3)]


def test_from_maximal_faces_truncates_to_max_dim():
    K = from_maximal_faces(range(4), [(0, 1, 2, 3)], max_dim=1)
    assert K.f_vector() == [4, 6]


def test_isolated_labels_are_vertices():
    K = SComplex(range(3), [(0, 1)])
    assert K.f_vector() == [3, 1]
    assert (2,) in K.maximal_faces()


def test_invalid_complexes_rejected():
    with pytest.raises(EmptyComplex):
        SComplex([], [])
    with pytest.raises(InvalidComplex):
        SComplex(range(3), [(0, 1, 2)])
    with pytest.raises(InvalidComplex):
        SComplex(range(2), [(0, 5)])
    with pytest.raises(InvalidComplex):
        from_maximal_faces(range(2), [()])


def test_caps_are_enforced():
    config.dim_cap = 2
    with pytest.raises(CapExceeded) as excinfo:
        simplex(3)
    assert excinfo.value.cap_name == "dim_cap"
    assert excinfo.value.exit_code == 3

    config.dim_cap = 12
    config.face_cap = 10
    with pytest.raises(CapExceeded):
        simplex(3)


def test_join_of_two_point_pairs_is_a_square():
    S0 = cross_polytope_boundary(1)
    J = join(S0, S0)
    assert J.f_vector() == [4, 4]
    assert J.labels[0] == ("K", "+e0")
    assert J.labels[2] == ("L", "+e0")


def test_disjoint_union_and_skeleton():
    U = disjoint_union(simplex(1), simplex(2))
    assert U.f_vector() == [5, 4, 1]
    assert skeleton(simplex(3), 1).f_vector() == [4, 6]
    assert skeleton(simplex(1), 5) == simplex(1)
    with pytest.raises(InvalidComplex):
        skeleton(simplex(1), -1)


def test_face_ids_follow_dim_lex_order():
    K = simplex(1)
    assert face_offsets(K) == [0, 2, 3]
    assert [face_id(K, face) for face in K.all_faces()] == [0, 1, 2]


def test_poset_validation():
    with pytest.raises(InvalidPoset):
        GPoset(range(2), [(0, 1), (1, 0)])
    with pytest.raises(InvalidPoset):
        GPoset(range(3), [(0, 1), (1, 2)])  # missing (0, 2)
    with pytest.raises(InvalidPoset):
        GPoset(range(1), [(0, 0)])
    with pytest.raises(InvalidPoset):
        GPoset.from_covers(range(3), [(0, 1), (1, 2), (2, 0)])


def test_from_covers_takes_transitive_closure():
    P = GPoset.from_covers(range(3), [(0, 1), (1, 2)])
    assert P == chain_poset(3)
    assert P.less(0, 2)
    assert P.comparable(2, 0)
    assert P.leq(1, 1)
    assert P.cover_relations() == [(0, 1), (1, 2)]


def test_face_poset_and_subdivision():
    P = face_poset(simplex(1))
    assert P.element_count == 3
    assert P.less_than == frozenset({(0, 2), (1, 2)})
    assert barycentric_subdivision(simplex(1)).f_vector() == [3, 2]
    assert barycentric_subdivision(simplex(2)).f_vector() == [7, 12, 6]


def test_order_complex_of_chain_is_a_simplex():
    assert order_complex(chain_poset(4)) == simplex(3)
    assert order_complex(chain_poset(4), max_dim=1).f_vector() == [4, 6]


def test_poset_product_relations():
    P = poset_product(chain_poset(2), chain_poset(2))
    assert P.element_count == 4
    assert len(P.less_than) == 5
    assert P.less(0, 3) and not P.comparable(1, 2)


def test_walker_product_of_two_edges_is_a_square():
    W = walker_product(simplex(1), simplex(1))
    assert W.f_vector() == [9, 16, 8]
    assert euler_characteristic(W) == 1
    assert walker_product(simplex(1), simplex(1), max_dim=1).f_vector() == [9, 16]


def test_walker_product_matches_order_complex_of_product():
    K, L = simplex(1), cross_polytope_boundary(1)
    assert walker_product(K, L) == order_complex(poset_product(face_poset(K), face_poset(L)))


def test_simplicial_maps():
    edge, points = simplex(1), cross_polytope_boundary(1)
    assert is_simplicial_map(SimplicialMap(edge, simplex(0), (0, 0)))
    assert is_simplicial_map(SimplicialMap(points, edge, (0, 1)))
    assert not is_simplicial_map(SimplicialMap(edge, points, (0, 1)))
    assert not is_simplicial_map(SimplicialMap(edge, points, (0,)))


def _random_complexes(seed, count, max_vertices=4):
    rng = Lcg(seed)
    return [random_complex(rng, rng.randint(1, max_vertices), max_faces=3) for _ in range(count)]


def test_euler_characteristic_survives_subdivision():
    for K in [simplex(2), cross_polytope_boundary(3)] + _random_complexes(5, 6):
        assert euler_characteristic(barycentric_subdivision(K)) == euler_characteristic(K)


def test_euler_characteristic_of_joins():
    complexes = _random_complexes(17, 6)
    for K, L in zip(complexes, complexes[1:]):
        chi_k, chi_l = euler_characteristic(K), euler_characteristic(L)
        assert euler_characteristic(join(K, L)) == chi_k + chi_l - chi_k * chi_l


def test_join_is_associative_on_face_counts():
    K, L, M = _random_complexes(29, 3, max_vertices=3)
    assert join(join(K, L), M).f_vector() == join(K, join(L, M)).f_vector()
    S0 = cross_polytope_boundary(1)
    assert join(join(S0, S0), S0).f_vector() == cross_polytope_boundary(3).f_vector()
