import pytest

from helpers.actions import (
    FreeAction,
    actions_isomorphic,
    disjoint_union_action,
    e_k_g,
    has_simplicial_quotient,
    is_equivariant_map,
    is_strongly_free,
    join_action,
    orbits,
    power,
    product_action,
    quotient,
    regularize,
    skeleton_action,
    sphere_action,
    subdivision_action,
    validate_action,
)
from helpers.complexes import SimplicialMap, cross_polytope_boundary, from_maximal_faces, simplex
from helpers.errors import BadParams, NotAPrime, NotFree, NotSimplicial, PMismatch, StillIrregular, WrongOrder


def _triangle_rotation():
    K = from_maximal_faces(range(3), [(0, 1), (1, 2), (0, 2)])
    return validate_action(K, (1, 2, 0), 3, strict=False)


def test_e_k_g_shape():
    a = e_k_g(3, 2)
    assert a.complex.vertex_count == 9
    assert a.complex.f_vector() == [9, 27, 27]
    assert a.generator[:3] == (1, 2, 0)
    with pytest.raises(NotAPrime):
        e_k_g(4, 1)
    with pytest.raises(BadParams):
        e_k_g(2, -1)


def test_sphere_is_e_k_g_for_p2():
    assert sphere_action(1).complex == e_k_g(2, 1).complex
    assert actions_isomorphic(sphere_action(2), e_k_g(2, 2))
    assert not actions_isomorphic(sphere_action(1), sphere_action(2))
    with pytest.raises(BadParams):
        sphere_action(-1)


def test_orbits_and_powers(circle):
    assert orbits(circle) == [(0, 1), (2, 3)]
    assert power(circle, 0) == (0, 1, 2, 3)
    assert power(circle, 3) == circle.generator
    assert circle.translate((0, 2)) == (1, 3)


def test_validate_action_errors():
    S0 = cross_polytope_boundary(1)
    with pytest.raises(NotAPrime):
        validate_action(S0, (1, 0), 4)
    with pytest.raises(WrongOrder):
        validate_action(S0, (0, 1), 2)
    with pytest.raises(WrongOrder):
        validate_action(S0, (1, 0), 3)
    with pytest.raises(NotSimplicial):
        validate_action(S0, (0, 0), 2)

    path = from_maximal_faces(range(3), [(0, 1), (1, 2)])
    with pytest.raises(NotSimplicial) as excinfo:
        validate_action(path, (1, 2, 0), 3)
    assert excinfo.value.witness == (1, 2)


def test_swapping_an_edge_is_not_free():
    with pytest.raises(NotFree) as excinfo:
        validate_action(simplex(1), (1, 0), 2)
    assert excinfo.value.witness == ((0, 1), 1)
    a = validate_action(simplex(1), (1, 0), 2, strict=False)
    with pytest.raises(StillIrregular):
        regularize(a)


def test_regularize_subdivides_rotated_triangle():
    a = _triangle_rotation()
    assert not is_strongly_free(a)
    orbit_model = regularize(a, model="orbit")
    assert orbit_model.complex.f_vector() == [6, 6]
    assert is_strongly_free(orbit_model)
    assert not has_simplicial_quotient(orbit_model)

    simplicial_model = regularize(a, model="simplicial")
    assert simplicial_model.complex.f_vector() == [12, 12]
    assert has_simplicial_quotient(simplicial_model)


def test_regularize_keeps_regular_actions(circle):
    assert regularize(circle) is circle


def test_quotient_of_antipodal_circle(circle):
    q = quotient(circle)
    assert q.quotient.f_vector() == [2, 2]
    assert q.section == (0, 2)
    assert q.projection == (0, 0, 1, 1)
    assert not q.is_simplicial
    with pytest.raises(StillIrregular):
        q.simplicial_complex()


def test_quotient_face_counts_divide_by_p(circle, two_sphere, e1_z3):
    for a in (circle, two_sphere, e1_z3, e_k_g(3, 2), e_k_g(2, 3), join_action(circle, e_k_g(2, 0))):
        q = quotient(regularize(a))
        for d in range(a.complex.dim + 1):
            assert q.action.complex.face_count(d) == a.p * q.quotient.face_count(d)


def test_simplicial_quotient_of_subdivided_circle():
    a = regularize(sphere_action(1), model="simplicial")
    assert a.complex.f_vector() == [8, 8]
    q = quotient(a)
    assert q.is_simplicial
    assert q.quotient.f_vector() == [4, 4]
    assert q.simplicial_complex().f_vector() == [4, 4]


def test_quotient_cells_lift_to_faces(two_sphere):
    q = quotient(two_sphere)
    for d in range(3):
        for cell in q.quotient.faces(d):
            for k in range(two_sphere.p):
                assert two_sphere.complex.has_face(q.quotient.lift_cell(cell, k))


def test_quotient_cells_start_at_section_vertices(two_sphere):
    q = quotient(two_sphere)
    assert q.quotient.f_vector() == [3, 6, 4]
    for d in range(3):
        for cell in q.quotient.faces(d):
            assert q.quotient.exponent[cell[0]] == 0
            shifted = tuple(two_sphere.generator[v] for v in cell)
            assert q.quotient.normalize(shifted) == cell


def test_quotient_rejects_non_free_action():
    a = _triangle_rotation()
    with pytest.raises(NotFree):
        quotient(a)


def test_constructions_preserve_p():
    S0 = sphere_action(0)
    assert join_action(S0, S0).complex.f_vector() == [4, 4]
    assert disjoint_union_action(S0, S0).complex.f_vector() == [4]
    assert skeleton_action(e_k_g(2, 2), 1).complex.f_vector() == [6, 12]
    assert subdivision_action(sphere_action(1)).complex.f_vector() == [8, 8]
    with pytest.raises(PMismatch):
        join_action(S0, e_k_g(3, 0))
    with pytest.raises(PMismatch):
        disjoint_union_action(S0, e_k_g(3, 0))
    with pytest.raises(PMismatch):
        product_action(S0, e_k_g(3, 0))


def test_product_action_is_strongly_free(circle):
    a = product_action(circle, sphere_action(0))
    assert is_strongly_free(a)
    # two antipodal circles, each subdivided by the product triangulation
    assert a.complex.vertex_count == 16


def test_equivariant_maps(circle):
    identity = SimplicialMap(circle.complex, circle.complex, (0, 1, 2, 3))
    assert is_equivariant_map(identity, circle, circle)
    swap_orbits = SimplicialMap(circle.complex, circle.complex, (2, 3, 0, 1))
    assert is_equivariant_map(swap_orbits, circle, circle)
    not_equivariant = SimplicialMap(circle.complex, circle.complex, (0, 0, 2, 2))
    assert not is_equivariant_map(not_equivariant, circle, circle)


def test_free_action_dataclass(circle):
    copy = FreeAction(circle.complex, 2, circle.generator)
    assert copy.dim == 1
    assert copy.powers == circle.powers


@pytest.mark.parametrize("p,i,j", [(2, 0, 0), (2, 0, 1), (2, 1, 1), (2, 0, 2), (3, 0, 0), (3, 0, 1), (3, 1, 1)])
def test_join_of_models_is_a_model(p, i, j):
    assert actions_isomorphic(join_action(e_k_g(p, i), e_k_g(p, j)), e_k_g(p, i + j + 1))
    assert not actions_isomorphic(join_action(e_k_g(p, i), e_k_g(p, j)), e_k_g(p, i + j))


def test_join_of_point_pairs_is_the_circle():
    assert actions_isomorphic(join_action(sphere_action(0), sphere_action(0)), sphere_action(1))
    assert actions_isomorphic(join_action(sphere_action(0), sphere_action(1)), sphere_action(2))
