import pytest

import config
from helpers.actions import e_k_g
from helpers.complexes import GPoset, chain_poset
from helpers.corpus import Lcg, random_poset_action
from helpers.errors import (
    BadCertificate,
    BadParams,
    BadR,
    CapExceeded,
    EmptyComplex,
    InvalidPoset,
    NotAPrime,
    NotFree,
    NotProperColoring,
    NotUniform,
    PMismatch,
    WrongOrder,
)
from helpers.graphs import complete, cycle
from helpers.hypergraphs import (
    INFINITE,
    ConditionFailed,
    Hypergraph,
    afl_bound,
    b_edge_complex,
    certified_product_bound,
    coloring_to_equivariant_map,
    compatibility_hypergraph,
    edge_complex_homomorphism,
    face_poset_action,
    from_graph,
    hyper_chromatic_number,
    is_afl_tight,
    is_proper_coloring,
    kneser_hypergraph,
    optimal_hyper_coloring,
    order_complex_action,
    poset_action_product,
    poset_coloring_bound,
    product_chromatic_bound,
    product_compatibility_inclusion,
    validate_poset_action,
    verify_zhu_conjecture,
    zhu_contains,
    zhu_product,
)
from helpers.index import find_coindex_certificate, hind


@pytest.fixture
def k3_edges():
    return from_graph(complete(3))


@pytest.fixture
def k4_edges():
    return from_graph(complete(4))


@pytest.fixture
def square_poset():
    return face_poset_action(e_k_g(2, 1))


def test_hypergraph_validation():
    with pytest.raises(BadParams):
        Hypergraph.from_edges(3, [()])
    with pytest.raises(BadParams):
        Hypergraph.from_edges(3, [(0, 3)])
    H = Hypergraph.from_edges(3, [(0, 1, 2), (2, 1, 0)])
    assert len(H.edges) == 1
    assert H.is_uniform(3) and not H.is_uniform(2)
    assert len(H.incidence[1]) == 1


def test_kneser_hypergraphs():
    H = kneser_hypergraph(5, 1, 3)
    assert H.n == 5
    assert len(H.edges) == 10
    assert len(kneser_hypergraph(6, 2, 3).edges) == 15
    with pytest.raises(BadParams):
        kneser_hypergraph(2, 1, 3)
    with pytest.raises(BadParams):
        kneser_hypergraph(5, 1, 1)


def test_hyper_chromatic_numbers(k3_edges):
    assert hyper_chromatic_number(kneser_hypergraph(5, 1, 3)) == 3
    assert hyper_chromatic_number(kneser_hypergraph(4, 1, 3)) == 2
    assert hyper_chromatic_number(k3_edges) == 3
    assert hyper_chromatic_number(Hypergraph(3, frozenset())) == 1
    assert optimal_hyper_coloring(Hypergraph(0, frozenset())) == (0, [])


def test_singleton_edge_means_no_coloring():
    H = Hypergraph.from_edges(2, [(0,), (0, 1)])
    assert optimal_hyper_coloring(H) == (INFINITE, None)


def test_optimal_coloring_is_proper():
    H = kneser_hypergraph(5, 1, 3)
    k, coloring = optimal_hyper_coloring(H)
    assert is_proper_coloring(H, coloring)
    assert len(set(coloring)) == k
    assert not is_proper_coloring(H, [0, 0, 0, 1, 1])
    assert not is_proper_coloring(H, [0, 1])


def test_zhu_product_of_two_edges():
    K2 = from_graph(complete(2))
    Z = zhu_product(K2, K2)
    assert Z.n == 4
    assert len(Z.edges) == 7
    assert {len(e) for e in Z.edges} == {2, 3, 4}
    assert zhu_contains(K2, K2, [(0, 0), (1, 1)])
    assert not zhu_contains(K2, K2, [(0, 0)])
    assert not zhu_contains(K2, K2, [])
    assert verify_zhu_conjecture(K2, K2) == (2, 2, True)


def test_zhu_size_cap():
    K2 = from_graph(complete(2))
    config.zhu_size_cap = 2
    with pytest.raises(CapExceeded) as excinfo:
        zhu_product(K2, K2)
    assert excinfo.value.cap_name == "zhu_size_cap"


def test_zhu_matches_categorical_product(k3_edges):
    assert verify_zhu_conjecture(from_graph(complete(2)), k3_edges) == (2, 2, True)


def test_edge_complex_of_a_single_edge():
    B = b_edge_complex(from_graph(complete(2)), 2)
    assert B.complex.f_vector() == [2]
    assert B.complex.labels == [(0, 1), (1, 0)]
    assert hind(B).hind == 0


def test_edge_complex_of_triangle_is_a_hexagon(k3_edges):
    B = b_edge_complex(k3_edges, 2)
    assert B.complex.f_vector() == [6, 6]
    degree = [0] * 6
    for u, v in B.complex.faces(1):
        degree[u] += 1
        degree[v] += 1
    assert degree == [2] * 6
    assert hind(B).hind == 1


def test_edge_complex_errors(k3_edges):
    with pytest.raises(NotAPrime):
        b_edge_complex(k3_edges, 4)
    with pytest.raises(EmptyComplex):
        b_edge_complex(Hypergraph(3, frozenset()), 2)
    with pytest.raises(NotUniform) as excinfo:
        b_edge_complex(Hypergraph.from_edges(3, [(0, 1), (0, 1, 2)]), 2)
    assert excinfo.value.witness == [0, 1, 2]


def test_afl_bound_on_complete_graphs(k3_edges, k4_edges):
    assert afl_bound(k3_edges, 2) == 3
    assert afl_bound(k4_edges, 2) == 4
    assert is_afl_tight(k3_edges, 2)
    assert afl_bound(from_graph(cycle(5)), 2) <= 3


def test_afl_bound_on_triple_systems():
    assert afl_bound(kneser_hypergraph(4, 1, 3), 3) <= 2


@pytest.mark.slow
def test_afl_bound_on_complete_triple_system():
    assert afl_bound(kneser_hypergraph(5, 1, 3), 3) <= 3


def test_validate_poset_action_errors():
    antichain = GPoset(range(3), [])
    with pytest.raises(NotAPrime):
        validate_poset_action(antichain, (1, 0, 2), 4)
    with pytest.raises(InvalidPoset):
        validate_poset_action(antichain, (0, 0, 1), 2)
    with pytest.raises(InvalidPoset):
        validate_poset_action(chain_poset(2), (1, 0), 2)
    with pytest.raises(WrongOrder):
        validate_poset_action(antichain, (0, 1, 2), 2)
    with pytest.raises(WrongOrder):
        validate_poset_action(antichain, (1, 0, 2), 3)
    with pytest.raises(NotFree) as excinfo:
        validate_poset_action(antichain, (1, 0, 2), 2)
    assert excinfo.value.witness == (2, 1)


def test_face_poset_action_is_free(square_poset):
    assert square_poset.poset.element_count == 8
    assert len(square_poset.orbits()) == 4
    assert order_complex_action(square_poset).complex.f_vector() == [8, 8]


def test_random_poset_actions_are_free():
    for seed in range(5):
        P = random_poset_action(Lcg(seed), 3, 3)
        assert P.poset.element_count == 9
        assert all(len(set(orbit)) == 3 for orbit in P.orbits())


def test_poset_product_needs_matching_groups(square_poset):
    with pytest.raises(PMismatch):
        poset_action_product(square_poset, face_poset_action(e_k_g(3, 0)))
    product = poset_action_product(square_poset, square_poset)
    assert product.poset.element_count == 64


def test_compatibility_hypergraph_range(square_poset):
    with pytest.raises(BadR):
        compatibility_hypergraph(square_poset, 3)
    with pytest.raises(BadR):
        compatibility_hypergraph(square_poset, 1)
    C = compatibility_hypergraph(square_poset, 2)
    assert C.n == 8
    assert C.is_uniform(2)


def test_poset_coloring_bound_and_equivariant_map(square_poset):
    bound = poset_coloring_bound(square_poset, 2)
    assert bound == 3
    C = compatibility_hypergraph(square_poset, 2)
    chi, coloring = optimal_hyper_coloring(C)
    assert bound <= chi
    report = coloring_to_equivariant_map(square_poset, coloring, 2)
    assert report.simplicial and report.equivariant
    assert report.hind_order_complex == 1
    assert report.passed


def test_equivariant_map_for_odd_p_and_r3():
    P = face_poset_action(e_k_g(3, 1))
    C = compatibility_hypergraph(P, 3)
    chi, coloring = optimal_hyper_coloring(C)
    assert poset_coloring_bound(P, 3) <= chi
    assert coloring_to_equivariant_map(P, coloring, 3).passed


def test_improper_coloring_is_rejected(square_poset):
    with pytest.raises(NotProperColoring) as excinfo:
        coloring_to_equivariant_map(square_poset, [0] * 8, 2)
    assert excinfo.value.witness is not None
    with pytest.raises(NotProperColoring):
        coloring_to_equivariant_map(square_poset, [0, 1], 2)


def test_edge_complex_homomorphism(k3_edges):
    report = edge_complex_homomorphism(k3_edges, 2)
    assert report.verified
    assert len(report.psi) == 12
    assert edge_complex_homomorphism(kneser_hypergraph(4, 1, 3), 3).verified


def test_product_compatibility_inclusion(square_poset):
    assert product_compatibility_inclusion(square_poset, square_poset, 2)
    with pytest.raises(PMismatch):
        product_compatibility_inclusion(square_poset, face_poset_action(e_k_g(3, 0)), 2)


def test_product_chromatic_bound(k3_edges, k4_edges):
    assert product_chromatic_bound(k3_edges, k3_edges, 2) == 3
    assert product_chromatic_bound(k4_edges, k4_edges, 2) == ConditionFailed(2, 3)


def test_certified_product_bound(k3_edges, k4_edges):
    f = find_coindex_certificate(b_edge_complex(k4_edges, 2), 1)
    assert f is not None
    assert certified_product_bound(k4_edges, k4_edges, 2, [f, f]) == 3
    assert find_coindex_certificate(b_edge_complex(k3_edges, 2), 1) is None
    with pytest.raises(BadCertificate):
        certified_product_bound(k4_edges, k4_edges, 2, [f])
    with pytest.raises(BadCertificate):
        certified_product_bound(k3_edges, k4_edges, 2, [f, f])
