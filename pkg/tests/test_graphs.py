import itertools

import pytest

import config
from helpers.actions import is_equivariant_map
from helpers.complexes import is_simplicial_map
from helpers.corpus import Lcg, random_graph
from helpers.errors import BadParams, CapExceeded, EmptyComplex
from helpers.graphs import (
    Graph,
    box_complex,
    box_complex_map,
    categorical_product,
    chromatic_number,
    complete,
    cycle,
    homological_chromatic_number,
    is_homomorphism,
    kneser_graph,
    optimal_coloring,
    petersen,
    verify_hom_hedetniemi,
    verify_product_chromatic,
)
from helpers.index import hind


def test_builders_validate_parameters():
    with pytest.raises(BadParams):
        complete(0)
    with pytest.raises(BadParams):
        cycle(2)
    with pytest.raises(BadParams):
        kneser_graph(3, 0)
    with pytest.raises(BadParams):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(BadParams):
        Graph(3, frozenset({(1, 0)}))


def test_from_edges_normalises_pairs():
    G = Graph.from_edges(3, [(2, 0), (0, 2), (1, 2)])
    assert G.edges == frozenset({(0, 2), (1, 2)})
    assert G.has_edge(2, 1)
    assert G.adjacency[2] == {0, 1}


def test_petersen_is_kneser_5_2():
    P = petersen()
    assert P.n == 10
    assert len(P.edges) == 15
    assert all(len(P.adjacency[v]) == 3 for v in range(10))


def test_categorical_product_of_edges():
    G = categorical_product(complete(2), complete(2))
    assert G.n == 4
    assert G.edges == frozenset({(0, 3), (1, 2)})


@pytest.mark.parametrize("graph,chi", [
    (complete(1), 1),
    (complete(4), 4),
    (cycle(5), 3),
    (cycle(6), 2),
    (petersen(), 3),
    (Graph(3, frozenset()), 1),
    (Graph(0, frozenset()), 0),
])
def test_chromatic_numbers(graph, chi):
    k, coloring = optimal_coloring(graph)
    assert k == chi
    if k:
        assert is_homomorphism(graph, complete(k), coloring)


def test_vertex_cap():
    with pytest.raises(CapExceeded) as excinfo:
        chromatic_number(cycle(30))
    assert excinfo.value.cap_name == "vertex_cap"


def test_box_complex_of_an_edge_is_two_points_apart():
    B = box_complex(complete(2))
    assert B.complex.f_vector() == [4, 2]
    assert B.complex.labels == [(0, 1), (0, 2), (1, 1), (1, 2)]
    assert hind(B).hind == 0
    with pytest.raises(EmptyComplex):
        box_complex(Graph(2, frozenset()))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_homological_chromatic_number_of_complete_graphs(n):
    assert homological_chromatic_number(complete(n)) == n


def test_homological_chromatic_number_of_odd_cycle(c5):
    assert homological_chromatic_number(c5) == 3


@pytest.mark.slow
def test_petersen_bound_is_tight():
    assert homological_chromatic_number(petersen()) == 3
    assert chromatic_number(petersen()) == 3


def test_box_complex_map_from_homomorphism(k3):
    source, target, f = box_complex_map(k3, complete(4), (0, 1, 2))
    assert is_simplicial_map(f)
    assert is_equivariant_map(f, source, target)
    with pytest.raises(BadParams):
        box_complex_map(k3, complete(4), (0, 0, 1))


def test_hom_hedetniemi_for_small_complete_graphs():
    report = verify_hom_hedetniemi(complete(2), complete(3))
    assert report.h_chi_1 == 2
    assert report.h_chi_2 == 3
    assert report.h_chi_product == 2
    assert not report.box_skipped
    assert report.box_product_hind == 0
    assert report.passed


def test_product_chromatic_bound(k3, c5):
    chi, bound, holds = verify_product_chromatic(k3, c5)
    assert (chi, bound, holds) == (3, 3, True)


def _brute_force_chromatic(H):
    if H.n == 0:
        return 0
    for k in range(1, H.n + 1):
        # vertex 0 takes colour 0
        for rest in itertools.product(range(k), repeat=H.n - 1):
            colors = (0,) + rest
            if all(colors[u] != colors[v] for u, v in H.edges):
                return k


@pytest.mark.parametrize("seed", range(12))
def test_chromatic_number_matches_brute_force(seed):
    rng = Lcg(seed)
    H = random_graph(rng, rng.randint(1, 7))
    assert chromatic_number(H) == _brute_force_chromatic(H)
