from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from _oracles import common_neighbour_counts
from suborbit5.atlas.table3 import build_table3_row
from suborbit5.errors import UnsupportedError
from suborbit5.graphs import (
    automorphism_group,
    complete_graph,
    find_isomorphism,
    graph_aut_order_small,
    identify_graph,
    intersection_numbers,
    kneser_graph,
    srg_parameters,
)
from suborbit5.orbital import Digraph


def to_nx(g: Digraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges().tolist())
    return G


def nx_aut_count(g: Digraph) -> int:
    G = to_nx(g)
    return sum(1 for _ in GraphMatcher(G, G).isomorphisms_iter())


def from_nx(G: nx.Graph) -> Digraph:
    arcs = [(u, v) for u, v in G.edges()] + [(v, u) for u, v in G.edges()]
    return Digraph.from_arcs(G.number_of_nodes(), arcs)


@pytest.fixture(scope="module")
def clebsch():
    return build_table3_row(1).graph


@pytest.fixture(scope="module")
def sylvester():
    return build_table3_row(2).graph


def test_clebsch(clebsch):
    assert identify_graph(clebsch).srg == (16, 5, 0, 2)
    lam, mu = common_neighbour_counts({frozenset(e) for e in clebsch.edges().tolist()}, 16)
    assert lam == {0} and mu == {2}
    assert graph_aut_order_small(clebsch) == 1920 == nx_aut_count(clebsch)


def test_sylvester(sylvester):
    ident = identify_graph(sylvester)
    assert ident.n == 36 and ident.intersection_array == ((5, 4, 2), (1, 1, 4))
    assert nx.diameter(to_nx(sylvester)) == 3
    assert graph_aut_order_small(sylvester) == 1440 == nx_aut_count(sylvester)


def test_complete_graph_k6():
    k6 = build_table3_row(9, 3).graph
    assert identify_graph(k6).complete
    assert graph_aut_order_small(k6) == 720
    assert k6.same_arcs(complete_graph(6))


def test_kneser_identification():
    g = build_table3_row(4).graph
    ident = identify_graph(g)
    assert ident.kneser_9_4
    assert nx.is_isomorphic(to_nx(g), nx.kneser_graph(9, 4))
    assert graph_aut_order_small(g) == 362_880


def test_petersen_against_networkx():
    pet = from_nx(nx.petersen_graph())
    assert srg_parameters(pet) == (10, 3, 0, 1)
    assert graph_aut_order_small(pet) == 120
    assert find_isomorphism(pet, kneser_graph(5, 2)) is not None


def test_non_regular_input_rejected():
    with pytest.raises(ValueError):
        identify_graph(from_nx(nx.path_graph(4)))


def test_aut_vertex_bound():
    with pytest.raises(UnsupportedError):
        graph_aut_order_small(from_nx(nx.cycle_graph(200)))


def test_find_isomorphism_maps_edges():
    a = from_nx(nx.petersen_graph())
    perm = np.random.default_rng(0).permutation(10)
    b = Digraph(10, perm[a.arcs])
    iso = find_isomorphism(a, b)
    assert iso is not None
    assert Digraph(10, iso[a.arcs]).same_arcs(b)
    assert find_isomorphism(a, from_nx(nx.circulant_graph(10, [1, 2]).subgraph(range(10)).copy())) is None


@settings(max_examples=25, deadline=None)
@given(st.integers(5, 14), st.sets(st.integers(1, 6), min_size=1, max_size=3))
def test_circulant_aut_order_matches_networkx(n, jumps):
    jumps = sorted(j for j in jumps if j < n)
    if not jumps:
        return
    g = from_nx(nx.circulant_graph(n, jumps))
    vals = g.out_valencies()
    if vals.size == 0 or vals.min() == 0:
        return
    assert graph_aut_order_small(g) == nx_aut_count(g)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_random_regular_aut_order(seed):
    G = nx.random_regular_graph(3, 12, seed=seed)
    g = from_nx(G)
    aut = automorphism_group(g)
    for x in aut.generators:
        assert g.is_preserved_by(x)
    assert graph_aut_order_small(g) == nx_aut_count(g)


def test_intersection_arrays_agree_across_bases(sylvester):
    nbrs = sylvester.neighbours()
    arrays = {intersection_numbers(nbrs, r) for r in range(sylvester.n)}
    assert len(arrays) == 1
