from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import pair_orbits
from suborbit5.atlas import maximal
from suborbit5.atlas.tables import build_table1_row, build_table2_row, psl2_on_a5
from suborbit5.errors import PreconditionError
from suborbit5.orbital import (
    Digraph,
    correspondence_check,
    enumerate_digraphs,
    is_self_paired,
    norm_quotient_order_via_suborbits,
    orbital_digraph,
    orbital_digraph_bruteforce,
    paired_representative,
    suborbits,
    underlying_graph,
)
from suborbit5.perm import PermGroup, Permutation, symmetric_group

LEMMA_GROUPS = {
    "A5-6": lambda: build_table1_row(1).group,
    "S5-6": lambda: build_table1_row(2).group,
    "PGL(2,11)-66": lambda: build_table1_row(6).group,
    "PSL(2,29)-A5": lambda: psl2_on_a5(29).group,
    "PSL(2,31)-A5": lambda: psl2_on_a5(31).group,
}


def brute_quotient(G, v: int, d: int) -> tuple[int, int]:
    """|N_G(H)/H| for H = G_{v,w} with w in a length-d suborbit, by scanning every element.

    Also returns the number of cosets Hg in N/H with g^2 in H.
    """
    E = G.element_array(limit=40_000)
    Einv = np.argsort(E, axis=1)
    n = G.degree
    lens = {}
    stab = E[E[:, v] == v]
    for w in range(n):
        lens[w] = len(set(stab[:, w].tolist()))
    w = next(x for x in range(n) if lens[x] == d)
    H = stab[stab[:, w] == w]
    hset = {h.tobytes() for h in H}
    normal = []
    for g, gi in zip(E, Einv):
        # right action: x^(g^-1 h g) = g[h[gi[x]]]
        if all(g[h[gi]].tobytes() in hset for h in H):
            normal.append(g)
    squares = sum(g[g].tobytes() in hset for g in normal)
    return len(normal) // len(H), squares // len(H)


# ---------------------------------------------------------------------------
# suborbits


def test_suborbit_examples():
    assert suborbits(build_table1_row(1).group).lengths == [1, 5]
    assert 5 in suborbits(build_table1_row(6).group).lengths
    assert 5 not in suborbits(psl2_on_a5(29).group).lengths


def test_suborbits_of_intransitive_group():
    G = PermGroup(4, [Permutation.from_cycles(4, [0, 1])]).freeze()
    with pytest.raises(ValueError):
        suborbits(G)


# ---------------------------------------------------------------------------
# orbital digraphs


def test_orbital_digraph_examples():
    dg = orbital_digraph(symmetric_group(3), (0, 1))
    assert dg.arc_count == 6
    k6 = orbital_digraph(build_table1_row(1).group, (0, suborbits(build_table1_row(1).group).of_length(5)[0]))
    assert k6.arc_count == 30 and k6.symmetric


def test_orbital_digraph_rejects_loops():
    with pytest.raises(ValueError):
        orbital_digraph(symmetric_group(3), (1, 1))


@pytest.mark.parametrize("name", ["A5-6", "S5-6", "PGL(2,11)-66"])
def test_orbital_digraphs_match_pair_orbits(name):
    G = LEMMA_GROUPS[name]()
    elems = [tuple(r) for r in G.element_array().tolist()]
    labels = pair_orbits(elems, G.degree)
    for w in range(1, G.degree):
        dg = orbital_digraph(G, (0, w))
        want = {pair for pair, lab in labels.items() if lab == labels[(0, w)]}
        assert {tuple(a) for a in dg.arcs.tolist()} == want


def test_pgl211_graph_is_5_valent_and_symmetric():
    G = build_table1_row(6).group
    (dg,) = enumerate_digraphs(G, 0, 5)
    assert dg.symmetric and set(dg.out_valencies().tolist()) == {5} and dg.n == 66


def test_self_pairing_examples():
    S5 = symmetric_group(5)
    assert is_self_paired(S5, (0, 3))
    frob = build_table2_row(1, 11).group
    w = suborbits(frob).of_length(5)[0]
    assert not is_self_paired(frob, (0, w))
    alt9 = build_table1_row(7).group
    assert is_self_paired(alt9, (0, suborbits(alt9).of_length(5)[0]))


def test_underlying_graph():
    single = Digraph.from_arcs(2, [(0, 1)])
    assert underlying_graph(single).arc_count == 2
    k6 = enumerate_digraphs(build_table1_row(1).group, 0, 5)[0]
    assert underlying_graph(k6).same_arcs(k6)
    frob = build_table2_row(1, 11).group
    a, b = enumerate_digraphs(frob, 0, 5)
    ua, ub = underlying_graph(a), underlying_graph(b)
    assert ua.same_arcs(ub)
    assert set(ua.out_valencies().tolist()) == {10}


def test_no_length_d_suborbit_gives_empty_list():
    assert enumerate_digraphs(symmetric_group(5), 0, 5) == []


@st.composite
def transitive_groups(draw):
    n = draw(st.integers(4, 9))
    cycle = Permutation(list(range(1, n)) + [0])
    extra = draw(st.lists(st.permutations(range(n)).map(Permutation), max_size=2))
    return PermGroup(n, [cycle, *extra]).freeze()


@settings(max_examples=50, deadline=None)
@given(transitive_groups(), st.data())
def test_orbital_properties(G, data):
    w = data.draw(st.integers(1, G.degree - 1))
    dg = orbital_digraph(G, (0, w))
    vals = dg.out_valencies()
    # arc-transitive: constant out-valency, arc count = degree * valency
    assert vals.min() == vals.max() and dg.arc_count == G.degree * int(vals[0])
    assert dg.same_arcs(orbital_digraph_bruteforce(G, (0, w)))
    # pairing is an involution preserving length; self-paired exactly at fixed points
    lengths = dict(suborbits(G).suborbits)
    rep_of = {}
    for r in lengths:
        if r == 0:
            continue
        for x in orbital_digraph(G, (0, r)).neighbours()[0].tolist():
            rep_of[x] = r
    u = rep_of[paired_representative(G, (0, w))]
    back = rep_of[paired_representative(G, (0, u))]
    assert back == rep_of[w]
    assert lengths[u] == lengths[rep_of[w]]
    assert is_self_paired(G, (0, w)) == (u == rep_of[w]) == dg.symmetric


# ---------------------------------------------------------------------------
# the coset correspondence


@pytest.mark.parametrize("name", sorted(LEMMA_GROUPS))
def test_lemma_against_brute_force(name):
    G = LEMMA_GROUPS[name]()
    reps = suborbits(G).of_length(5)
    digraphs = enumerate_digraphs(G, 0, 5)
    assert len(digraphs) == len(reps)
    if not reps:
        assert norm_quotient_order_via_suborbits(G, 0, 5) == 1
        return
    quotient, squares = brute_quotient(G, 0, 5)
    assert len(digraphs) == quotient - 1
    assert norm_quotient_order_via_suborbits(G, 0, 5) == quotient
    cc = correspondence_check(G, 0, 5)
    assert cc.count_agrees and cc.pairing_agrees and cc.quotient_order == quotient
    # symmetric digraphs correspond to the nontrivial cosets squaring into H
    assert sum(dg.symmetric for dg in digraphs) == squares - 1


def test_lemma_at_degree_574():
    G = psl2_on_a5(41).group
    cc = correspondence_check(G, 0, 5)
    assert cc.quotient_order == 2 and cc.count_agrees and cc.pairing_agrees


@pytest.mark.parametrize("key, value, expected", [("psl2-a5", 41, 2), ("psl2-a5", 29, 1), ("psl2sq-a5", 3, 2)])
def test_quotient_by_suborbits(key, value, expected):
    spec = maximal.build_maximal_action(key, value)
    assert norm_quotient_order_via_suborbits(spec.group, 0, 5) == expected


def test_hypothesis_failure_is_reported():
    # Z5 wr Z2 on 10 points: G_v = Z5 and its index-5 subgroup is trivial, hence normal
    G = PermGroup(10, [Permutation.from_cycles(10, [0, 1, 2, 3, 4]), Permutation.from_cycles(10, *[[i, i + 5] for i in range(5)])]).freeze()
    with pytest.raises(PreconditionError):
        norm_quotient_order_via_suborbits(G, 0, 5)
