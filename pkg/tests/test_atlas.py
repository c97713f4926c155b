from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import has_nontrivial_block
from suborbit5.atlas import maximal, projective
from suborbit5.atlas.affine import affine_group
from suborbit5.atlas.catalogue import ISOMORPHIC, REFERENCE, reference_fingerprint
from suborbit5.atlas.spin2s5 import build_2s5minus, locate_subrep
from suborbit5.atlas.symplectic import TARGETS, hat_subgroup
from suborbit5.atlas.table3 import build_table3_row, table3_condition
from suborbit5.atlas.tables import (
    TABLE2_DIM,
    build_table1_row,
    build_table2_row,
    bundled_sz8,
    load_generators,
    table2_condition,
    table2_degree,
    valid_primes,
)
from suborbit5.errors import ResourceError, UnsupportedError
from suborbit5.ffalg import Field, MatRep, Matrix, chop, is_alternating, phi5_companion
from suborbit5.orbital import suborbits
from suborbit5.perm import fingerprint, is_primitive, point_stabilizer

TABLE1 = {1: 6, 2: 6, 3: 36, 4: 36, 5: 36, 6: 66, 7: 126, 8: 126, 9: 171}
TABLE1_STAB_ORDER = {1: 10, 2: 20, 3: 20, 4: 20, 5: 40, 6: 20, 7: 1440, 8: 2880, 9: 20}


# ---------------------------------------------------------------------------
# sporadic rows


@pytest.mark.parametrize("row", sorted(TABLE1))
def test_table1_rows(row):
    spec = build_table1_row(row)
    assert spec.degree == TABLE1[row]
    assert spec.stabilizer.order == TABLE1_STAB_ORDER[row]
    assert point_stabilizer(spec.group, 0).order == TABLE1_STAB_ORDER[row]
    assert spec.group.is_transitive() and is_primitive(spec.group)[0]
    assert 5 in suborbits(spec.group).lengths


def test_table1_row1_stabilizer_is_d5():
    spec = build_table1_row(1)
    assert spec.order == 60
    assert fingerprint(spec.stabilizer) == reference_fingerprint("D5")


def test_table1_row9_description():
    assert build_table1_row(9).describe() == "degree 171, order 3420, stabilizer D10(20)"


@pytest.mark.parametrize("row", (11, 12, 13))
def test_table1_refused_rows(row):
    with pytest.raises(UnsupportedError):
        build_table1_row(row)


def test_sz8_bundled_file():
    G = load_generators(bundled_sz8()).freeze()
    assert G.order == 29_120  # q^2 (q^2+1) (q-1) at q = 8
    spec = build_table1_row(10)
    assert spec.degree == 1456


def test_generator_file_of_a_five_cycle(tmp_path):
    path = tmp_path / "c5.txt"
    path.write_text("degree: 5\ngens: 1\n2 3 4 5 1\n")
    assert load_generators(path).freeze().order == 5


# ---------------------------------------------------------------------------
# infinite families


def test_table2_row1_p11():
    spec = build_table2_row(1, 11)
    assert spec.degree == 11 and spec.order == 55
    assert suborbits(spec.group).lengths == [1, 5, 5]


def test_table2_row7_p3():
    spec = build_table2_row(7, 3)
    assert spec.degree == 81 and spec.order == 81 * 60


def test_table2_row9_p31():
    spec = build_table2_row(9, 31)
    assert spec.degree == 248 == 29_760 // 120


def test_table2_congruence_violation():
    with pytest.raises(ValueError):
        build_table2_row(1, 7)


def test_table2_bound():
    with pytest.raises(ResourceError):
        build_table2_row(3, 13, bound=1000)


@pytest.mark.parametrize("row", range(1, 9))
def test_valid_primes_satisfy_conditions(row):
    primes = valid_primes(row, 50_000)
    assert primes
    for p in primes:
        assert table2_condition(row, p)
        assert table2_degree(row, p) == p ** TABLE2_DIM[row] <= 50_000


def _irreducible(lin: MatRep) -> bool:
    return len(chop(lin)) == 1


@pytest.mark.parametrize("row, p", [(1, 11), (2, 19), (3, 2), (3, 3), (3, 7), (4, 11), (4, 19), (5, 2), (5, 3), (6, 2), (6, 3), (6, 7), (7, 3), (8, 2), (8, 3)])
def test_affine_irreducible_iff_primitive(row, p):
    aff = build_table2_row(row, p).affine
    assert aff.degree <= 2500
    prim = is_primitive(aff.group)[0]
    assert _irreducible(aff.linear) == prim is True
    if aff.degree <= 16:
        assert not has_nontrivial_block([g.images for g in aff.group.generators], aff.degree)


@pytest.mark.parametrize("p", (11, 31))
def test_reducible_linear_part_is_imprimitive(p):
    F = Field(p)
    z = phi5_companion(p, 1)[0, 0]
    lin = MatRep(F, [Matrix.diagonal(F, [z, z])])
    aff = affine_group(lin)
    assert not _irreducible(lin)
    assert not is_primitive(aff.group)[0]


# ---------------------------------------------------------------------------
# reference catalogue


def test_catalogue_fingerprints_are_distinct():
    same = {frozenset(pair) for pair in ISOMORPHIC}
    names = sorted(REFERENCE)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if frozenset((a, b)) not in same:
                assert reference_fingerprint(a) != reference_fingerprint(b), (a, b)


# ---------------------------------------------------------------------------
# 2.S5^- and its subgroups


@pytest.mark.parametrize("p", (7, 13, 17, 23))
def test_2s5minus(p):
    g = build_2s5minus(p)
    assert len(g.elements) == 240
    assert g.field.e == (1 if p % 8 == 1 else 2)
    J = g.form
    assert is_alternating(J) and J.is_invertible()
    assert all(x.T @ J @ x == J for x in g.elements)
    rep, members = locate_subrep(g, 120)
    assert len(members) == 120


def test_2s5minus_order_statistics_do_not_depend_on_p():
    stats = {p: Counter(x.order(limit=240) for x in build_2s5minus(p).elements) for p in (7, 13, 17, 23, 31)}
    first = stats[7]
    assert all(s == first for s in stats.values())
    # every involution of S5 lifts to an element of order 4, so -I is the only involution
    assert first[2] == 1


@pytest.mark.parametrize("target, gens", [(48, None), (40, (10, 8)), (24, None), (120, None)])
def test_locate_subrep(target, gens):
    g = build_2s5minus(7)
    rep, members = locate_subrep(g, target)
    assert len(members) == target
    if gens:
        assert sorted(m.order(limit=240) for m in rep.gens) == sorted(gens)


@pytest.mark.parametrize("key", sorted(TARGETS))
def test_hat_subgroups_over_prime_field(key):
    t = TARGETS[key]
    p = next(q for q in range(3, 60) if t.condition(q))
    hat = hat_subgroup(p, key)
    assert hat.rep.field == Field(p)
    assert len(hat.elements) == t.order
    J = hat.form
    assert is_alternating(J)
    assert all(x.T @ J @ x == J for x in hat.elements)


def test_hat_subgroup_rejects_bad_prime():
    with pytest.raises(ValueError):
        hat_subgroup(11, "lemma61")


# ---------------------------------------------------------------------------
# graph rows and maximal families


def test_table3_conditions():
    assert table3_condition(8, 31) and table3_condition(8, 41) and not table3_condition(8, 29)
    assert table3_condition(9, 3) and not table3_condition(9, 11)


@pytest.mark.parametrize("row", (6, 7, 10, 11))
def test_table3_refused_rows(row):
    with pytest.raises(UnsupportedError):
        build_table3_row(row)


def test_table3_row1_is_16_vertices():
    t3 = build_table3_row(1)
    assert t3.graph.n == 16 and t3.edges == 40 and t3.graph.symmetric


@pytest.mark.parametrize("key, value, degree", [("psl2-a5", 29, 203), ("psl2-a5", 41, 574), ("psl2sq-a5", 3, 6), ("a7-s5", None, 21), ("psl3-4-s5", None, 336)])
def test_maximal_actions(key, value, degree):
    spec = maximal.build_maximal_action(key, value)
    assert spec.degree == degree


def test_maximal_condition_enforced():
    with pytest.raises(ValueError):
        maximal.build_maximal_action("psl2-a5", 13)
    with pytest.raises(UnsupportedError):
        maximal.family("nope")


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(maximal.FAMILIES)), st.integers(2, 60))
def test_family_labels_name_the_group(key, value):
    fam = maximal.family(key)
    label = fam.label(value if fam.param else None)
    assert "^(" not in label and label


def test_psl3_4_graph_field_extension():
    import numpy as np

    G = projective.psl3_4_graph_field()
    E = G.element_array()
    inner = E[E[:, 0] < 21]
    assert len(E) == 40320 and len(inner) == 20160
    # the inner part preserves the points, the outer part swaps points and lines
    assert (inner[:, :21] < 21).all() and (E[E[:, 0] >= 21][:, :21] >= 21).all()
    # centralizer of the outer involution in PSL(3,4) is PSU(3,2) of order 72
    sigma = G.generators[-1].array
    assert sum(bool((g[sigma] == sigma[g]).all()) for g in inner) == 72
    assert np.array_equal(sigma[sigma], np.arange(42))
