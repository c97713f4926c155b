from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import mat_closure, rank_mod_p
from suborbit5.atlas.spin2s5 import build_2s5minus, locate_subrep
from suborbit5.atlas.symplectic import hat_subgroup
from suborbit5.ffalg import (
    Field,
    MatRep,
    Matrix,
    centralizer_algebra,
    chop,
    companion,
    deleted_permutation_matrix,
    fixed_space,
    galois_descent,
    intertwiners,
    invariant_forms,
    is_alternating,
    is_irreducible,
    phi5_companion,
    spin,
    sym5_power,
)
from suborbit5.perm import Permutation, alternating_group, symmetric_group

PRIMES = (2, 3, 5, 7, 11, 13)


def matrices(p, rows, cols):
    return st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def deleted_module(group, p):
    F = Field(p)
    return MatRep(F, [deleted_permutation_matrix(F, g.images) for g in group.generators])


def random_rep(rng, p, dim, count=2):
    F = Field(p)
    gens = []
    while len(gens) < count:
        m = Matrix.from_rows(F, [[rng.randrange(p) for _ in range(dim)] for _ in range(dim)])
        if m.is_invertible():
            gens.append(m)
    return MatRep(F, gens)


# ---------------------------------------------------------------------------
# fields and matrices


@pytest.mark.parametrize("p", (3, 7, 11, 13))
def test_extension_field_axioms(p):
    E = Field(p, 2)
    rng = random.Random(p)
    for _ in range(50):
        a, b, c = (rng.randrange(E.q) for _ in range(3))
        assert E.mul(a, E.add(b, c)) == E.add(E.mul(a, b), E.mul(a, c))
        if a:
            assert E.mul(a, E.inv(a)) == 1
        assert E.frob(E.frob(a)) == a
        assert E.in_prime_field(E.norm(a))


def test_gf4_unsupported():
    with pytest.raises(ValueError):
        Field(2, 2)


def test_nullspace_trivial_cases():
    F = Field(5)
    assert Matrix.zeros(F, 3).nullspace().rows == 3
    assert Matrix.identity(F, 3).nullspace().rows == 0


def test_companion_eigenvalue_nullity():
    F = Field(7)
    C = companion(F, [1, 1, 1])  # x^2 + x + 1, and 2^2 + 2 + 1 = 7
    assert (C - Matrix.scalar(F, 2, 2)).nullspace().rows == 1
    assert (C - Matrix.scalar(F, 2, 3)).nullspace().rows == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(st.just(p), matrices(p, 4, 6))))
def test_rank_nullity_against_elimination(case):
    p, rows = case
    A = Matrix.from_rows(Field(p), rows)
    N = A.nullspace()
    assert N.rows == 6 - rank_mod_p(rows, p)
    assert (A @ N.T).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from((3, 5, 7)).flatmap(lambda p: st.tuples(st.just(p), matrices(p, 3, 3))))
def test_inverse_and_det(case):
    p, rows = case
    A = Matrix.from_rows(Field(p), rows)
    if A.is_invertible():
        assert (A @ A.inverse()).is_identity()
        assert A.det() != 0
    else:
        assert A.det() == 0


# ---------------------------------------------------------------------------
# fixed spaces and spinning


def test_fixed_space_trivial_rep():
    F = Field(7)
    rep = MatRep(F, [Matrix.identity(F, 4)])
    assert fixed_space(rep).rows == 4


def test_fixed_space_of_a4_and_a5():
    A5 = alternating_group(5)
    # A4 fixing the last point
    A4 = [Permutation.from_cycles(5, [0, 1, 2]), Permutation.from_cycles(5, [1, 2, 3])]
    F = Field(7)
    rep4 = MatRep(F, [deleted_permutation_matrix(F, g.images) for g in A4])
    fix = fixed_space(rep4)
    assert fix.rows == 1
    assert fix.to_rows() == [[1, 1, 1, 1]]  # e1+e2+e3+e4-4e5
    assert fixed_space(deleted_module(A5, 7)).rows == 0
    assert spin(fix, rep4).rows == 1


def test_spin_trivial_cases():
    rep = deleted_module(symmetric_group(5), 7)
    F = rep.field
    assert spin(Matrix.zeros(F, 1, 4), rep).rows == 0
    assert spin(Matrix.from_rows(F, [[1, 0, 3, 0]]), rep).rows == 4


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_spin_is_a_closure_operator(seed):
    rng = random.Random(seed)
    p = rng.choice((2, 3, 5))
    G = symmetric_group(4)
    F = Field(p)
    perm_rep = MatRep(F, [Matrix.from_rows(F, [[int(g.images[j] == i) for j in range(4)] for i in range(4)]) for g in G.generators])
    u = Matrix.from_rows(F, [[rng.randrange(p) for _ in range(4)]])
    v = Matrix.from_rows(F, [[rng.randrange(p) for _ in range(4)]])
    su = spin(u, perm_rep)
    both = spin(Matrix.vstack(F, [u, v], 4), perm_rep)
    # extensive, idempotent, monotone
    assert Matrix.vstack(F, [su, u], 4).rank() == su.rank()
    assert spin(su, perm_rep).to_rows() == su.to_rows()
    assert Matrix.vstack(F, [both, su], 4).rank() == both.rank()


# ---------------------------------------------------------------------------
# chopping and centralizers


def test_chop_deleted_module_of_s5():
    parts = chop(deleted_module(symmetric_group(5), 7))
    assert [c.dim for c in parts] == [4]


def test_chop_two_trivial():
    F = Field(3)
    parts = chop(MatRep(F, [Matrix.identity(F, 2)]))
    assert sorted(c.dim for c in parts) == [1, 1]


def test_chop_2s4_in_sp6_7():
    hat = hat_subgroup(7, "row12")
    assert sorted(c.dim for c in chop(hat.rep)) == [2, 4]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_chop_dimensions_and_rechop(seed):
    rng = random.Random(seed)
    rep = random_rep(rng, rng.choice((2, 3, 5)), rng.randint(2, 5), count=rng.randint(1, 2))
    parts = chop(rep, seed)
    assert sum(c.dim for c in parts) == rep.dim
    for c in parts:
        assert is_irreducible(c.rep, seed + 1)
        assert [d.dim for d in chop(c.rep, seed + 2)] == [c.dim]


def test_centralizer_algebra_dimensions():
    spin7 = build_2s5minus(7)
    assert len(centralizer_algebra(spin7.rep)) == 1
    assert len(centralizer_algebra(hat_subgroup(7, "lemma61").rep)) == 3
    F = Field(5)
    assert len(centralizer_algebra(MatRep(F, [Matrix.identity(F, 3)]))) == 9
    assert len(centralizer_algebra(deleted_module(symmetric_group(5), 7))) == 1


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_centralizer_elements_commute(seed):
    rng = random.Random(seed)
    rep = random_rep(rng, rng.choice((3, 5)), 3)
    for X in centralizer_algebra(rep):
        assert all(X @ g == g @ X for g in rep.gens)


# ---------------------------------------------------------------------------
# forms


def test_invariant_forms():
    spin7 = build_2s5minus(7)
    forms = invariant_forms(spin7.rep)
    assert len(forms) == 1
    assert is_alternating(forms[0]) and forms[0].is_invertible()
    F = Field(5)
    assert len(invariant_forms(MatRep(F, [Matrix.identity(F, 2)]))) == 4
    (S,) = invariant_forms(deleted_module(alternating_group(5), 7))
    assert S == S.T and S.is_invertible()


@pytest.mark.parametrize("p", (7, 13))
def test_form_preserved_by_random_words(p):
    spin_group = build_2s5minus(p)
    J = spin_group.form
    rng = random.Random(p)
    for _ in range(100):
        g = spin_group.rep.random_word(rng, rng.randint(1, 12))
        assert g.T @ J @ g == J


# ---------------------------------------------------------------------------
# symmetric powers and descent


def test_sym5_power_diagonal():
    F = Field(11)
    t = 2
    rep = MatRep(F, [Matrix.diagonal(F, [t, F.inv(t)])])
    six = sym5_power(rep).gens[0]
    expected = sorted(F.power(t, k) if k >= 0 else F.power(F.inv(t), -k) for k in (5, 3, 1, -1, -3, -5))
    assert sorted(np.diag(six.planes[0]).tolist()) == expected
    assert sym5_power(MatRep(F, [Matrix.identity(F, 2)])).gens[0].is_identity()


def _sl25_in_gf11():
    """SL(2,5) inside SL(2,11): a pair of trace-0 and trace-1 matrices generating 120 elements."""
    p = 11
    sl = [m for m in itertools.product(range(p), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % p == 1]
    fours = [m for m in sl if (m[0] + m[3]) % p == 0][:6]
    sixes = [m for m in sl if (m[0] + m[3]) % p == 1]
    for a in fours:
        for b in sixes:
            A, B = [[a[0], a[1]], [a[2], a[3]]], [[b[0], b[1]], [b[2], b[3]]]
            try:
                if len(mat_closure([A, B], p, cap=130)) == 120:
                    return A, B
            except RuntimeError:
                continue
    raise AssertionError("no SL(2,5) found")


def test_sym5_power_of_sl25():
    A, B = _sl25_in_gf11()
    F = Field(11)
    six = sym5_power(MatRep(F, [Matrix.from_rows(F, A), Matrix.from_rows(F, B)]))
    gens = [g.to_rows() for g in six.gens]
    assert len(mat_closure(gens, 11)) == 120
    assert any(is_alternating(J) and J.is_invertible() for J in invariant_forms(six))


def test_descent_keeps_traces_and_forms():
    spin13 = build_2s5minus(13)
    assert spin13.field.e == 2
    rep, _ = locate_subrep(spin13, 120)
    down = galois_descent(rep)
    assert down.field == Field(13) and down.dim == 6
    assert any(is_alternating(J) and J.is_invertible() for J in invariant_forms(down))
    rng = random.Random(0)
    E = rep.field
    for _ in range(100):
        idx = [rng.randrange(len(rep.gens)) for _ in range(rng.randint(1, 10))]
        up, low = rep.identity(), down.identity()
        for i in idx:
            up, low = up @ rep.gens[i], low @ down.gens[i]
        assert E.split(up.trace()) == (low.trace(), 0)
    # extending back gives a module isomorphic to the original
    back = down.over(E)
    T = intertwiners(back, rep)
    assert len(T) == 1 and T[0].is_invertible()


def test_descent_of_prime_field_rep_is_unchanged():
    rep = deleted_module(symmetric_group(5), 7)
    assert galois_descent(rep) is rep


def test_descent_refuses_irrational_traces():
    # 2-dimensional SL(2,5) over GF(49): traces involve the golden ratio, and 5 is a non-square mod 7
    spin7 = build_2s5minus(7)
    E = spin7.field
    c = next(x for x in E.elements() if E.add(E.mul(x, x), E.add(x, E.neg(1))) == 0)
    assert not E.in_prime_field(c)
    m = Matrix.from_rows(E, [[0, E.neg(1)], [1, c]])
    with pytest.raises(ValueError):
        galois_descent(MatRep(E, [m, Matrix.from_rows(E, [[0, E.neg(1)], [1, 0]])]))


@pytest.mark.parametrize("p, dim", [(11, 1), (19, 2), (7, 4), (3, 4), (31, 1), (29, 2)])
def test_phi5_companion(p, dim):
    m = phi5_companion(p, dim)
    assert m.order() == 5
    assert fixed_space(MatRep(m.field, [m])).rows == 0
    if dim == 4:
        assert m.det() == 1  # constant term of x^4+x^3+x^2+x+1


def test_phi5_value_at_11():
    assert phi5_companion(11, 1).to_rows() in ([[3]], [[4]], [[5]], [[9]])


@pytest.mark.parametrize("p, dim", [(5, 1), (11, 2), (7, 1)])
def test_phi5_bad_arguments(p, dim):
    with pytest.raises(ValueError):
        phi5_companion(p, dim)
