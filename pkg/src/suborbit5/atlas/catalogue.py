"""Reference permutation models of the small groups named in the tables.

Each model is built independently of the table constructions (natural or
explicit actions), so its fingerprint serves as the expected value when a
stabilizer or normalizer is located inside a larger group.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from ..ffalg import Field, Matrix
from ..perm import Fingerprint, PermGroup, Permutation, alternating_group, fingerprint, symmetric_group
from . import projective
from .affine import linear_permutation, translation


def _g(n: int, *cycle_lists) -> list[Permutation]:
    return [Permutation.from_cycles(n, *cycles) for cycles in cycle_lists]


def cyclic(n: int) -> PermGroup:
    return PermGroup(n, _g(n, [list(range(n))]), f"Z{n}").freeze(order=n)


def dihedral(n: int) -> PermGroup:
    """D_n of order 2n (the dihedral group of the n-gon)."""
    refl = [[i, n - i] for i in range(1, (n + 1) // 2) if i != n - i]
    return PermGroup(n, _g(n, [list(range(n))], refl), f"D{n}").freeze(order=2 * n)


def agl15() -> PermGroup:
    return PermGroup(5, _g(5, [[0, 1, 2, 3, 4]], [[1, 2, 4, 3]]), "AGL(1,5)").freeze(order=20)


def agl15_x_z2() -> PermGroup:
    return PermGroup(7, _g(7, [[0, 1, 2, 3, 4]], [[1, 2, 4, 3]], [[5, 6]]), "AGL(1,5)xZ2").freeze(order=40)


def a4_x_a5_2() -> PermGroup:
    gens = _g(9, [[0, 1, 2]], [[1, 2, 3]], [[4, 5, 6]], [[4, 5, 6, 7, 8]], [[0, 1], [4, 5]])
    return PermGroup(9, gens, "(A4xA5):2").freeze(order=1440)


def s4_x_s5() -> PermGroup:
    gens = _g(9, [[0, 1]], [[0, 1, 2, 3]], [[4, 5]], [[4, 5, 6, 7, 8]])
    return PermGroup(9, gens, "S4xS5").freeze(order=2880)


def z2_x_z2() -> PermGroup:
    return PermGroup(4, _g(4, [[0, 1]], [[2, 3]]), "Z2xZ2").freeze(order=4)


def elementary_abelian_2_4_s5() -> PermGroup:
    """Z2^4:S5 on 16 points (deleted permutation module of S5 over GF(2))."""
    from ..ffalg import deleted_permutation_matrix

    F = Field(2)
    lin = [deleted_permutation_matrix(F, [1, 2, 3, 4, 0]), deleted_permutation_matrix(F, [1, 0, 2, 3, 4])]
    gens = [linear_permutation(m, 2, 4) for m in lin] + [translation(2, 4, i) for i in range(4)]
    return PermGroup(16, gens, "2^4:S5").freeze(order=1920)


def _agl24(semilinear: bool) -> PermGroup:
    """AGL(2,4) or AGammaL(2,4) acting on GF(2)^4 = GF(4)^2."""
    from .fq import gfq

    F4 = gfq(4)
    w = F4.primitive
    # GF(4) = {0, 1, w, w^2} as GF(2)-vectors via the table encoding (bits)
    def mat_of(a: int) -> list[list[int]]:
        cols = [F4.mul[a, 1], F4.mul[a, 2]]
        return [[c & 1 for c in cols], [(c >> 1) & 1 for c in cols]]

    def block(m2: list[list[int]]) -> list[list[int]]:
        rows = [[0] * 4 for _ in range(4)]
        for i in range(2):
            for j in range(2):
                blk = mat_of(m2[i][j]) if m2[i][j] else [[0, 0], [0, 0]]
                for r in range(2):
                    for c in range(2):
                        rows[2 * i + r][2 * j + c] = blk[r][c]
        return rows

    F = Field(2)
    lin = [
        Matrix.from_rows(F, block([[w, 0], [0, 1]])),
        Matrix.from_rows(F, block([[1, 1], [0, 1]])),
        Matrix.from_rows(F, block([[0, 1], [1, 0]])),
    ]
    if semilinear:
        frob = [[0, 0], [0, 0]]
        # x -> x^2 on GF(4) in the bit basis (1, basis element 2)
        img1, img2 = F4.mul[1, 1], F4.mul[2, 2]
        frob = [[img1 & 1, img2 & 1], [(img1 >> 1) & 1, (img2 >> 1) & 1]]
        big = [[0] * 4 for _ in range(4)]
        for i in range(2):
            for r in range(2):
                for c in range(2):
                    big[2 * i + r][2 * i + c] = frob[r][c]
        lin.append(Matrix.from_rows(F, big))
    gens = [linear_permutation(m, 2, 4) for m in lin] + [translation(2, 4, i) for i in range(4)]
    order = 16 * 180 * (2 if semilinear else 1)
    return PermGroup(16, gens, "AGammaL(2,4)" if semilinear else "AGL(2,4)").freeze(order=order)


def m11() -> PermGroup:
    gens = _g(11, [list(range(11))], [[2, 6, 10, 7], [3, 9, 4, 5]])
    return PermGroup(11, gens, "M11").freeze(order=7920)


def sl23() -> PermGroup:
    """SL(2,3) = 2.A4 acting on the 8 nonzero vectors of GF(3)^2."""
    F = Field(3)
    pts = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(pts)}

    def perm(m):
        return Permutation([index[((m[0][0] * a + m[0][1] * b) % 3, (m[1][0] * a + m[1][1] * b) % 3)] for a, b in pts])

    del F
    return PermGroup(8, [perm([[1, 1], [0, 1]]), perm([[0, 2], [1, 0]])], "SL(2,3)").freeze(order=24)


REFERENCE: dict[str, Callable[[], PermGroup]] = {
    "1": lambda: PermGroup(1, [], "1").freeze(),
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z5": lambda: cyclic(5),
    "Z2xZ2": z2_x_z2,
    "D5": lambda: dihedral(5),
    "D10": lambda: dihedral(10),
    "AGL(1,5)": agl15,
    "AGL(1,5)xZ2": agl15_x_z2,
    "A4": lambda: alternating_group(4),
    "S4": lambda: symmetric_group(4),
    "A5": lambda: alternating_group(5),
    "S5": lambda: symmetric_group(5),
    "A6": lambda: alternating_group(6),
    "S6": lambda: symmetric_group(6),
    "A7": lambda: alternating_group(7),
    "SL(2,3)": sl23,
    "(A4xA5):2": a4_x_a5_2,
    "S4xS5": s4_x_s5,
    "PGL(2,9)": lambda: projective.pgl2(9),
    "M10": projective.m10,
    "PGammaL(2,9)": lambda: projective.pgammal2(9),
    "PGL(2,11)": lambda: projective.pgl2(11),
    "PSL(2,11)": lambda: projective.psl2(11),
    "PSL(2,19)": lambda: projective.psl2(19),
    "PSL(2,16)": lambda: projective.psl2(16),
    "PSL(2,25)": lambda: projective.psl2(25),
    "PSL(2,29)": lambda: projective.psl2(29),
    "PSL(2,31)": lambda: projective.psl2(31),
    "PSL(2,41)": lambda: projective.psl2(41),
    "2^4:S5": elementary_abelian_2_4_s5,
    "AGL(2,4)": lambda: _agl24(False),
    "AGammaL(2,4)": lambda: _agl24(True),
    "M11": m11,
}

# pairs that name the same abstract group
ISOMORPHIC = [("A6", "PSL(2,9)"), ("S6", "PSigmaL(2,9)"), ("A5", "PSL(2,5)"), ("S5", "PGL(2,5)")]


@lru_cache(maxsize=None)
def reference(name: str) -> PermGroup:
    return REFERENCE[name]()


@lru_cache(maxsize=None)
def reference_fingerprint(name: str) -> Fingerprint:
    return fingerprint(reference(name))
