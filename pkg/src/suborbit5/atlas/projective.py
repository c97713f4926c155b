"""Groups of (semi)linear fractional maps on the projective line PG(1, q).

Points ``0..q-1`` are field elements (see :mod:`.fq`) and point ``q`` is
infinity.
"""

from __future__ import annotations

import math

import numpy as np

from ..ffalg import Field
from ..perm import PermGroup, Permutation
from .fq import GFq, gfq


def mobius(F: GFq, a: int, b: int, c: int, d: int) -> Permutation:
    """The map ``z -> (a z + b) / (c z + d)``."""
    q = F.q
    if F.add[F.mul[a, d], F.neg[F.mul[b, c]]] == 0:
        raise ValueError("singular matrix")
    z = np.arange(q)
    num = F.add[F.mul[a, z], b]
    den = F.add[F.mul[c, z], d]
    img = np.full(q + 1, q, dtype=np.int64)
    finite = den != 0
    img[:q][finite] = F.mul[num[finite], F.inv[den[finite]]]
    img[q] = F.mul[a, F.inv[c]] if c else q
    return Permutation(img)


def field_automorphism(F: GFq, power: int = 1) -> Permutation:
    """``z -> z^(p^power)``, fixing infinity."""
    frob = np.arange(F.q)
    table = F.frobenius()
    for _ in range(power):
        frob = table[frob]
    return Permutation(np.append(frob, F.q))


def pgl2_order(q: int) -> int:
    return q * (q * q - 1)


def psl2_order(q: int) -> int:
    return pgl2_order(q) // math.gcd(2, q - 1)


def _psl_gens(F: GFq) -> list[Permutation]:
    w = F.primitive
    if F.p == 2:
        return [mobius(F, 1, 1, 0, 1), mobius(F, w, 0, 0, 1), mobius(F, 0, 1, 1, 0)]
    return [mobius(F, 1, 1, 0, 1), mobius(F, F.mul[w, w], 0, 0, 1), mobius(F, 0, F.neg[1], 1, 0)]


def psl2(q: int, seed: int = 0) -> PermGroup:
    F = gfq(q)
    return PermGroup(q + 1, _psl_gens(F), f"PSL(2,{q})").freeze(seed, order=psl2_order(q))


def pgl2(q: int, seed: int = 0) -> PermGroup:
    F = gfq(q)
    gens = _psl_gens(F) + [mobius(F, F.primitive, 0, 0, 1)]
    return PermGroup(q + 1, gens, f"PGL(2,{q})").freeze(seed, order=pgl2_order(q))


def psigmal2(q: int, seed: int = 0) -> PermGroup:
    F = gfq(q)
    gens = _psl_gens(F) + [field_automorphism(F)]
    return PermGroup(q + 1, gens, f"PSigmaL(2,{q})").freeze(seed, order=psl2_order(q) * F.k)


def pgammal2(q: int, seed: int = 0) -> PermGroup:
    F = gfq(q)
    gens = _psl_gens(F) + [mobius(F, F.primitive, 0, 0, 1), field_automorphism(F)]
    return PermGroup(q + 1, gens, f"PGammaL(2,{q})").freeze(seed, order=pgl2_order(q) * F.k)


def psl2_extended(q: int, outer_power: int, seed: int = 0) -> PermGroup:
    """PSL(2, q) extended by the field automorphism of order ``outer_power``."""
    F = gfq(q)
    if F.k % outer_power:
        raise ValueError("outer automorphism order must divide the field degree")
    gens = _psl_gens(F) + [field_automorphism(F, F.k // outer_power)]
    return PermGroup(q + 1, gens, f"PSL(2,{q}):{outer_power}").freeze(seed, order=psl2_order(q) * outer_power)


def m10(seed: int = 0) -> PermGroup:
    """M10: PSL(2,9) extended by ``z -> w z^3`` with ``w`` a non-square."""
    F = gfq(9)
    w = F.primitive
    frob = F.frobenius()
    z = np.arange(9)
    img = np.append(F.mul[w, frob[z]], 9)
    gens = _psl_gens(F) + [Permutation(img)]
    return PermGroup(10, gens, "M10").freeze(seed, order=720)


def psl3_prime(p: int, seed: int = 0) -> PermGroup:
    """PSL(3, p) for a prime p on the points of the projective plane."""
    import itertools

    pts = []
    for v in itertools.product(range(p), repeat=3):
        lead = next((x for x in v if x), 0)
        if lead == 1:
            pts.append(v)
    vecs = np.array(pts, dtype=np.int64).T  # (3, n)
    index = {v: i for i, v in enumerate(pts)}
    inv = [0] + [pow(x, p - 2, p) for x in range(1, p)]

    def act(m: list[list[int]]) -> Permutation:
        img = (np.array(m, dtype=np.int64) @ vecs) % p
        out = []
        for col in img.T:
            lead = next(int(x) for x in col if x)
            out.append(index[tuple(int(x) * inv[lead] % p for x in col)])
        return Permutation(out)

    gens = [act([[1, 1, 0], [0, 1, 0], [0, 0, 1]]), act([[0, 0, 1], [1, 0, 0], [0, 1, 0]])]
    w = Field(p).primitive_element
    gens.append(act([[w, 0, 0], [0, inv[w], 0], [0, 0, 1]]))
    n = p * p + p + 1
    order = p**3 * (p**3 - 1) * (p**2 - 1) // math.gcd(3, p - 1)
    return PermGroup(n, gens, f"PSL(3,{p})").freeze(seed, order=order)


def psl3_4_graph_field(seed: int = 0) -> PermGroup:
    """PSL(3,4) extended by a graph-field automorphism, on the 21 points and 21 lines of PG(2,4).

    Points and lines are normalized vectors; the outer involution sends the
    point ``x`` to the line with coordinates ``x^2`` and back.
    """
    import itertools

    F = gfq(4)
    frob = F.frobenius()
    vecs = [v for v in itertools.product(range(4), repeat=3) if next((x for x in v if x), 0) == 1]
    index = {v: i for i, v in enumerate(vecs)}
    n = len(vecs)

    def normalize(col) -> int:
        lead = next(int(x) for x in col if x)
        return index[tuple(int(F.mul[int(x), F.inv[lead]]) for x in col)]

    def apply(m, v):
        return [int(np.bitwise_xor.reduce([F.mul[m[i][j], v[j]] for j in range(3)])) for i in range(3)]

    def act(m, m_dual) -> Permutation:
        img = [normalize(apply(m, v)) for v in vecs] + [n + normalize(apply(m_dual, v)) for v in vecs]
        return Permutation(img)

    w = F.primitive
    wi = int(F.inv[w])
    # (matrix, inverse transpose); lines are acted on by the latter
    gens = [
        act([[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [1, 1, 0], [0, 0, 1]]),
        act([[0, 0, 1], [1, 0, 0], [0, 1, 0]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
        act([[w, 0, 0], [0, wi, 0], [0, 0, 1]], [[wi, 0, 0], [0, w, 0], [0, 0, 1]]),
    ]
    sigma = [n + index[tuple(int(frob[x]) for x in v)] for v in vecs] + [index[tuple(int(frob[x]) for x in v)] for v in vecs]
    gens.append(Permutation(sigma))
    return PermGroup(2 * n, gens, "PSL(3,4):2_3").freeze(seed, order=40320)
