"""Derive permutation generators for Sz(8) on the 65 points of its ovoid.

Sz(8) is generated by the 4x4 matrices over GF(8) of the standard
Suzuki-Tits construction (theta: x -> x^4).  The orbit of size 65 in PG(3, 8)
is the ovoid; two random elements generating the full group are printed.

Run from the repository root:  python3 scripts/derive_sz8.py > src/suborbit5/data/sz8_65.txt
"""

from __future__ import annotations

import itertools
import random
import sys

sys.path.insert(0, "src")

from suborbit5.atlas.fq import gfq  # noqa: E402
from suborbit5.perm import PermGroup, Permutation, format_generator_text, orbits  # noqa: E402

ORDER = 29120
F = gfq(8)


def add(*xs: int) -> int:
    s = 0
    for x in xs:
        s = int(F.add[s, x])
    return s


def mul(*xs: int) -> int:
    s = 1
    for x in xs:
        s = int(F.mul[s, x])
    return s


def theta(x: int) -> int:
    return F.power(x, 4)


def translation(a: int, b: int) -> list[list[int]]:
    corner = add(mul(a, a, theta(a)), mul(a, b), theta(b))
    return [[1, 0, 0, 0], [a, 1, 0, 0], [b, theta(a), 1, 0], [corner, add(mul(a, theta(a)), b), a, 1]]


def torus(k: int) -> list[list[int]]:
    ki = int(F.inv[k])
    return [[F.power(k, 3), 0, 0, 0], [0, F.power(k, 2), 0, 0], [0, 0, F.power(ki, 2), 0], [0, 0, 0, F.power(ki, 3)]]


TAU = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]


def normalize(v: tuple[int, ...]) -> tuple[int, ...]:
    lead = next(x for x in v if x)
    inv = int(F.inv[lead])
    return tuple(mul(inv, y) for y in v)


def main() -> None:
    points = sorted({normalize(v) for v in itertools.product(range(8), repeat=4) if any(v)})
    index = {v: i for i, v in enumerate(points)}

    def act(m: list[list[int]]) -> Permutation:
        images = []
        for v in points:
            w = tuple(add(*[mul(v[i], m[i][j]) for i in range(4)]) for j in range(4))
            images.append(index[normalize(w)])
        return Permutation(images)

    w = F.primitive
    gens = [act(translation(1, 0)), act(translation(0, 1)), act(translation(w, 0)), act(torus(w)), act(TAU)]
    big = PermGroup(len(points), gens).freeze(max_order=ORDER)
    ovoid = next(o for o in orbits(big) if len(o) == 65)
    pos = {x: i for i, x in enumerate(ovoid)}

    def restrict(g: Permutation) -> Permutation:
        return Permutation([pos[int(g.array[x])] for x in ovoid])

    rng = random.Random(1)
    while True:
        pair = [restrict(big.random_element(rng)) for _ in range(2)]
        cand = PermGroup(65, pair, "Sz(8)").freeze(max_order=ORDER)
        if cand.order == ORDER:
            break
    print(format_generator_text(cand, "Sz(8) on the 65 points of the Suzuki-Tits ovoid in PG(3,8); order 29120"), end="")


if __name__ == "__main__":
    main()
