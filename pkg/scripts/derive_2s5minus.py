"""Derive the embedded 6-dimensional 2.S5^- constants.

The double cover 2.S5^- (transpositions lift to elements of order 4) is
modelled as ``{+-g/sqrt(det g) : g in GL(2,5)}`` inside SL(2,25).  The
preimage K of a Borel subgroup has order 40 and K/K' is cyclic of order 8, so
inducing a faithful linear character of K gives a monomial 6-dimensional
representation whose entries are 8th roots of unity.  Entries are written as
4-tuples over Z[zeta], zeta^4 = -1.

Run from the repository root:  python3 scripts/derive_2s5minus.py > src/suborbit5/data/two_s5_minus.txt
"""

from __future__ import annotations

import itertools
import sys

sys.path.insert(0, "src")

from suborbit5.ffalg import Field, Matrix  # noqa: E402

F = Field(5, 2)  # x^2 = 2, so x is a square root of 2
SQRT2 = F.make(0, 1)


def sl2_lifts() -> list[Matrix]:
    out: dict[bytes, Matrix] = {}
    for a, b, c, d in itertools.product(range(5), repeat=4):
        det = (a * d - b * c) % 5
        if det == 0:
            continue
        s = F.sqrt(det)
        g = Matrix.from_rows(F, [[a, b], [c, d]]).scale(F.inv(s))
        for m in (g, g.scale(F.neg(1))):
            out[m.key()] = m
    return list(out.values())


def line_key(v: tuple[int, int]) -> tuple[int, int]:
    """Normalized GF(5) representative of the GF(25)-line through v (v in GF(5)^2 up to scalar)."""
    a, b = v
    if a:
        inv = F.inv(a)
        return 1, F.mul(b, inv)
    return 0, 1


def main() -> None:
    elems = sl2_lifts()
    assert len(elems) == 240
    mu8 = [F.power(SQRT2, k) for k in range(8)]
    assert len(set(mu8)) == 8
    log = {t: k for k, t in enumerate(mu8)}

    def column(g: Matrix) -> tuple[int, int]:
        return g[0, 0], g[1, 0]

    def point(g: Matrix) -> tuple[int, int]:
        c0, c1 = column(g)
        # the image line of e1 is spanned by a GF(25)-multiple of a GF(5) vector
        scalar = c0 if c0 else c1
        inv = F.inv(scalar)
        return line_key((F.mul(c0, inv), F.mul(c1, inv)))

    points = sorted({point(g) for g in elems})
    assert len(points) == 6
    reps = {}
    for g in sorted(elems, key=lambda m: m.key()):
        reps.setdefault(point(g), g)
    reps_list = [reps[P] for P in points]
    index = {P: i for i, P in enumerate(points)}

    def rho(g: Matrix) -> list[list[int]]:
        """Monomial matrix: entry (i, j) = log_zeta lambda(r_i^-1 g r_j), or None."""
        m = [[None] * 6 for _ in range(6)]
        for j, rj in enumerate(reps_list):
            x = g @ rj
            i = index[point(x)]
            k = reps_list[i].inverse() @ x
            assert k[1, 0] == 0
            m[i][j] = log[k[0, 0]]
        return m

    def compose(a, b):
        out = [[None] * 6 for _ in range(6)]
        for i in range(6):
            for j in range(6):
                for t in range(6):
                    if a[i][t] is not None and b[t][j] is not None:
                        out[i][j] = (a[i][t] + b[t][j]) % 8
        return out

    # homomorphism check on all pairs would be 57600 products; sample a grid
    table = {g.key(): rho(g) for g in elems}
    for g in elems[::7]:
        for h in elems[::11]:
            assert compose(table[g.key()], table[h.key()]) == table[(g @ h).key()]

    # generators: an element of order 5 and a transposition lift of order 4
    a = next(g for g in elems if g.order() == 5 and g[1, 0] == 0)
    tr = Matrix.from_rows(F, [[0, 2], [1, 0]]).scale(F.inv(F.sqrt(3)))
    assert tr.order() == 4
    gens = None
    for b in sorted(elems, key=lambda m: m.key()):
        if b.order() != 4 or b.trace() != 0:
            continue
        if _closure([a, b]) == 240:
            gens = (a, b)
            break
    assert gens is not None

    def to_zeta(k):
        if k is None:
            return "0,0,0,0"
        coeffs = [0, 0, 0, 0]
        coeffs[k % 4] = 1 if k < 4 else -1
        return ",".join(map(str, coeffs))

    print("# 2.S5^- (transpositions lift to order 4): faithful 6-dimensional monomial")
    print("# representation, induced from a faithful linear character of the")
    print("# preimage (order 40, Z5:Z8) of a point stabilizer of S5 on 6 points.")
    print("# Entries lie in Z[zeta], zeta a primitive 8th root of unity; each entry")
    print("# is written a,b,c,d meaning a + b*zeta + c*zeta^2 + d*zeta^3.")
    print("# Properties re-verified at load: generator orders 5 and 4, group order")
    print("# 240, -I present, a 1-dimensional space of invariant bilinear forms")
    print("# spanned by an alternating nondegenerate form.")
    print("dim: 6")
    print("gens: 2")
    for g in gens:
        m = table[g.key()]
        print(f"# order {g.order()}")
        for row in m:
            print(" ".join(to_zeta(k) for k in row))


def _closure(gens: list[Matrix]) -> int:
    seen = {Matrix.identity(F, 2).key()}
    queue = [Matrix.identity(F, 2)]
    i = 0
    while i < len(queue):
        for g in gens:
            y = queue[i] @ g
            if y.key() not in seen:
                seen.add(y.key())
                queue.append(y)
        i += 1
    return len(seen)


if __name__ == "__main__":
    main()
