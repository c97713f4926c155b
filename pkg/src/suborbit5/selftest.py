"""Seeded property suites over the core algorithms.

Each suite takes a seed and returns a :class:`SuiteResult`; failures carry
the first counterexample found.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from .atlas.catalogue import ISOMORPHIC, REFERENCE, reference_fingerprint
from .atlas.spin2s5 import build_2s5minus, locate_subrep
from .atlas.tables import build_table2_row, table2_condition
from .ffalg import Field, MatRep, Matrix, chop, galois_descent
from .perm import PermGroup, Permutation, _bounded_closure_size, orbit, point_stabilizer

DEFAULT_SEEDS = (0, 1, 2, 3, 4)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    seed: int
    cases: int
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name} seed={self.seed} cases={self.cases}{tail}"


def random_permutation(n: int, rng: random.Random) -> Permutation:
    img = list(range(n))
    rng.shuffle(img)
    return Permutation(img)


def random_group(rng: random.Random, min_degree: int = 4, max_degree: int = 9) -> PermGroup:
    n = rng.randint(min_degree, max_degree)
    gens = [random_permutation(n, rng) for _ in range(rng.randint(1, 2))]
    return PermGroup(n, gens, "random")


def orbit_stabilizer(seed: int, count: int = 50) -> SuiteResult:
    """|orbit| * |stabilizer| = |G| for every point, and the order agrees with brute-force closure."""
    rng = random.Random(seed)
    for k in range(count):
        G = random_group(rng).freeze(seed)
        brute = _bounded_closure_size(G.degree, [g.array for g in G.generators], 400_000)
        if brute <= 400_000 and brute != G.order:
            return SuiteResult("orbit-stabilizer", seed, k + 1, False, f"order {G.order} vs closure {brute}")
        for x in range(G.degree):
            if len(orbit(G, x)) * point_stabilizer(G, x, seed).order != G.order:
                return SuiteResult("orbit-stabilizer", seed, k + 1, False, f"point {x} of group {k}")
    return SuiteResult("orbit-stabilizer", seed, count, True)


def sifting_soundness(seed: int, count: int = 30) -> SuiteResult:
    """Membership by sifting matches membership in the explicit element set."""
    rng = random.Random(seed)
    cases = 0
    while cases < count:
        G = random_group(rng, 4, 7).freeze(seed)
        elems = {e.array.tobytes() for e in G.elements(limit=6000)}
        for _ in range(10):
            if rng.random() < 0.5:
                x = G.random_element(rng)
            else:
                x = random_permutation(G.degree, rng)
            if G.contains(x) != (x.array.tobytes() in elems):
                return SuiteResult("sifting", seed, cases + 1, False, f"membership of {x.array.tolist()}")
        cases += 1
    return SuiteResult("sifting", seed, count, True)


SPIN_PRIMES = (3, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43)


def spin_closure(seed: int) -> SuiteResult:
    """2.S5^- at a random prime: closure 240, -I central, form preserved, derived group 120."""
    rng = random.Random(seed)
    p = rng.choice(SPIN_PRIMES)
    spin = build_2s5minus(p)
    F = spin.field
    J = spin.form
    minus = Matrix.scalar(F, 6, F.neg(1))
    problems = []
    if len(spin.elements) != 240:
        problems.append("closure")
    if not all(g.T @ J @ g == J for g in spin.elements):
        problems.append("form")
    if not all(minus @ g == g @ minus for g in spin.elements):
        problems.append("centre")
    keys = {g.key() for g in spin.elements}
    for _ in range(50):
        a, b = rng.choice(spin.elements), rng.choice(spin.elements)
        if (a @ b).key() not in keys or a.inverse().key() not in keys:
            problems.append("products")
            break
    rep, members = locate_subrep(spin, 120, seed)
    if len(members) != 120:
        problems.append("derived")
    return SuiteResult("spin-closure", seed, 240, not problems, f"p={p} " + ",".join(problems) if problems else f"p={p}")


def _random_module(rng: random.Random) -> MatRep:
    """Permutation module of a random small group over a small prime field."""
    p = rng.choice((2, 3, 5, 7))
    G = random_group(rng, 4, 7)
    F = Field(p)
    mats = []
    for g in G.generators:
        n = G.degree
        rows = [[1 if g.array[j] == i else 0 for j in range(n)] for i in range(n)]
        mats.append(Matrix.from_rows(F, rows))
    return MatRep(F, mats)


def rechop_idempotence(seed: int, count: int = 12) -> SuiteResult:
    """Chopping a composition factor again returns it whole, and dimensions add up."""
    rng = random.Random(seed)
    for k in range(count):
        rep = _random_module(rng)
        parts = chop(rep, seed)
        if sum(c.dim for c in parts) != rep.dim:
            return SuiteResult("rechop", seed, k + 1, False, "dimensions do not add up")
        for c in parts:
            again = chop(c.rep, seed + 1)
            if len(again) != 1 or again[0].dim != c.dim:
                return SuiteResult("rechop", seed, k + 1, False, f"factor of dimension {c.dim} split again")
    return SuiteResult("rechop", seed, count, True)


DESCENT_PRIMES = (3, 11, 13, 19, 29, 37, 43)  # p = +-3 (mod 8)


def descent_traces(seed: int, words: int = 100) -> SuiteResult:
    """Galois descent of 2.A5 keeps the trace of every word in the generators."""
    rng = random.Random(seed)
    p = rng.choice(DESCENT_PRIMES)
    spin = build_2s5minus(p)
    rep, _ = locate_subrep(spin, 120, seed)
    down = galois_descent(rep, seed=seed)
    E = rep.field
    for k in range(words):
        idx = [rng.randrange(len(rep.gens)) for _ in range(rng.randint(1, 12))]
        up = rep.identity()
        low = down.identity()
        for i in idx:
            up = up @ rep.gens[i]
            low = low @ down.gens[i]
        t_up = up.trace()
        if not E.in_prime_field(t_up) or E.split(t_up)[0] != low.trace():
            return SuiteResult("descent", seed, k + 1, False, f"p={p} word {idx}")
    return SuiteResult("descent", seed, words, True, f"p={p}")


def fingerprint_distinctness(seed: int) -> SuiteResult:
    """Reference groups have pairwise distinct fingerprints unless listed as isomorphic."""
    names = sorted(REFERENCE)
    rng = random.Random(seed)
    rng.shuffle(names)
    same = {frozenset(pair) for pair in ISOMORPHIC}
    for a, b in itertools.combinations(names, 2):
        if frozenset((a, b)) in same:
            continue
        if reference_fingerprint(a) == reference_fingerprint(b):
            return SuiteResult("fingerprints", seed, len(names), False, f"{a} and {b} collide")
    return SuiteResult("fingerprints", seed, len(names), True)


CAYLEY_ROWS = {1: (11, 31, 41), 2: (19, 29), 3: (2, 3), 4: (11, 19), 5: (2, 3), 6: (2, 3), 7: (2, 3), 8: (2, 3)}


def cayley_inversion(seed: int, count: int = 4) -> SuiteResult:
    """Negation preserves the orbital graph of a length-5 suborbit of random affine rows."""
    from .verify import cayley_inversion_check

    rng = random.Random(seed)
    for k in range(count):
        row = rng.choice(sorted(CAYLEY_ROWS))
        p = rng.choice(CAYLEY_ROWS[row])
        assert table2_condition(row, p)
        spec = build_table2_row(row, p, seed)
        rep = cayley_inversion_check(spec.affine, row, seed)
        if not rep.passed:
            return SuiteResult("cayley", seed, k + 1, False, f"row {row} p={p}: {rep.reason}")
    return SuiteResult("cayley", seed, count, True)


SUITES: dict[str, Callable[[int], SuiteResult]] = {
    "orbit-stabilizer": orbit_stabilizer,
    "sifting": sifting_soundness,
    "spin-closure": spin_closure,
    "rechop": rechop_idempotence,
    "descent": descent_traces,
    "fingerprints": fingerprint_distinctness,
    "cayley": cayley_inversion,
}


def run_selftest(seeds=DEFAULT_SEEDS, suites: list[str] | None = None) -> list[SuiteResult]:
    chosen = suites or list(SUITES)
    unknown = set(chosen) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites: {', '.join(sorted(unknown))}")
    return [SUITES[name](seed) for seed in seeds for name in chosen]

