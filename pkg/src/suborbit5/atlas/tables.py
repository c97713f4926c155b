"""Constructions for the rows of the sporadic and infinite-family tables."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..errors import PreconditionError, ResourceError, SearchFailure, UnsupportedError
from ..ffalg import Field, MatRep, companion, deleted_permutation_matrix, golden_trace, phi5_companion
from ..perm import (
    MAX_DEGREE,
    DEFAULT_COSET_BOUND,
    Fingerprint,
    PermGroup,
    Permutation,
    alternating_group,
    coset_action,
    fingerprint,
    is_primitive,
    point_stabilizer,
    random_subgroup_search,
    read_generator_file,
    subgroup,
    subgroup_normalizer_small,
    symmetric_group,
)
from . import projective
from .affine import AffineGroup, affine_group, reflection_inverting
from .catalogue import a4_x_a5_2, reference_fingerprint, s4_x_s5
from .fq import prime_power

SZ8_FILE = "sz8_65.txt"


@dataclass
class GroupSpec:
    """A constructed table row: ``group`` acting on cosets of ``stabilizer``."""

    table: int
    row: int
    name: str
    group: PermGroup
    stabilizer: PermGroup
    stabilizer_name: str
    params: dict = field(default_factory=dict)
    affine: AffineGroup | None = None

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def order(self) -> int:
        return self.group.order

    def stabilizer_fingerprint(self) -> Fingerprint:
        return fingerprint(self.stabilizer)

    def describe(self) -> str:
        return f"degree {self.degree}, order {self.order}, stabilizer {self.stabilizer_name}({self.stabilizer.order})"


def load_generators(path: str | Path) -> PermGroup:
    """Unfrozen group from a generator file (1-based images)."""
    return read_generator_file(path)


def bundled_sz8() -> Path:
    return Path(str(resources.files("suborbit5").joinpath("data", SZ8_FILE)))


# ---------------------------------------------------------------------------
# subgroup location


def element_of_order(G: PermGroup, k: int, rng: random.Random, tries: int = 400) -> Permutation:
    for _ in range(tries):
        x = G.random_element(rng)
        o = x.order()
        if o % k == 0:
            return x ** (o // k)
    raise SearchFailure(f"no element of order {k} found")


def sylow5_normalizer(G: PermGroup, seed: int = 0) -> PermGroup:
    """Normalizer of a subgroup of order 5 (a Sylow subgroup when 25 does not divide |G|)."""
    rng = random.Random(seed)
    x = element_of_order(G, 5, rng)
    c5 = PermGroup(G.degree, [x], "Z5").freeze(seed, order=5)
    return subgroup_normalizer_small(G, c5, seed=seed)


def find_a5(G: PermGroup, seed: int = 0, budget: int = 4000) -> PermGroup:
    """An A5: involution and order-3 element whose product has order 5."""
    a5 = random_subgroup_search(
        G, reference_fingerprint("A5"), seed, budget=budget, generator_orders=[(2, 3)], product_orders=[5]
    )
    a5.name = "A5"
    return a5


def find_s5(G: PermGroup, seed: int = 0, attempts: int = 40, maximal: bool = True) -> PermGroup:
    """An S5 arising as the normalizer of a located A5.

    With ``maximal`` the coset action must also be primitive, which selects a
    maximal class when several classes of A5 exist.
    """
    target = reference_fingerprint("S5")
    for k in range(attempts):
        a5 = find_a5(G, seed * 1000 + k)
        norm = subgroup_normalizer_small(G, a5, seed=seed)
        if norm.order != 120 or fingerprint(norm) != target:
            continue
        if maximal and not _primitive_on_cosets(G, norm, seed):
            continue
        norm.name = "S5"
        return norm
    raise SearchFailure("no S5 located as the normalizer of an A5")


def _primitive_on_cosets(G: PermGroup, M: PermGroup, seed: int) -> bool:
    action = coset_action(G, M, seed=seed)
    return is_primitive(action.group)[0]


def coset_spec(
    table: int,
    row: int,
    name: str,
    G: PermGroup,
    M: PermGroup,
    stabilizer_name: str,
    *,
    seed: int = 0,
    bound: int = DEFAULT_COSET_BOUND,
    params: dict | None = None,
) -> GroupSpec:
    action = coset_action(G, M, bound=bound, seed=seed)
    if action.kernel_order != 1:
        raise PreconditionError(f"action of {G.name} on cosets of {stabilizer_name} is not faithful")
    group = action.group
    group.name = name
    stab = point_stabilizer(group, 0, seed)
    stab.name = stabilizer_name
    return GroupSpec(table, row, name, group, stab, stabilizer_name, dict(params or {}))


def _check_fingerprint(H: PermGroup, name: str) -> None:
    if fingerprint(H) != reference_fingerprint(name):
        raise SearchFailure(f"located subgroup has fingerprint {fingerprint(H).describe()}, expected {name}")


# ---------------------------------------------------------------------------
# sporadic table


TABLE1_INDEX = {1: 6, 2: 6, 3: 36, 4: 36, 5: 36, 6: 66, 7: 126, 8: 126, 9: 171, 10: 1456}
TABLE1_STAB = {
    1: "D5",
    2: "AGL(1,5)",
    3: "D10",
    4: "AGL(1,5)",
    5: "AGL(1,5)xZ2",
    6: "D10",
    7: "(A4xA5):2",
    8: "S4xS5",
    9: "D10",
    10: "AGL(1,5)",
}
TABLE1_GROUP = {
    1: "A5",
    2: "S5",
    3: "PGL(2,9)",
    4: "M10",
    5: "PGammaL(2,9)",
    6: "PGL(2,11)",
    7: "A9",
    8: "S9",
    9: "PSL(2,19)",
    10: "Sz(8)",
    11: "J3",
    12: "J3:2",
    13: "Th",
}
SZ8_ORDER = 29120


def build_table1_row(row: int, generator_file: str | Path | None = None, seed: int = 0) -> GroupSpec:
    if row in (11, 12):
        raise UnsupportedError("J3 rows need external generators at degree 17442, beyond the default bound")
    if row == 13:
        raise UnsupportedError("Th is out of scope")
    if row not in TABLE1_INDEX:
        raise ValueError(f"no row {row} in the sporadic table")
    name, stab = TABLE1_GROUP[row], TABLE1_STAB[row]
    if row in (1, 2):
        G = alternating_group(5) if row == 1 else symmetric_group(5)
        five = Permutation.from_cycles(5, [0, 1, 2, 3, 4])
        if row == 1:
            M = subgroup(G, [five, Permutation.from_cycles(5, [1, 4], [2, 3])], "D5", order=10)
        else:
            M = subgroup(G, [five, Permutation.from_cycles(5, [1, 2, 4, 3])], "AGL(1,5)", order=20)
    elif row in (7, 8):
        if row == 7:
            G, M = alternating_group(9), a4_x_a5_2()
        else:
            G, M = symmetric_group(9), s4_x_s5()
        M = subgroup(G, M.generators, stab, order=M.order)
    else:
        if row == 10:
            path = generator_file if generator_file is not None else bundled_sz8()
            G = load_generators(path).freeze(seed)
            if G.order != SZ8_ORDER:
                raise PreconditionError(f"generator file gives order {G.order}, expected {SZ8_ORDER}")
        else:
            G = {
                3: lambda: projective.pgl2(9, seed),
                4: lambda: projective.m10(seed),
                5: lambda: projective.pgammal2(9, seed),
                6: lambda: projective.pgl2(11, seed),
                9: lambda: projective.psl2(19, seed),
            }[row]()
        M = sylow5_normalizer(G, seed)
        _check_fingerprint(M, stab)
    G.name = name
    spec = coset_spec(1, row, name, G, M, stab, seed=seed)
    if spec.degree != TABLE1_INDEX[row]:
        raise AssertionError(f"degree {spec.degree}, expected {TABLE1_INDEX[row]}")
    return spec


# ---------------------------------------------------------------------------
# infinite families


def _mod5(p: int) -> int:
    return p % 5


TABLE2_DIM = {1: 1, 2: 2, 3: 4, 4: 2, 5: 4, 6: 4, 7: 4, 8: 4}
TABLE2_NAMES = {
    1: "Zp:Z5",
    2: "Zp^2:Z5",
    3: "Zp^4:Z5",
    4: "Zp^2:D5",
    5: "Zp^4:D5",
    6: "Zp^4:AGL(1,5)",
    7: "Zp^4:A5",
    8: "Zp^4:S5",
    9: "PSL(2,p)",
    10: "PSL(2,p^2)",
    11: "PSigmaL(2,p^2)",
}
TABLE2_STAB = {1: "Z5", 2: "Z5", 3: "Z5", 4: "D5", 5: "D5", 6: "AGL(1,5)", 7: "A5", 8: "S5", 9: "A5", 10: "A5", 11: "S5"}
AFFINE_BOUND = 50_000
PSL_BOUND = 20_000


def table2_condition(row: int, p: int) -> bool:
    """Congruence condition of a Table 2 row (p prime)."""
    r5 = p % 5
    if row == 1:
        return r5 == 1
    if row == 2:
        return r5 == 4
    if row in (3, 5):
        return r5 in (2, 3)
    if row == 4:
        return r5 in (1, 4)
    if row in (6, 7, 8):
        return p != 5
    if row == 9:
        return p % 40 in (1, 9, 31, 39)
    if row in (10, 11):
        return p % 10 in (3, 7)
    if row in (12, 13, 14):
        raise UnsupportedError("symplectic rows are verified at the matrix level only")
    raise ValueError(f"no row {row} in the infinite-family table")


def table2_degree(row: int, p: int) -> int:
    if row <= 8:
        return p ** TABLE2_DIM[row]
    if row == 9:
        return (p**3 - p) // 120
    return (p**6 - p**2) // 120


def valid_primes(row: int, limit: int) -> list[int]:
    """Primes satisfying the row condition whose degree is at most ``limit``."""
    from ..ffalg.field import is_prime

    out = []
    p = 2
    while True:
        if is_prime(p) and table2_condition(row, p):
            if table2_degree(row, p) > limit:
                break
            out.append(p)
        p += 1
        if p > 100_000:
            break
    return out


def table2_linear_part(row: int, p: int) -> MatRep:
    """The stabilizer of the zero vector as a matrix group over GF(p)."""
    F = Field(p)
    if row in (1, 2, 3):
        return MatRep(F, [phi5_companion(p, TABLE2_DIM[row])], name="Z5")
    if row == 4:
        A = companion(F, [1, F.neg(golden_trace(F)), 1])
        return MatRep(F, [A, reflection_inverting(A)], name="D5")
    if row == 5:
        A = companion(F, [1, 1, 1, 1, 1])
        return MatRep(F, [A, reflection_inverting(A)], name="D5")
    gens = {
        6: ([1, 2, 3, 4, 0], [0, 2, 4, 1, 3]),
        7: ([1, 2, 3, 4, 0], [1, 2, 0, 3, 4]),
        8: ([1, 2, 3, 4, 0], [1, 0, 2, 3, 4]),
    }[row]
    return MatRep(F, [deleted_permutation_matrix(F, g) for g in gens], name=TABLE2_STAB[row])


def build_table2_row(row: int, p: int, seed: int = 0, bound: int | None = None) -> GroupSpec:
    from ..ffalg.field import is_prime

    if row in (12, 13, 14):
        raise UnsupportedError("symplectic rows are verified at the matrix level only")
    if row not in TABLE2_NAMES:
        raise ValueError(f"no row {row} in the infinite-family table")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not table2_condition(row, p):
        raise ValueError(f"p = {p} violates the congruence condition of row {row}")
    degree = table2_degree(row, p)
    limit = bound if bound is not None else (AFFINE_BOUND if row <= 8 else PSL_BOUND)
    if degree > min(limit, MAX_DEGREE):
        raise ResourceError(f"degree {degree} exceeds bound {min(limit, MAX_DEGREE)}")
    name = TABLE2_NAMES[row].replace("p", str(p))
    params = {"p": p}
    if row <= 8:
        lin = table2_linear_part(row, p)
        aff = affine_group(lin, name, seed)
        aff.stabilizer.name = TABLE2_STAB[row]
        return GroupSpec(2, row, name, aff.group, aff.stabilizer, TABLE2_STAB[row], params, aff)
    if row == 9:
        G = projective.psl2(p, seed)
        M = find_a5(G, seed)
    elif row == 10:
        G = projective.psl2(p * p, seed)
        M = find_a5(G, seed)
    else:
        G = projective.psigmal2(p * p, seed)
        M = find_s5(G, seed)
    spec = coset_spec(2, row, name, G, M, TABLE2_STAB[row], seed=seed, params=params)
    if spec.degree != degree:
        raise AssertionError(f"degree {spec.degree}, expected {degree}")
    return spec


def psl2_on_a5(q: int, seed: int = 0, bound: int = DEFAULT_COSET_BOUND) -> GroupSpec:
    """PSL(2, q) on the cosets of a located A5, without any congruence check."""
    prime_power(q)
    G = projective.psl2(q, seed)
    M = find_a5(G, seed)
    return coset_spec(2, 9, f"PSL(2,{q})", G, M, "A5", seed=seed, bound=bound, params={"q": q})
