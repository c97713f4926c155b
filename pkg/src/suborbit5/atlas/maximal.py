"""Almost simple groups acting on the cosets of a maximal A5 or S5.

Each family names the overgroup, the parameter it takes (a prime ``p``, an
exponent ``r`` or nothing), the congruence that selects it, and the expected
``N_G(H)/H`` from the tables, with ``H`` the index-5 subgroup of ``M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import UnsupportedError
from ..ffalg.field import is_prime
from ..perm import DEFAULT_COSET_BOUND, PermGroup, alternating_group, subgroup, symmetric_group
from . import projective
from .catalogue import m11
from .tables import GroupSpec, coset_spec, find_a5, find_s5


@dataclass(frozen=True)
class Family:
    key: str
    table: int
    subgroup: str  # "A5" or "S5"
    param: str | None
    overgroup: Callable[[int | None, int], PermGroup]
    condition: Callable[[int | None], bool]
    expected: Callable[[int | None], int]
    row: Callable[[int | None], int]
    description: str
    naming: Callable[[int | None], str] | None = None

    def label(self, value: int | None) -> str:
        return self.naming(value) if self.naming else self.description


def _pm(p: int, modulus: int, residues: tuple[int, ...]) -> bool:
    return any(p % modulus in (r % modulus, -r % modulus) for r in residues)


def _psl2_a5_row(p):
    return 4 if _pm(p, 40, (1, 9)) else 3


def _a7(_, seed):
    return alternating_group(7)


def _s5_natural(_, seed):
    return symmetric_group(5)


FAMILIES: dict[str, Family] = {}


def _register(f: Family) -> None:
    FAMILIES[f.key] = f


_register(Family("s5-a5", 4, "A5", None, _s5_natural, lambda _: True, lambda _: 2, lambda _: 1, "S5"))
_register(
    Family(
        "psl2-a5", 4, "A5", "p",
        lambda p, s: projective.psl2(p, s),
        lambda p: is_prime(p) and p % 10 in (1, 9),
        lambda p: 2 if _pm(p, 40, (1, 9)) else 1,
        _psl2_a5_row,
        "PSL(2,p)", lambda p: f"PSL(2,{p})",
    )
)
_register(
    Family(
        "psl2sq-a5", 4, "A5", "p",
        lambda p, s: projective.psl2(p * p, s),
        lambda p: is_prime(p) and p % 10 in (3, 7),
        lambda _: 2, lambda _: 5, "PSL(2,p^2)", lambda p: f"PSL(2,{p * p})",
    )
)
_register(
    Family(
        "psl2-4r-a5", 4, "A5", "r",
        lambda r, s: projective.psl2(4**r, s),
        lambda r: is_prime(r) and 4**r <= 1024,
        lambda _: 1, lambda _: 6, "PSL(2,2^(2r))", lambda r: f"PSL(2,{4**r})",
    )
)
_register(
    Family(
        "psl2-5r-a5", 4, "A5", "r",
        lambda r, s: projective.psl2(5**r, s),
        lambda r: is_prime(r) and r % 2 == 1 and 5**r <= 1024,
        lambda _: 1, lambda _: 7, "PSL(2,5^r)", lambda r: f"PSL(2,{5**r})",
    )
)
_register(Family("a7-s5", 5, "S5", None, _a7, lambda _: True, lambda _: 1, lambda _: 1, "A7"))
_register(Family("m11-s5", 5, "S5", None, lambda _, s: m11(), lambda _: True, lambda _: 1, lambda _: 2, "M11"))
_register(
    Family(
        "psl2-25-s5", 5, "S5", None,
        lambda _, s: projective.psl2(25, s),
        lambda _: True, lambda _: 1, lambda _: 6, "PSL(2,25)",
    )
)
_register(
    Family(
        "psigmal2-s5", 5, "S5", "p",
        lambda p, s: projective.psigmal2(p * p, s),
        lambda p: is_prime(p) and p % 10 in (3, 7),
        lambda _: 2, lambda _: 7, "PSigmaL(2,p^2)", lambda p: f"PSigmaL(2,{p * p})",
    )
)
_register(
    Family(
        "psl2-4r-2-s5", 5, "S5", "r",
        lambda r, s: projective.psl2_extended(4**r, 2, s),
        lambda r: is_prime(r) and r % 2 == 1 and 4**r <= 1024,
        lambda _: 1, lambda _: 8, "PSL(2,2^(2r)):2", lambda r: f"PSL(2,{4**r}):2",
    )
)
_register(
    Family(
        "pgl2-5r-s5", 5, "S5", "r",
        lambda r, s: projective.pgl2(5**r, s),
        lambda r: is_prime(r) and r % 2 == 1 and 5**r <= 1024,
        lambda _: 1, lambda _: 9, "PGL(2,5^r)", lambda r: f"PGL(2,{5**r})",
    )
)
_register(
    Family(
        "psl3-4-s5", 5, "S5", None,
        lambda _, s: projective.psl3_4_graph_field(s),
        lambda _: True, lambda _: 1, lambda _: 10, "PSL(3,4):2_3",
    )
)
_register(
    Family(
        "psl3-5-s5", 5, "S5", None,
        lambda _, s: projective.psl3_prime(5, s),
        lambda _: True, lambda _: 1, lambda _: 11, "PSL(3,5)",
    )
)

# rows whose groups are beyond desk-scale permutation constructions
UNSUPPORTED_ROWS = {
    (4, 2): "J2 needs external generators",
    (4, 8): "PSp(6,3) is not constructed",
    (4, 9): "PSp(6,p) has no permutation construction; see the centralizer targets",
    (4, 10): "PSp(6,p) has no permutation construction; see the centralizer targets",
    (5, 3): "M12:2 needs external generators",
    (5, 4): "J2:2 needs external generators",
    (5, 5): "Th is out of scope",
    (5, 12): "PSp(6,p) has no permutation construction; see the centralizer targets",
    (5, 13): "PGSp(6,3) is not constructed",
    (5, 14): "PGSp(6,p) is not constructed",
}


def family(key: str) -> Family:
    try:
        return FAMILIES[key]
    except KeyError:
        raise UnsupportedError(f"unknown family {key!r}; known: {', '.join(sorted(FAMILIES))}") from None


def build_maximal_action(
    key: str, value: int | None = None, seed: int = 0, check_condition: bool = True, bound: int = DEFAULT_COSET_BOUND
) -> GroupSpec:
    """The overgroup acting on cosets of its located maximal A5 or S5.

    With ``check_condition`` off, any overgroup containing the subgroup can be
    built; this serves negative controls such as PSL(2,29).
    """
    fam = family(key)
    if fam.param is None:
        value = None
    elif value is None:
        raise ValueError(f"family {key} needs parameter {fam.param}")
    if check_condition and not fam.condition(value):
        raise ValueError(f"{fam.param} = {value} does not satisfy the condition of family {key}")
    G, M = overgroup_and_subgroup(key, value, seed)
    params = {fam.param: value} if fam.param else {}
    if key == "s5-a5":
        # A5 is normal in S5, so the coset action is not faithful; keep the natural action
        return GroupSpec(fam.table, 1, G.name, G, M, "A5", params)
    return coset_spec(fam.table, fam.row(value), G.name, G, M, fam.subgroup, seed=seed, bound=bound, params=params)


def overgroup_and_subgroup(key: str, value: int | None = None, seed: int = 0) -> tuple[PermGroup, PermGroup]:
    """Overgroup in its defining action with the located maximal subgroup (no coset action)."""
    fam = family(key)
    if fam.param is None:
        value = None
    G = fam.overgroup(value, seed)
    G.name = fam.label(value)
    if key == "s5-a5":
        return G, subgroup(G, alternating_group(5).generators, "A5", order=60)
    return G, (find_a5(G, seed) if fam.subgroup == "A5" else find_s5(G, seed))
