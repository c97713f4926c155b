"""Preimages in Sp(6,p) of the index-5 and index-6 subgroups of A5 and S5.

Four targets are supported:

* ``lemma61``: Z5:Z8 inside 2.S5^-, p = 7, 23 (mod 40)
* ``row12``: 2.S4^- inside 2.S5^-, p = +-1 (mod 8)
* ``row9``: 2.A4 inside 2.A5, p = 13, 37, 43, 67 (mod 120)
* ``row10``: 2.A4 inside 2.A5, p = 53, 77, 83, 107 (mod 120)

All groups are brought down to GF(p) before use: by Galois descent of the
whole 2.S5^- when sqrt(2) lies in GF(p), and of its derived group otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import ResourceError
from ..ffalg import MatRep, Matrix, invariant_forms, is_alternating
from ..ffalg.field import is_prime
from .spin2s5 import build_2s5minus, descend, locate_in, locate_subrep

MAX_PRIME = 60


@dataclass(frozen=True)
class Target:
    key: str
    order: int  # order of the preimage of H
    derived: bool  # whether the overgroup is 2.A5 rather than 2.S5^-
    residues: tuple[int, ...]
    modulus: int
    algebra_dim: int
    centralizer_order: Callable[[int], int]
    quotient_order: Callable[[int], int]

    def condition(self, p: int) -> bool:
        return is_prime(p) and p % self.modulus in self.residues


TARGETS = {
    "lemma61": Target("lemma61", 40, False, (7, 23), 40, 3, lambda p: 2 * (p + 1), lambda p: p + 1),
    "row12": Target("row12", 48, False, (1, 7), 8, 2, lambda p: 4, lambda p: 2),
    "row9": Target("row9", 24, True, (13, 37, 43, 67), 120, 3, lambda p: 2 * (p - 1), lambda p: p - 1),
    "row10": Target("row10", 24, True, (53, 77, 83, 107), 120, 3, lambda p: 2 * (p + 1), lambda p: p + 1),
}

# smallest valid primes, pinned for the default suite
PINNED_PRIMES = {"lemma61": (7, 23), "row12": (7, 17), "row9": (13, 37), "row10": (53,)}


def target(key: str) -> Target:
    try:
        return TARGETS[key]
    except KeyError:
        raise ValueError(f"unknown target {key!r}; known: {', '.join(TARGETS)}") from None


@dataclass
class HatSubgroup:
    """The preimage of H over GF(p), with the ambient invariant alternating form."""

    p: int
    target: str
    rep: MatRep
    elements: list[Matrix]
    overgroup_order: int

    @property
    def form(self) -> Matrix:
        assert self.rep.form is not None
        return self.rep.form


def _prime_field_overgroup(p: int, derived: bool, seed: int) -> tuple[MatRep, list[Matrix]]:
    spin = build_2s5minus(p)
    if derived:
        rep, _ = locate_subrep(spin, 120, seed)
    else:
        rep = spin.rep
    if rep.field.e == 2:
        rep = descend(rep)
    if rep.form is None:
        forms = [f for f in invariant_forms(rep) if is_alternating(f) and f.is_invertible()]
        if len(forms) != 1:
            raise AssertionError(f"{len(forms)} invariant alternating forms after descent")
        rep.form = forms[0]
    size = 120 if derived else 240
    elems = rep.elements(limit=size + 1)
    if len(elems) != size:
        raise AssertionError(f"overgroup has {len(elems)} elements, expected {size}")
    return rep, elems


def hat_subgroup(p: int, key: str, seed: int = 0, max_prime: int = MAX_PRIME) -> HatSubgroup:
    t = target(key)
    if not t.condition(p):
        raise ValueError(f"p = {p} violates the congruence of target {key}")
    if p > max_prime:
        raise ResourceError(f"p = {p} exceeds {max_prime}")
    over, elems = _prime_field_overgroup(p, t.derived, seed)
    rep, members = locate_in(elems, over.form, t.order, seed)
    return HatSubgroup(p, key, rep, members, len(elems))
