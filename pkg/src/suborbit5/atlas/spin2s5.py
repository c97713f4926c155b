"""The symplectic 6-dimensional representation of 2.S5^- and its subgroups."""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources

from ..errors import ConstantCorruptionError, SearchFailure
from ..ffalg import Field, MatRep, Matrix, invariant_forms, is_alternating
from ..ffalg.modules import galois_descent

DATA_FILE = "two_s5_minus.txt"
GROUP_ORDER = 240
SUBGROUP_TARGETS = {24: "2.A4", 40: "Z5:Z8", 48: "2.S4-", 120: "2.A5"}


def _load_constants() -> tuple[int, list[list[list[tuple[int, int, int, int]]]]]:
    text = resources.files("suborbit5").joinpath("data", DATA_FILE).read_text()
    rows = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    try:
        dim = int(rows[0].split(":")[1])
        count = int(rows[1].split(":")[1])
        body = rows[2:]
        mats = []
        for k in range(count):
            mat = []
            for line in body[k * dim : (k + 1) * dim]:
                entries = [tuple(int(c) for c in tok.split(",")) for tok in line.split()]
                if len(entries) != dim or any(len(e) != 4 for e in entries):
                    raise ValueError("bad row")
                mat.append(entries)
            if len(mat) != dim:
                raise ValueError("truncated matrix")
            mats.append(mat)
    except (IndexError, ValueError) as exc:
        raise ConstantCorruptionError(f"cannot parse {DATA_FILE}: {exc}") from exc
    return dim, mats


def zeta8_field(p: int) -> tuple[Field, int]:
    """The smallest of GF(p), GF(p^2) holding a primitive 8th root of unity, and one such root."""
    F = Field(p, 1 if p % 8 == 1 else 2)
    zeta = F.power(F.primitive_element, (F.q - 1) // 8)
    return F, zeta


def reduce_constants(p: int) -> MatRep:
    if p % 2 == 0 or p == 5:
        raise ValueError("p must be an odd prime other than 5")
    dim, mats = _load_constants()
    F, zeta = zeta8_field(p)
    powers = [F.power(zeta, k) for k in range(4)]
    gens = []
    for mat in mats:
        rows = []
        for row in mat:
            vals = []
            for coeffs in row:
                acc = 0
                for c, z in zip(coeffs, powers):
                    acc = F.add(acc, F.mul(c % p, z))
                vals.append(acc)
            rows.append(vals)
        gens.append(Matrix.from_rows(F, rows))
    return MatRep(F, gens, name="2.S5-")


@dataclass
class SpinGroup:
    """Validated 2.S5^- in Sp(6, .) with its element list."""

    rep: MatRep
    elements: list[Matrix]

    @property
    def field(self) -> Field:
        return self.rep.field

    @property
    def form(self) -> Matrix:
        assert self.rep.form is not None
        return self.rep.form


def _validate(rep: MatRep) -> SpinGroup:
    F = rep.field
    orders = [g.order(limit=240) for g in rep.gens]
    if orders != [5, 4]:
        raise ConstantCorruptionError(f"generator orders {orders}, expected [5, 4]")
    elems = rep.elements(limit=GROUP_ORDER + 1)
    if len(elems) != GROUP_ORDER:
        raise ConstantCorruptionError(f"closure has {len(elems)} elements, expected {GROUP_ORDER}")
    minus = Matrix.scalar(F, rep.dim, F.neg(1))
    if not any(e == minus for e in elems):
        raise ConstantCorruptionError("-I is not in the group")
    forms = invariant_forms(rep)
    if len(forms) != 1:
        raise ConstantCorruptionError(f"{len(forms)} invariant forms, expected 1")
    J = forms[0]
    if not is_alternating(J) or not J.is_invertible():
        raise ConstantCorruptionError("invariant form is not alternating and nondegenerate")
    rep.form = J
    return SpinGroup(rep, elems)


def build_2s5minus(p: int) -> SpinGroup:
    """2.S5^- in Sp(6, F) for F = GF(p) or GF(p^2), validated on load."""
    if p > 2**16:
        raise ValueError("p must be at most 2^16")
    rep = reduce_constants(p)
    return _validate(rep)


def _closure_size(gens: list[Matrix], cap: int) -> tuple[int, list[Matrix]]:
    ident = Matrix.identity(gens[0].field, gens[0].rows)
    seen = {ident.key()}
    queue = [ident]
    i = 0
    while i < len(queue):
        for g in gens:
            y = queue[i] @ g
            if y.key() not in seen:
                seen.add(y.key())
                queue.append(y)
                if len(seen) > cap:
                    return len(seen), queue
        i += 1
    return len(seen), queue


def derived_elements(group: SpinGroup) -> list[Matrix]:
    """The derived subgroup 2.A5, generated by all squares."""
    squares = {}
    for e in group.elements:
        sq = e @ e
        squares.setdefault(sq.key(), sq)
    gens = [m for m in squares.values() if not m.is_identity()]
    size, members = _closure_size(gens, GROUP_ORDER)
    if size != GROUP_ORDER // 2:
        raise ConstantCorruptionError(f"derived subgroup has order {size}, expected 120")
    return members


def locate_subrep(group: SpinGroup, target: int, seed: int = 0, budget: int = 4000) -> tuple[MatRep, list[Matrix]]:
    """A subgroup of the given order containing -I, by seeded pair search."""
    if target not in SUBGROUP_TARGETS:
        raise ValueError(f"target must be one of {sorted(SUBGROUP_TARGETS)}")
    elems = derived_elements(group) if target in (24, 120) else group.elements
    return locate_in(elems, group.form, target, seed, budget)


def locate_in(elements: list[Matrix], form: Matrix | None, target: int, seed: int = 0, budget: int = 4000) -> tuple[MatRep, list[Matrix]]:
    """Pair search for a subgroup of order ``target`` containing -I inside an explicit element list."""
    if target not in SUBGROUP_TARGETS:
        raise ValueError(f"target must be one of {sorted(SUBGROUP_TARGETS)}")
    F = elements[0].field
    minus = Matrix.scalar(F, elements[0].rows, F.neg(1))
    rng = random.Random(seed)
    orders = {e.key(): e.order(limit=240) for e in elements}
    # generator orders compatible with each target (2.A4: 4,6; Z5:Z8: 10,8; 2.S4-: 8,6; 2.A5: 4,10)
    wanted = {24: (4, 6), 40: (10, 8), 48: (8, 6), 120: (4, 10)}[target]
    pools = [[e for e in elements if orders[e.key()] == o] for o in wanted]
    if not all(pools):
        raise SearchFailure(f"no elements of orders {wanted}")
    for _ in range(budget):
        a = rng.choice(pools[0])
        b = rng.choice(pools[1])
        size, members = _closure_size([a, b], target)
        if size == target and any(m == minus for m in members):
            rep = MatRep(F, [a, b], form, name=SUBGROUP_TARGETS[target])
            return rep, members
    raise SearchFailure(f"no subgroup of order {target} found; constants are suspect")


def descend(rep: MatRep) -> MatRep:
    """Galois descent to GF(p) with the invariant form recomputed there."""
    out = galois_descent(rep)
    forms = invariant_forms(out)
    alt = [f for f in forms if is_alternating(f) and f.is_invertible()]
    if alt:
        out.form = alt[0]
    return out
