"""Exact permutation groups.

Permutations are image arrays on ``{0, ..., n-1}`` and act on the right:
``x^(gh) = (x^g)^h``, so ``(g * h).images == h.images[g.images]``.

A :class:`PermGroup` becomes usable for order/membership questions once it is
frozen, which attaches a stabilizer chain (base and strong generating set)
built by randomized Schreier-Sims.  Transversals are kept as Schreier vectors.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    GeneratorFileError,
    ResourceError,
    SearchFailure,
    StateError,
)

MAX_DEGREE = 50_000
DEFAULT_COSET_BOUND = 100_000
DEFAULT_NORMALIZER_BOUND = 500_000

_DTYPE = np.int32


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image array."""

    __slots__ = ("_img", "_key")

    def __init__(self, images: Iterable[int] | np.ndarray) -> None:
        arr = np.array(images, dtype=_DTYPE).reshape(-1)
        n = arr.size
        if n and (arr.min() < 0 or arr.max() >= n or np.bincount(arr, minlength=n).max() != 1):
            raise ValueError("images do not form a bijection")
        arr.flags.writeable = False
        self._img = arr
        self._key: bytes | None = None

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Permutation":
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=_DTYPE)
        arr.flags.writeable = False
        obj._img = arr
        obj._key = None
        return obj

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(np.arange(degree, dtype=_DTYPE))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        img = np.arange(degree, dtype=_DTYPE)
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if a in seen or not 0 <= a < degree:
                    raise ValueError(f"bad cycle {cyc!r}")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls._wrap(img)

    @property
    def degree(self) -> int:
        return int(self._img.size)

    @property
    def array(self) -> np.ndarray:
        """Read-only image array."""
        return self._img

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._img)

    def key(self) -> bytes:
        if self._key is None:
            self._key = self._img.tobytes()
        return self._key

    def __call__(self, point: int) -> int:
        return int(self._img[point])

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation._wrap(other._img[self._img])

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = np.arange(self.degree, dtype=_DTYPE)
        base = self._img
        while k:
            if k & 1:
                result = base[result]
            base = base[base]
            k >>= 1
        return Permutation._wrap(result)

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self._img)
        inv[self._img] = np.arange(self.degree, dtype=_DTYPE)
        return Permutation._wrap(inv)

    def conjugate(self, by: "Permutation") -> "Permutation":
        """Return ``by^-1 * self * by``."""
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._img, np.arange(self.degree)))

    def cycle_lengths(self) -> list[int]:
        img = self._img
        seen = np.zeros(self.degree, dtype=bool)
        lengths = []
        for start in range(self.degree):
            if seen[start]:
                continue
            n = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = img[x]
                n += 1
            lengths.append(n)
        return lengths

    def order(self) -> int:
        return math.lcm(*self.cycle_lengths()) if self.degree else 1

    def support(self) -> np.ndarray:
        return np.flatnonzero(self._img != np.arange(self.degree))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        img = self._img
        seen = set()
        parts = []
        for i in range(self.degree):
            if i in seen or img[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = int(img[i])
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = int(img[j])
            parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts) or "()"


def perm_order_array(arr: np.ndarray) -> int:
    return Permutation._wrap(arr).order()


# ---------------------------------------------------------------------------
# stabilizer chain


@dataclass
class _Level:
    point: int
    degree: int
    gens: list[np.ndarray] = field(default_factory=list)
    invs: list[np.ndarray] = field(default_factory=list)
    sv: np.ndarray = None  # type: ignore[assignment]
    orbit: np.ndarray = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.sv is None:
            self._rebuild()

    def add(self, g: np.ndarray, ginv: np.ndarray) -> None:
        self.gens.append(g)
        self.invs.append(ginv)
        self._rebuild()

    def _rebuild(self) -> None:
        sv = np.full(self.degree, -1, dtype=np.int32)
        sv[self.point] = -2
        order = [np.array([self.point], dtype=_DTYPE)]
        frontier = order[0]
        while frontier.size:
            found = []
            for k, g in enumerate(self.gens):
                img = g[frontier]
                img = img[sv[img] == -1]
                if img.size:
                    img = np.unique(img)
                    sv[img] = k
                    found.append(img)
            frontier = np.concatenate(found) if found else np.empty(0, dtype=_DTYPE)
            if frontier.size:
                order.append(frontier)
        self.sv = sv
        self.orbit = np.concatenate(order)

    @property
    def size(self) -> int:
        return int(self.orbit.size)

    def transversal(self, beta: int) -> np.ndarray:
        """Element mapping the base point to ``beta``."""
        word = []
        while beta != self.point:
            k = int(self.sv[beta])
            if k < 0:
                raise ValueError("point outside basic orbit")
            word.append(k)
            beta = int(self.invs[k][beta])
        u = np.arange(self.degree, dtype=_DTYPE)
        for k in reversed(word):
            u = self.gens[k][u]
        return u

    def transversal_table(self) -> np.ndarray:
        """All transversal elements, row ``i`` maps the base point to ``orbit[i]``."""
        table = np.empty((self.size, self.degree), dtype=_DTYPE)
        index = {int(b): i for i, b in enumerate(self.orbit)}
        table[0] = np.arange(self.degree)
        for i in range(1, self.size):
            beta = int(self.orbit[i])
            k = int(self.sv[beta])
            parent = int(self.invs[k][beta])
            table[i] = self.gens[k][table[index[parent]]]
        return table


class _Chain:
    """Randomized Schreier-Sims; see :func:`freeze`."""

    def __init__(self, degree: int, levels: list[_Level], certified: bool) -> None:
        self.degree = degree
        self.levels = levels
        self.certified = certified

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def order(self) -> int:
        return math.prod(lv.size for lv in self.levels)

    def sift(self, h: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            beta = int(h[lv.point])
            if lv.sv[beta] == -1:
                return h, i
            while beta != lv.point:
                k = int(lv.sv[beta])
                inv = lv.invs[k]
                h = inv[h]
                beta = int(inv[beta])
        return h, len(self.levels)


def _is_id(a: np.ndarray) -> bool:
    return bool(np.array_equal(a, np.arange(a.size)))


def _inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(a.size, dtype=a.dtype)
    return inv


class _ProductReplacement:
    def __init__(self, gens: list[np.ndarray], degree: int, rng: random.Random) -> None:
        self.rng = rng
        if not gens:
            gens = [np.arange(degree, dtype=_DTYPE)]
        slots = [g.copy() for g in gens]
        while len(slots) < 10:
            slots.extend(g.copy() for g in gens)
        self.slots = slots[: max(10, len(gens))]
        self.acc = np.arange(degree, dtype=_DTYPE)
        for _ in range(50):
            self.next()

    def next(self) -> np.ndarray:
        s = self.slots
        i, j = self.rng.sample(range(len(s)), 2)
        if self.rng.random() < 0.5:
            s[i] = s[j][s[i]]
        else:
            s[i] = s[i][s[j]]
        self.acc = s[i][self.acc]
        return self.acc


def _build_chain(
    degree: int,
    gens: list[np.ndarray],
    seed: int,
    order: int | None,
    max_order: int | None,
    base: Sequence[int] | None,
    verify: bool,
) -> _Chain:
    rng = random.Random(seed)
    levels = [_Level(int(b), degree) for b in (base or [])]
    chain = _Chain(degree, levels, certified=False)

    def absorb(h: np.ndarray) -> bool:
        res, j = chain.sift(h)
        if j == len(levels) and _is_id(res):
            return False
        if j == len(levels):
            moved = np.flatnonzero(res != np.arange(degree))
            levels.append(_Level(int(moved[0]), degree))
        inv = _inverse(res)
        for i in range(j + 1):
            levels[i].add(res, inv)
        return True

    gens = [g for g in gens if not _is_id(g)]
    for g in gens:
        absorb(g)
    target = order if order is not None else max_order

    def done() -> bool:
        return target is not None and chain.order() == target

    if not gens:
        chain.certified = True
        return chain
    pr = _ProductReplacement(gens, degree, rng)
    streak = 0
    idle = 0
    while not done():
        if absorb(pr.next()):
            streak = 0
            idle = 0
        else:
            streak += 1
            idle += 1
        if order is not None and chain.order() > order:
            raise ValueError(f"group order exceeds the stated order {order}")
        if order is not None and idle > 400:
            raise ValueError(f"group order {chain.order()} never reached stated order {order}")
        if order is None and streak >= 40:
            if verify and _verification_cost(chain) <= 4_000_000:
                if not _schreier_verify(chain, absorb):
                    chain.certified = True
                    break
                streak = 0
            else:
                break
    if done():
        chain.certified = True
    # drop trailing levels with trivial orbits created by base prefixes
    while len(levels) > 1 and levels[-1].size == 1 and not levels[-1].gens:
        levels.pop()
    return chain


def _verification_cost(chain: _Chain) -> int:
    return sum(lv.size * max(1, len(lv.gens)) for lv in chain.levels) * max(1, chain.degree // 64)


def _schreier_verify(chain: _Chain, absorb) -> bool:
    """Sift every Schreier generator; return True if any failed (and was absorbed)."""
    for i in range(len(chain.levels) - 1, -1, -1):
        lv = chain.levels[i]
        table = lv.transversal_table()
        index = {int(b): r for r, b in enumerate(lv.orbit)}
        for r, beta in enumerate(lv.orbit):
            u = table[r]
            for g in list(lv.gens):
                ug = g[u]
                gamma = int(ug[lv.point])
                w = _inverse(table[index[gamma]])[ug]
                res, j = chain.sift(w, i + 1)
                if j < len(chain.levels) or not _is_id(res):
                    absorb(w)
                    return True
    return False


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """Permutation group given by generators; freeze to attach a stabilizer chain."""

    def __init__(
        self,
        degree: int,
        generators: Iterable[Permutation] = (),
        name: str = "",
    ) -> None:
        if degree > MAX_DEGREE:
            raise ResourceError(f"degree {degree} exceeds {MAX_DEGREE}")
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in group of degree {degree}")
        self.degree = degree
        self.generators = gens
        self.name = name
        self._chain: _Chain | None = None

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        if self._chain is not None:
            return f"<{label} degree={self.degree} order={self.order}>"
        return f"<{label} degree={self.degree} gens={len(self.generators)}>"

    @property
    def frozen(self) -> bool:
        return self._chain is not None

    def _need_chain(self) -> _Chain:
        if self._chain is None:
            raise StateError("group is not frozen")
        return self._chain

    def freeze(
        self,
        seed: int = 0,
        *,
        order: int | None = None,
        max_order: int | None = None,
        base: Sequence[int] | None = None,
        verify: bool = True,
    ) -> "PermGroup":
        return freeze(self, seed, order=order, max_order=max_order, base=base, verify=verify)

    @property
    def order(self) -> int:
        return self._need_chain().order()

    @property
    def base(self) -> list[int]:
        return self._need_chain().base

    @property
    def certified(self) -> bool:
        return self._need_chain().certified

    @property
    def strong_generators(self) -> list[Permutation]:
        chain = self._need_chain()
        return [Permutation._wrap(g) for g in chain.levels[0].gens] if chain.levels else []

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, g: Permutation) -> bool:
        chain = self._need_chain()
        if g.degree != self.degree:
            return False
        res, j = chain.sift(g.array)
        return j == len(chain.levels) and _is_id(res)

    __contains__ = contains

    def transversal(self, point: int) -> Permutation:
        """An element mapping the first base point to ``point``."""
        chain = self._need_chain()
        if not chain.levels:
            if point != 0 and self.degree:
                raise ValueError("trivial group")
            return self.identity()
        return Permutation._wrap(chain.levels[0].transversal(point))

    def random_element(self, rng: random.Random) -> Permutation:
        """Uniform random element built from random transversal choices."""
        chain = self._need_chain()
        g = np.arange(self.degree, dtype=_DTYPE)
        for lv in reversed(chain.levels):
            beta = int(lv.orbit[rng.randrange(lv.size)])
            g = lv.transversal(beta)[g]
        return Permutation._wrap(g)

    def element_array(self, limit: int = 250_000) -> np.ndarray:
        """All elements as rows of an array (|G| x degree)."""
        chain = self._need_chain()
        if chain.order() > limit:
            raise ResourceError(f"group of order {chain.order()} exceeds element limit {limit}")
        elems = np.arange(self.degree, dtype=_DTYPE)[None, :]
        for lv in reversed(chain.levels):
            table = lv.transversal_table()
            elems = np.concatenate([t[elems] for t in table], axis=0)
        return elems

    def elements(self, limit: int = 250_000) -> list[Permutation]:
        return [Permutation._wrap(row) for row in self.element_array(limit)]

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(orbit(self, 0)) == self.degree


def freeze(
    group: PermGroup,
    seed: int = 0,
    *,
    order: int | None = None,
    max_order: int | None = None,
    base: Sequence[int] | None = None,
    verify: bool = True,
) -> PermGroup:
    """Return a frozen copy of ``group`` with an exact stabilizer chain.

    ``order`` (known exactly) or ``max_order`` (an upper bound) certify the
    chain as soon as they are reached.  Otherwise random sifting runs until 40
    consecutive elements sift to the identity, followed by a deterministic
    pass sifting every Schreier generator when that is affordable.
    """
    chain = _build_chain(
        group.degree,
        [g.array for g in group.generators],
        seed,
        order,
        max_order,
        base,
        verify,
    )
    out = PermGroup(group.degree, group.generators, group.name)
    out._chain = chain
    return out


def _from_chain(degree: int, levels: list[_Level], name: str, certified: bool) -> PermGroup:
    gens = [Permutation._wrap(g) for g in levels[0].gens] if levels else []
    out = PermGroup(degree, gens, name)
    out._chain = _Chain(degree, levels, certified)
    return out


# ---------------------------------------------------------------------------
# standard constructions


def symmetric_group(n: int) -> PermGroup:
    if n <= 1:
        return PermGroup(max(n, 1), [], f"Sym({n})").freeze()
    gens = [Permutation.from_cycles(n, [0, 1]), Permutation.from_cycles(n, list(range(n)))]
    return PermGroup(n, gens, f"Sym({n})").freeze(order=math.factorial(n))


def alternating_group(n: int) -> PermGroup:
    if n <= 2:
        return PermGroup(max(n, 1), [], f"Alt({n})").freeze()
    gens = [Permutation.from_cycles(n, [0, 1, 2])]
    if n > 3:
        cyc = list(range(n)) if n % 2 else list(range(1, n))
        gens.append(Permutation.from_cycles(n, cyc))
    return PermGroup(n, gens, f"Alt({n})").freeze(order=math.factorial(n) // 2)


def subgroup(group: PermGroup, gens: Iterable[Permutation], name: str = "", seed: int = 0,
             order: int | None = None) -> PermGroup:
    sub = PermGroup(group.degree, gens, name)
    return sub.freeze(seed, order=order, max_order=group.order if group.frozen and order is None else None)


# ---------------------------------------------------------------------------
# orbits


def orbit(group: PermGroup, point: int) -> list[int]:
    """Sorted orbit of ``point`` under the generators."""
    if not 0 <= point < group.degree:
        raise ValueError(f"point {point} out of range for degree {group.degree}")
    seen = np.zeros(group.degree, dtype=bool)
    seen[point] = True
    frontier = np.array([point], dtype=_DTYPE)
    gens = [g.array for g in group.generators]
    while frontier.size:
        nxt = []
        for g in gens:
            img = g[frontier]
            img = img[~seen[img]]
            if img.size:
                img = np.unique(img)
                seen[img] = True
                nxt.append(img)
        frontier = np.concatenate(nxt) if nxt else np.empty(0, dtype=_DTYPE)
    return np.flatnonzero(seen).tolist()


def orbits(group: PermGroup) -> list[list[int]]:
    """All orbits, each sorted, ordered by smallest element."""
    n = group.degree
    if not group.generators:
        return [[i] for i in range(n)]
    rows = np.concatenate([np.arange(n)] * len(group.generators))
    cols = np.concatenate([g.array for g in group.generators])
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    first: dict[int, list[int]] = {}
    for point, lab in enumerate(labels.tolist()):
        first.setdefault(lab, []).append(point)
    return sorted(first.values(), key=lambda o: o[0])


def point_stabilizer(group: PermGroup, point: int, seed: int = 0) -> PermGroup:
    """Stabilizer of ``point`` with its chain; |G| = |orbit(point)| * |G_point|."""
    chain = group._need_chain()
    if not 0 <= point < group.degree:
        raise ValueError(f"point {point} out of range")
    if chain.levels and chain.levels[0].point == point:
        levels = chain.levels[1:]
        return _from_chain(group.degree, levels, f"{group.name}_{point}", chain.certified)
    if not chain.levels:
        return group
    rebased = freeze(group, seed, order=group.order, base=[point])
    levels = rebased._chain.levels[1:]
    return _from_chain(group.degree, levels, f"{group.name}_{point}", chain.certified)


def setwise_image(block: np.ndarray, g: np.ndarray) -> np.ndarray:
    return np.sort(g[block])


# ---------------------------------------------------------------------------
# blocks


@dataclass(frozen=True)
class BlockSystem:
    """Partition of the points into blocks permuted by the group."""

    assignment: tuple[int, ...]
    count: int

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for pt, b in enumerate(self.assignment):
            out[b].append(pt)
        return out

    def is_preserved_by(self, g: Permutation) -> bool:
        assign = np.array(self.assignment)
        img = g.array
        for block in self.blocks():
            if len(set(assign[img[block]].tolist())) != 1:
                return False
        return True


def _largest_proper_divisor(n: int) -> int:
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return n // d
    return 1


def minimal_block(group: PermGroup, point: int, other: int,
                  stab_gens: list[np.ndarray] | None = None, cap: int | None = None) -> list[int]:
    """Smallest block containing ``point`` and ``other``.

    It is the orbit of ``point`` under the subgroup generated by the point
    stabilizer and any element sending ``point`` to ``other``.  With ``cap`` the
    closure stops as soon as it exceeds ``cap`` points and returns everything.
    """
    chain = group._need_chain()
    if stab_gens is None:
        stab = point_stabilizer(group, point)
        stab_gens = [g.array for g in stab.generators]
    if chain.levels and chain.levels[0].point == point:
        u = chain.levels[0].transversal(other)
    else:
        u = point_stabilizer_transporter(group, point, other).array
    gens = [g.tolist() for g in stab_gens] + [u.tolist()]
    seen = bytearray(group.degree)
    seen[point] = 1
    found = [point]
    i = 0
    while i < len(found):
        x = found[i]
        i += 1
        for g in gens:
            y = g[x]
            if not seen[y]:
                seen[y] = 1
                found.append(y)
        if cap is not None and len(found) > cap:
            return list(range(group.degree))
    return sorted(found)


def point_stabilizer_transporter(group: PermGroup, a: int, b: int) -> Permutation:
    """Some element of ``group`` mapping ``a`` to ``b``."""
    chain = group._need_chain()
    first = chain.levels[0]
    if first.sv[a] == -1 or first.sv[b] == -1:
        raise ValueError("points lie in different orbits of the first base point")
    ua = first.transversal(a)
    ub = first.transversal(b)
    return Permutation._wrap(ub[_inverse(ua)])


def block_system_from_block(group: PermGroup, block: Sequence[int]) -> BlockSystem:
    n = group.degree
    assign = np.full(n, -1, dtype=np.int64)
    blocks = [np.array(sorted(block), dtype=_DTYPE)]
    assign[blocks[0]] = 0
    i = 0
    gens = [g.array for g in group.generators]
    while i < len(blocks):
        b = blocks[i]
        i += 1
        for g in gens:
            img = g[b]
            labels = assign[img]
            if labels[0] == -1:
                if (labels != -1).any():
                    raise ValueError("not a block")
                assign[img] = len(blocks)
                blocks.append(np.sort(img))
            elif (labels != labels[0]).any():
                raise ValueError("not a block")
    if (assign == -1).any():
        raise ValueError("group is not transitive")
    return BlockSystem(tuple(int(x) for x in assign), len(blocks))


def is_primitive(group: PermGroup) -> tuple[bool, BlockSystem | None]:
    """Primitivity test by minimal blocks seeded at one point per suborbit."""
    chain = group._need_chain()
    n = group.degree
    if not group.is_transitive():
        raise ValueError("group is not transitive")
    if n <= 3 or all(n % k for k in range(2, math.isqrt(n) + 1)):
        # block sizes divide the degree, so prime degree forces primitivity
        return True, None
    alpha = chain.levels[0].point
    stab = point_stabilizer(group, alpha)
    stab_gens = [g.array for g in stab.generators]
    cap = _largest_proper_divisor(n)
    for orb in orbits(stab):
        if orb[0] == alpha and len(orb) == 1:
            continue
        block = minimal_block(group, alpha, orb[0], stab_gens, cap)
        if len(block) < n:
            return False, block_system_from_block(group, block)
    return True, None


# ---------------------------------------------------------------------------
# cosets


def _lexmin_row(rows: np.ndarray) -> np.ndarray:
    cand = rows
    for col in range(rows.shape[1]):
        if cand.shape[0] == 1:
            break
        column = cand[:, col]
        cand = cand[column == column.min()]
    return cand[0]


def _lexmin_index(rows: np.ndarray) -> int:
    order = np.lexsort(rows.T[::-1])
    return int(order[0])


def _row_codes(cols: np.ndarray, degree: int) -> np.ndarray | None:
    """Injective integer codes of short rows, or None when they would overflow."""
    k = cols.shape[1]
    if degree**k >= 2**62:
        return None
    weights = degree ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return cols.astype(np.int64) @ weights


def _distinguishing_prefix(elems: np.ndarray) -> int:
    """Length of the shortest column prefix on which the rows are pairwise distinct."""
    m, n = elems.shape
    for c in range(1, n + 1):
        prefix = np.ascontiguousarray(elems[:, :c])
        if np.unique(prefix.view(np.dtype((np.void, prefix.dtype.itemsize * c)))).size == m:
            return c
    return n


@dataclass
class CosetAction:
    """Action of a group on the right cosets of a subgroup."""

    group: PermGroup
    representatives: list[Permutation]
    kernel_order: int

    @property
    def degree(self) -> int:
        return self.group.degree


def coset_action(
    group: PermGroup,
    sub: PermGroup,
    *,
    bound: int = DEFAULT_COSET_BOUND,
    seed: int = 0,
) -> CosetAction:
    """Permutation action on right cosets ``Hg``, each named by its lexicographically least element."""
    group._need_chain()
    sub._need_chain()
    for h in sub.generators:
        if h not in group:
            raise ValueError("subgroup generator not contained in the group")
    index, rem = divmod(group.order, sub.order)
    if rem:
        raise ValueError("subgroup order does not divide group order")
    if index > bound:
        raise ResourceError(f"index {index} exceeds coset bound {bound}")
    h_elems = sub.element_array()
    # rows of H are distinct on this prefix, hence so are the rows of any coset;
    # the lexicographic minimum is therefore decided on the prefix alone
    c = _distinguishing_prefix(h_elems)
    h_prefix = h_elems[:, :c]
    gens = [g.array for g in group.generators]

    def canonical(x: np.ndarray) -> np.ndarray:
        cols = x[h_prefix]
        codes = _row_codes(cols, group.degree)
        j = int(np.argmin(codes)) if codes is not None else _lexmin_index(cols)
        return x[h_elems[j]]

    reps = [_lexmin_row(h_elems)]
    lookup = {reps[0].tobytes(): 0}
    images = [np.empty(index, dtype=_DTYPE) for _ in gens]
    i = 0
    while i < len(reps):
        rep = reps[i]
        for k, g in enumerate(gens):
            # H*(rep*g) consists of h*rep*g, whose image arrays are g[rep][h]
            canon = canonical(g[rep])
            key = canon.tobytes()
            j = lookup.get(key)
            if j is None:
                j = len(reps)
                if j >= index:
                    raise RuntimeError("coset enumeration overflow")
                lookup[key] = j
                reps.append(canon)
            images[k][i] = j
        i += 1
    if len(reps) != index:
        raise RuntimeError(f"found {len(reps)} cosets, expected {index}")
    action_gens = [Permutation._wrap(img) for img in images]
    action = PermGroup(index, action_gens, f"{group.name} on {group.name}/{sub.name}")
    action = action.freeze(seed, max_order=group.order)
    kernel = group.order // action.order
    return CosetAction(action, [Permutation._wrap(r) for r in reps], kernel)


# ---------------------------------------------------------------------------
# normalizers


def _element_set_key(elems: np.ndarray, base: Sequence[int], degree: int) -> bytes:
    # group elements are determined by their base images
    cols = elems[:, list(base)] if base else elems[:, :1]
    codes = _row_codes(cols, degree)
    if codes is not None:
        return np.sort(codes).tobytes()
    order = np.lexsort(cols.T[::-1])
    return cols[order].tobytes()


def subgroup_normalizer_small(
    group: PermGroup,
    sub: PermGroup,
    *,
    bound: int = DEFAULT_NORMALIZER_BOUND,
    seed: int = 0,
) -> PermGroup:
    """N_G(H) for |H| <= 200 via the conjugation orbit of H's element set."""
    group._need_chain()
    sub._need_chain()
    if sub.order > 200:
        raise ResourceError(f"|H| = {sub.order} exceeds 200")
    h_elems = sub.element_array()
    gens = [g.array for g in group.generators]
    ginvs = [_inverse(g) for g in gens]
    # conjugate of element set by g: g^-1 h g has images g[h[ginv]]
    base = group.base
    start = _element_set_key(h_elems, base, group.degree)
    keys = {start: 0}
    sets = [h_elems]
    parent: list[tuple[int, int]] = [(-1, -1)]
    transitions: list[tuple[int, int, int]] = []
    i = 0
    while i < len(sets):
        cur = sets[i]
        for k, (g, gi) in enumerate(zip(gens, ginvs)):
            conj = g[cur[:, gi]]
            key = _element_set_key(conj, base, group.degree)
            j = keys.get(key)
            if j is None:
                j = len(sets)
                if j >= bound:
                    raise ResourceError(f"conjugation orbit exceeds {bound}")
                keys[key] = j
                sets.append(conj)
                parent.append((i, k))
            else:
                transitions.append((i, k, j))
        i += 1
    orbit_size = len(sets)
    n_order, rem = divmod(group.order, orbit_size)
    if rem:
        raise RuntimeError("orbit size does not divide |G|")

    # transversal words to each orbit point
    def rep(idx: int) -> np.ndarray:
        word = []
        while idx:
            idx, k = parent[idx]
            word.append(k)
        u = np.arange(group.degree, dtype=_DTYPE)
        for k in reversed(word):
            u = gens[k][u]
        return u

    cache: dict[int, np.ndarray] = {}

    def rep_cached(idx: int) -> np.ndarray:
        if idx not in cache:
            cache[idx] = rep(idx)
        return cache[idx]

    rng = random.Random(seed)
    norm_gens = [g.array for g in sub.generators]
    current = PermGroup(group.degree, [Permutation._wrap(g) for g in norm_gens]).freeze(
        seed, max_order=n_order
    )
    rng.shuffle(transitions)
    for i, k, j in transitions:
        if current.order == n_order:
            break
        # Schreier generator u_i * g_k * u_j^-1
        s = _inverse(rep_cached(j))[gens[k][rep_cached(i)]]
        if _is_id(s) or Permutation._wrap(s) in current:
            continue
        norm_gens.append(s)
        current = PermGroup(group.degree, [Permutation._wrap(g) for g in norm_gens]).freeze(
            seed, max_order=n_order
        )
    if current.order != n_order:
        raise RuntimeError("Schreier generators did not reach the normalizer order")
    current.name = f"N({sub.name})"
    return current


# ---------------------------------------------------------------------------
# fingerprints


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism invariants used to recognize small groups."""

    order: int
    order_histogram: tuple[tuple[int, int], ...] | None = None
    abelian: bool | None = None
    derived_order: int | None = None

    def describe(self) -> str:
        if self.order_histogram is None:
            return f"order {self.order}"
        hist = " ".join(f"{o}^{c}" for o, c in self.order_histogram)
        return f"order {self.order} [{hist}] derived {self.derived_order}"


def _orders_of_rows(elems: np.ndarray) -> list[int]:
    # element orders via repeated composition, vectorized over all elements
    m, n = elems.shape
    ident = np.arange(n)
    orders = np.zeros(m, dtype=np.int64)
    power = elems.copy()
    k = 1
    alive = np.ones(m, dtype=bool)
    while alive.any():
        done = alive & (power == ident).all(axis=1)
        orders[done] = k
        alive &= ~done
        if not alive.any():
            break
        idx = np.flatnonzero(alive)
        power[idx] = elems[idx][np.arange(idx.size)[:, None], power[idx]]
        k += 1
    return orders.tolist()


def element_order_histogram(group: PermGroup) -> tuple[tuple[int, int], ...]:
    elems = group.element_array()
    return tuple(sorted(Counter(_orders_of_rows(elems)).items()))


def normal_closure(group: PermGroup, gens: Iterable[Permutation], seed: int = 0) -> PermGroup:
    gens = [g for g in gens if not g.is_identity()]
    current = PermGroup(group.degree, gens).freeze(seed, max_order=group.order)
    changed = True
    while changed:
        changed = False
        for h in list(current.generators):
            for g in group.generators:
                c = h.conjugate(g)
                if c not in current:
                    gens.append(c)
                    current = PermGroup(group.degree, gens).freeze(seed, max_order=group.order)
                    changed = True
    return current


def derived_subgroup(group: PermGroup, seed: int = 0) -> PermGroup:
    gens = group.generators
    comms = [a.inverse() * b.inverse() * a * b for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(group, comms, seed)


def fingerprint(group: PermGroup) -> Fingerprint:
    order = group.order
    if order > 10_000:
        return Fingerprint(order)
    hist = element_order_histogram(group)
    gens = group.generators
    abelian = all((a * b) == (b * a) for a in gens for b in gens)
    derived = 1 if abelian else derived_subgroup(group).order
    return Fingerprint(order, hist, abelian, derived)


def random_subgroup_search(
    group: PermGroup,
    target: Fingerprint,
    seed: int = 0,
    *,
    budget: int = 4_000,
    generator_orders: Sequence[tuple[int, int]] | None = None,
    product_orders: Sequence[int] | None = None,
) -> PermGroup:
    """Seeded search for a 2-generated subgroup with the target fingerprint.

    Each attempt draws random elements of prescribed orders (powers of random
    group elements) and closes them, abandoning the closure as soon as it
    outgrows the target.  ``product_orders`` filters pairs by the order of
    ``a*b`` before the closure is attempted.
    """
    group._need_chain()
    if target.order > 10_000:
        raise ResourceError("target order exceeds 10 000")
    if target.order_histogram is None:
        raise ValueError("target fingerprint needs an element-order histogram")
    rng = random.Random(seed)
    orders = [o for o, _ in target.order_histogram if o > 1]
    if generator_orders is None:
        generator_orders = [(a, b) for a in orders for b in orders if a <= b]
    generator_orders = list(generator_orders)
    if not generator_orders:
        if target.order == 1:
            return PermGroup(group.degree, [], "1").freeze()
        raise SearchFailure("no generator orders available")
    def element_of_order(k: int) -> Permutation | None:
        for _ in range(60):
            x = group.random_element(rng)
            o = x.order()
            if o % k == 0:
                return x ** (o // k)
        return None

    for _ in range(budget):
        oa, ob = rng.choice(generator_orders)
        a = element_of_order(oa)
        b = element_of_order(ob)
        if a is None or b is None:
            continue
        if product_orders is not None and (a * b).order() not in product_orders:
            continue
        size = _bounded_closure_size(group.degree, [a.array, b.array], target.order)
        if size != target.order:
            continue
        cand = PermGroup(group.degree, [a, b], "").freeze(seed, order=target.order)
        if fingerprint(cand) == target:
            return cand
    raise SearchFailure(f"no subgroup with fingerprint {target.describe()} after {budget} attempts")


def _bounded_closure_size(degree: int, gens: list[np.ndarray], cap: int) -> int:
    """Number of elements generated, or cap+1 if it exceeds ``cap``."""
    ident = np.arange(degree, dtype=_DTYPE)
    seen = {ident.tobytes()}
    queue = [ident]
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        for g in gens:
            y = g[x]
            k = y.tobytes()
            if k not in seen:
                seen.add(k)
                queue.append(y)
                if len(seen) > cap:
                    return cap + 1
    return len(seen)


# ---------------------------------------------------------------------------
# generator files


def parse_generator_text(text: str) -> tuple[int, list[Permutation]]:
    """Parse the ``degree:``/``gens:`` format (1-based images, ``#`` comments)."""
    lines = [(i + 1, raw) for i, raw in enumerate(text.splitlines())]
    content = [(n, s) for n, s in lines if s.strip() and not s.lstrip().startswith("#")]

    def header(idx: int, label: str) -> int:
        if idx >= len(content):
            last = lines[-1][0] + 1 if lines else 1
            raise GeneratorFileError(f"missing '{label}:' header", last)
        n, s = content[idx]
        key, sep, val = s.partition(":")
        if not sep or key.strip() != label:
            raise GeneratorFileError(f"expected '{label}: <int>'", n, 1)
        try:
            return int(val.strip())
        except ValueError:
            raise GeneratorFileError(f"'{label}' value is not an integer", n, len(key) + 2) from None

    degree = header(0, "degree")
    count = header(1, "gens")
    if degree <= 0:
        raise GeneratorFileError("degree must be positive", content[0][0])
    if degree > MAX_DEGREE:
        raise ResourceError(f"degree {degree} exceeds {MAX_DEGREE}")
    gens = []
    for k in range(count):
        idx = 2 + k
        if idx >= len(content):
            last = lines[-1][0] + 1 if lines else 1
            raise GeneratorFileError(f"expected {count} generators, found {k}", last)
        n, s = content[idx]
        tokens = s.split()
        values = []
        col = 1
        pos = 0
        for tok in tokens:
            pos = s.index(tok, pos)
            col = pos + 1
            try:
                v = int(tok)
            except ValueError:
                raise GeneratorFileError(f"bad image {tok!r}", n, col) from None
            if not 1 <= v <= degree:
                raise GeneratorFileError(f"image {v} outside 1..{degree}", n, col)
            values.append(v - 1)
            pos += len(tok)
        if len(values) != degree:
            raise GeneratorFileError(f"expected {degree} images, found {len(values)}", n, len(s) + 1)
        try:
            gens.append(Permutation(values))
        except ValueError:
            raise GeneratorFileError("images do not form a bijection", n, 1) from None
    if len(content) > 2 + count:
        n, _ = content[2 + count]
        raise GeneratorFileError("unexpected content after generators", n, 1)
    return degree, gens


def read_generator_file(path: str | Path) -> PermGroup:
    degree, gens = parse_generator_text(Path(path).read_text())
    return PermGroup(degree, gens, Path(path).stem)


def format_generator_text(group: PermGroup, comment: str = "") -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"degree: {group.degree}")
    out.append(f"gens: {len(group.generators)}")
    for g in group.generators:
        out.append(" ".join(str(int(x) + 1) for x in g.array))
    return "\n".join(out) + "\n"
