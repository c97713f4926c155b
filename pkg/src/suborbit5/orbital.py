"""Suborbits, orbital digraphs and the coset correspondence for length-d suborbits."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import PreconditionError, SearchFailure
from .perm import (
    PermGroup,
    Permutation,
    freeze,
    is_primitive,
    orbits,
    point_stabilizer,
    subgroup_normalizer_small,
)

HYPOTHESIS_ORDER_BOUND = 10_000


# ---------------------------------------------------------------------------
# suborbits


@dataclass(frozen=True)
class SuborbitReport:
    """Orbits of ``G_v``, each given by its least point and its length."""

    base: int
    suborbits: tuple[tuple[int, int], ...]

    @property
    def lengths(self) -> list[int]:
        return sorted(length for _, length in self.suborbits)

    def of_length(self, d: int) -> list[int]:
        return [rep for rep, length in self.suborbits if length == d]

    def describe(self) -> str:
        counts: dict[int, int] = {}
        for length in self.lengths:
            counts[length] = counts.get(length, 0) + 1
        return " ".join(f"{k}^{c}" if c > 1 else str(k) for k, c in sorted(counts.items()))


def _rooted(G: PermGroup, v: int, seed: int = 0) -> PermGroup:
    """``G`` with ``v`` as its first base point."""
    if G.base and G.base[0] == v:
        return G
    return freeze(G, seed, order=G.order, base=[v])


def suborbits(G: PermGroup, v: int = 0, seed: int = 0) -> SuborbitReport:
    if not G.is_transitive():
        raise ValueError("group is not transitive")
    stab = point_stabilizer(G, v, seed)
    orbs = orbits(stab)
    return SuborbitReport(v, tuple((orb[0], len(orb)) for orb in orbs))


def _suborbit_of(G: PermGroup, v: int, w: int, seed: int = 0) -> np.ndarray:
    from .perm import orbit

    stab = point_stabilizer(G, v, seed)
    return np.array(orbit(stab, w), dtype=np.int64)


# ---------------------------------------------------------------------------
# digraphs


@dataclass
class Digraph:
    """Vertex count and a sorted, duplicate-free arc array of shape (m, 2)."""

    n: int
    arcs: np.ndarray

    def __post_init__(self) -> None:
        arcs = np.asarray(self.arcs, dtype=np.int64).reshape(-1, 2)
        if arcs.size and (arcs.min() < 0 or arcs.max() >= self.n):
            raise ValueError("arc endpoint out of range")
        self.arcs = np.unique(arcs, axis=0) if arcs.size else arcs

    @classmethod
    def from_arcs(cls, n: int, arcs: Sequence[tuple[int, int]]) -> "Digraph":
        return cls(n, np.array(list(arcs), dtype=np.int64).reshape(-1, 2))

    @property
    def arc_count(self) -> int:
        return int(self.arcs.shape[0])

    @property
    def symmetric(self) -> bool:
        rev = self.arcs[:, ::-1]
        return self.arc_count == 0 or np.array_equal(np.unique(rev, axis=0), self.arcs)

    def reverse(self) -> "Digraph":
        return Digraph(self.n, self.arcs[:, ::-1])

    def out_valencies(self) -> np.ndarray:
        return np.bincount(self.arcs[:, 0], minlength=self.n)

    def in_valencies(self) -> np.ndarray:
        return np.bincount(self.arcs[:, 1], minlength=self.n)

    def has_loops(self) -> bool:
        return bool((self.arcs[:, 0] == self.arcs[:, 1]).any())

    def neighbours(self) -> list[np.ndarray]:
        starts = np.searchsorted(self.arcs[:, 0], np.arange(self.n + 1))
        return [self.arcs[starts[i] : starts[i + 1], 1] for i in range(self.n)]

    def edges(self) -> np.ndarray:
        """Each undirected edge once, as rows ``u < v``."""
        e = self.arcs[self.arcs[:, 0] < self.arcs[:, 1]]
        return e

    def same_arcs(self, other: "Digraph") -> bool:
        return self.n == other.n and np.array_equal(self.arcs, other.arcs)

    def key(self) -> bytes:
        return self.arcs.tobytes()

    def is_preserved_by(self, g: Permutation | np.ndarray) -> bool:
        img = g.array if isinstance(g, Permutation) else np.asarray(g)
        mapped = img[self.arcs]
        return np.array_equal(np.unique(mapped, axis=0), self.arcs)

    def to_text(self) -> str:
        if self.symmetric:
            rows = self.edges()
            lines = [f"{self.n} {rows.shape[0]}"]
        else:
            rows = self.arcs
            lines = [f"{self.n} {rows.shape[0]}", "directed"]
        lines.extend(f"{u} {v}" for u, v in rows.tolist())
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def from_text(cls, text: str) -> "Digraph":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        n, m = int(lines[0][0]), int(lines[0][1])
        directed = len(lines) > 1 and lines[1] == ["directed"]
        body = lines[2:] if directed else lines[1:]
        if len(body) != m:
            raise ValueError(f"expected {m} arc lines, found {len(body)}")
        arcs = np.array([[int(a), int(b)] for a, b in body], dtype=np.int64).reshape(-1, 2)
        if not directed:
            arcs = np.concatenate([arcs, arcs[:, ::-1]])
        return cls(n, arcs)


def orbital_digraph(G: PermGroup, pair: tuple[int, int], seed: int = 0) -> Digraph:
    """The digraph whose arc set is the G-orbit of ``pair``."""
    u, v = pair
    if u == v:
        raise ValueError("orbital digraphs need distinct endpoints")
    if not G.is_transitive():
        raise ValueError("group is not transitive")
    rooted = _rooted(G, u, seed)
    level = rooted._chain.levels[0]
    delta = _suborbit_of(rooted, u, v, seed)
    n = G.degree
    out = np.empty((n, delta.size), dtype=np.int64)
    out[u] = delta
    # images of the out-neighbourhood along the Schreier tree, in BFS order
    for beta in level.orbit[1:].tolist():
        k = int(level.sv[beta])
        parent = int(level.invs[k][beta])
        out[beta] = level.gens[k][out[parent]]
    tails = np.repeat(np.arange(n), delta.size)
    return Digraph(n, np.stack([tails, out.reshape(-1)], axis=1))


def orbital_digraph_bruteforce(G: PermGroup, pair: tuple[int, int]) -> Digraph:
    """Orbit of ``pair`` on ordered pairs by breadth-first search over the generators."""
    u, v = pair
    if u == v:
        raise ValueError("orbital digraphs need distinct endpoints")
    n = G.degree
    seen = {u * n + v}
    queue = [(u, v)]
    gens = [g.array.tolist() for g in G.generators]
    i = 0
    while i < len(queue):
        a, b = queue[i]
        i += 1
        for g in gens:
            key = g[a] * n + g[b]
            if key not in seen:
                seen.add(key)
                queue.append((g[a], g[b]))
    return Digraph.from_arcs(n, queue)


def is_self_paired(G: PermGroup, pair: tuple[int, int], seed: int = 0) -> bool:
    """Whether the reversed pair lies in the orbit of ``pair``."""
    u, v = pair
    if u == v:
        raise ValueError("orbital digraphs need distinct endpoints")
    rooted = _rooted(G, u, seed)
    t = rooted._chain.levels[0].transversal(v)  # maps u to v
    delta = _suborbit_of(rooted, u, v, seed)
    return bool(u in set(t[delta].tolist()))


def paired_representative(G: PermGroup, pair: tuple[int, int], seed: int = 0) -> int:
    """A point of the paired suborbit: ``w`` with ``(w, u)`` in the orbit of ``(u, v)``."""
    u, v = pair
    rooted = _rooted(G, u, seed)
    t = rooted._chain.levels[0].transversal(v)
    inv = np.empty_like(t)
    inv[t] = np.arange(t.size, dtype=t.dtype)
    return int(inv[u])


def enumerate_digraphs(G: PermGroup, v: int, d: int, seed: int = 0) -> list[Digraph]:
    """One orbital digraph per length-``d`` suborbit of ``G_v``."""
    report = suborbits(G, v, seed)
    if report.lengths.count(1) == G.degree:
        raise ValueError("group is regular")
    out: list[Digraph] = []
    keys = set()
    for w in report.of_length(d):
        dg = orbital_digraph(G, (v, w), seed)
        if dg.key() not in keys:
            keys.add(dg.key())
            out.append(dg)
    return out


def underlying_graph(dg: Digraph) -> Digraph:
    return Digraph(dg.n, np.concatenate([dg.arcs, dg.arcs[:, ::-1]]))


# ---------------------------------------------------------------------------
# the coset correspondence


def faithful_restriction(M: PermGroup) -> np.ndarray:
    """A short list of points on which ``M`` still acts faithfully (union of orbits)."""
    orbs = sorted((o for o in orbits(M) if len(o) > 1), key=len)
    chosen: list[int] = []
    for orb in orbs:
        chosen.extend(orb)
        pts = np.array(sorted(chosen))
        restricted = _restrict(M, pts)
        if restricted.freeze(max_order=M.order).order == M.order:
            return pts
    return np.array(sorted(chosen), dtype=np.int64)


def _restrict(M: PermGroup, pts: np.ndarray) -> PermGroup:
    pos = np.full(M.degree, -1, dtype=np.int64)
    pos[pts] = np.arange(pts.size)
    return PermGroup(pts.size, [Permutation(pos[g.array[pts]]) for g in M.generators])


def _closure_pairs(gens: list[tuple[tuple[int, ...], tuple[int, ...]]], cap: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]] | None:
    """Closure of pairs (m, s) under componentwise composition, or None past ``cap`` elements."""
    m0 = tuple(range(len(gens[0][0])))
    s0 = tuple(range(len(gens[0][1])))
    seen = {(m0, s0)}
    queue = [(m0, s0)]
    i = 0
    while i < len(queue):
        m, s = queue[i]
        i += 1
        for gm, gs in gens:
            y = (tuple(gm[x] for x in m), tuple(gs[x] for x in s))
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if len(seen) > cap:
                    return None
    return queue


def _two_generators(R: PermGroup, order: int, rng: random.Random, tries: int = 400) -> list[Permutation]:
    from .perm import _bounded_closure_size

    if order == 1:
        return []
    for _ in range(tries):
        a, b = R.random_element(rng), R.random_element(rng)
        for gens in ([a], [a, b]):
            if _bounded_closure_size(R.degree, [g.array for g in gens], order) == order:
                return gens
    raise SearchFailure("no generating pair found")


@dataclass(frozen=True)
class IndexSubgroupCensus:
    """Index-``d`` subgroups of a stabilizer, found through its actions of degree ``d``."""

    count: int
    classes: int
    self_normalizing: bool
    maximal: bool

    @property
    def hypotheses_hold(self) -> bool:
        return self.count > 0 and self.classes == 1 and self.self_normalizing and self.maximal


def index_subgroup_census(M: PermGroup, d: int, seed: int = 0) -> IndexSubgroupCensus:
    """Enumerate subgroups of index ``d`` via homomorphisms to Sym(d) with transitive image."""
    if M.order > HYPOTHESIS_ORDER_BOUND:
        raise PreconditionError(f"|G_v| = {M.order} exceeds {HYPOTHESIS_ORDER_BOUND}")
    if M.order % d:
        return IndexSubgroupCensus(0, 0, False, False)
    rng = random.Random(seed)
    pts = faithful_restriction(M)
    R = _restrict(M, pts).freeze(seed, order=M.order)
    gens = _two_generators(R, M.order, rng)
    g_orders = [g.order() for g in gens]
    sym = [tuple(p) for p in itertools.permutations(range(d))]
    sym_orders = {s: Permutation(list(s)).order() for s in sym}
    options = [[s for s in sym if g_orders[i] % sym_orders[s] == 0] for i in range(len(gens))]
    subgroups: dict[bytes, np.ndarray] = {}
    maximal = True
    g_tuples = [tuple(g.array.tolist()) for g in gens]
    for images in itertools.product(*options):
        if not _transitive(images, d):
            continue
        elems = _closure_pairs(list(zip(g_tuples, images)), M.order)
        if elems is None or len(elems) != M.order:
            continue
        if not is_primitive(PermGroup(d, [Permutation(list(s)) for s in images]).freeze())[0]:
            maximal = False
        stab = np.array(sorted(m for m, s in elems if s[0] == 0), dtype=np.int64)
        subgroups.setdefault(stab.tobytes(), stab)
    if not subgroups:
        return IndexSubgroupCensus(0, 0, False, False)
    # conjugation action of M on the subgroups found
    keys = list(subgroups)
    index = {k: i for i, k in enumerate(keys)}
    parent = list(range(len(keys)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for k, elems in subgroups.items():
        for g in gens:
            ga = g.array
            ginv = np.empty_like(ga)
            ginv[ga] = np.arange(ga.size)
            conj = ga[elems[:, ginv]]
            ck = np.array(sorted(map(tuple, conj.tolist())), dtype=np.int64).tobytes()
            if ck in index:
                a, b = find(index[k]), find(index[ck])
                parent[a] = b
    classes = len({find(i) for i in range(len(keys))})
    # a self-normalizing subgroup of index d has exactly d conjugates
    self_norm = classes == 1 and len(keys) == d
    return IndexSubgroupCensus(len(keys), classes, self_norm, maximal)


def _transitive(images: tuple[tuple[int, ...], ...], d: int) -> bool:
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for s in images:
            y = s[x]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen) == d


def norm_quotient_order_via_suborbits(G: PermGroup, v: int = 0, d: int = 5, seed: int = 0, check: bool = True) -> int:
    """``|N_G(H)/H|`` as one plus the number of length-``d`` suborbits.

    ``H`` is an index-``d`` subgroup of ``G_v``.  The count is meaningful when
    those subgroups form one class of maximal self-normalizing subgroups; with
    ``check`` this is verified and a failure raises.
    """
    if check:
        census = index_subgroup_census(point_stabilizer(G, v, seed), d, seed)
        if not census.hypotheses_hold:
            raise PreconditionError(f"index-{d} subgroups of the stabilizer violate the hypotheses: {census}")
    return 1 + len(suborbits(G, v, seed).of_length(d))


def two_point_stabilizer(G: PermGroup, v: int, w: int, seed: int = 0) -> PermGroup:
    Gv = point_stabilizer(G, v, seed)
    return point_stabilizer(Gv, w, seed)


def normalizing_transporter(G: PermGroup, H: PermGroup, v: int, w: int, seed: int = 0) -> Permutation:
    """An element ``x`` of ``N_G(H)`` with ``v^x = w``, for ``H`` fixing both points."""
    rooted = _rooted(G, v, seed)
    x0 = Permutation._wrap(rooted._chain.levels[0].transversal(w))
    K_gens = [h.conjugate(x0) for h in H.generators]  # generators of H^x0 <= G_w
    Gw = point_stabilizer(G, w, seed)
    for m in Gw.elements(limit=HYPOTHESIS_ORDER_BOUND):
        if all(k.conjugate(m) in H for k in K_gens):
            return x0 * m
    raise SearchFailure("no element of the stabilizer conjugates H^x back to H")


@dataclass(frozen=True)
class CorrespondenceCheck:
    """Both sides of the coset correspondence on one group."""

    digraphs: int
    quotient_order: int
    symmetric_flags: tuple[bool, ...]
    involution_flags: tuple[bool, ...]

    @property
    def count_agrees(self) -> bool:
        return self.digraphs == self.quotient_order - 1

    @property
    def pairing_agrees(self) -> bool:
        return self.symmetric_flags == self.involution_flags


def correspondence_check(G: PermGroup, v: int = 0, d: int = 5, seed: int = 0) -> CorrespondenceCheck:
    """Enumerate digraphs by brute force and compare with ``N_G(H)/H`` computed directly."""
    report = suborbits(G, v, seed)
    Gv = point_stabilizer(G, v, seed)
    reps = report.of_length(d)
    if reps:
        H = two_point_stabilizer(G, v, reps[0], seed)
    else:
        H = _some_index_subgroup(Gv, d, seed)
    N = subgroup_normalizer_small(G, H, seed=seed)
    digraphs = enumerate_digraphs(G, v, d, seed)
    h_set = H
    sym_flags, inv_flags = [], []
    for dg, w0 in zip(digraphs, reps):
        # the point of this suborbit fixed by H
        w = _fixed_point_in(H, _suborbit_of(G, v, w0, seed))
        x = normalizing_transporter(G, H, v, w, seed)
        sym_flags.append(dg.symmetric)
        inv_flags.append((x * x) in h_set)
    return CorrespondenceCheck(len(digraphs), N.order // H.order, tuple(sym_flags), tuple(inv_flags))


def _fixed_point_in(H: PermGroup, pts: np.ndarray) -> int:
    fixed = np.ones(pts.size, dtype=bool)
    for h in H.generators:
        fixed &= h.array[pts] == pts
    hits = pts[fixed]
    if hits.size != 1:
        raise PreconditionError(f"H fixes {hits.size} points of the suborbit, expected 1")
    return int(hits[0])


def _some_index_subgroup(M: PermGroup, d: int, seed: int) -> PermGroup:
    """An index-``d`` subgroup of ``M`` (a point stabilizer of an action of degree ``d``)."""
    rng = random.Random(seed)
    target = M.order // d
    elems = M.elements(limit=HYPOTHESIS_ORDER_BOUND)
    for _ in range(4000):
        gens = [rng.choice(elems) for _ in range(2)]
        cand = PermGroup(M.degree, gens).freeze(seed, max_order=M.order)
        if cand.order == target:
            return cand
    raise SearchFailure(f"no subgroup of index {d} found")
