"""Graph identification and automorphism groups of small graphs.

Automorphisms are found by individualization and refinement: colour
refinement to an equitable partition, then a backtracking search that
matches a fixed leaf of the search tree, with orbit pruning at every level.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .errors import UnsupportedError
from .orbital import Digraph
from .perm import PermGroup, Permutation

AUT_VERTEX_BOUND = 150
IDENTIFY_VERTEX_BOUND = 20_000
MAX_DIAMETER = 4


def _require_regular(g: Digraph) -> int:
    if not g.symmetric:
        raise ValueError("graph identification needs a symmetric digraph")
    if g.has_loops():
        raise ValueError("graph has loops")
    vals = g.out_valencies()
    if g.n == 0 or vals.min() != vals.max():
        raise ValueError("graph is not regular")
    return int(vals[0])


def adjacency(g: Digraph) -> sparse.csr_matrix:
    data = np.ones(g.arc_count, dtype=np.int64)
    return sparse.csr_matrix((data, (g.arcs[:, 0], g.arcs[:, 1])), shape=(g.n, g.n))


# ---------------------------------------------------------------------------
# strongly regular and distance-regular parameters


def srg_parameters(g: Digraph) -> tuple[int, int, int, int] | None:
    """``(n, k, lambda, mu)`` when ``g`` is strongly regular and not complete or empty."""
    k = _require_regular(g)
    n = g.n
    if k == 0 or k == n - 1:
        return None
    A = adjacency(g)
    A2 = (A @ A).tocoo()
    off = A2.row != A2.col
    rows, cols, vals = A2.row[off], A2.col[off], A2.data[off]
    adj_mask = np.asarray(A[rows, cols]).reshape(-1).astype(bool)
    on_edges = vals[adj_mask]
    # every arc must show up among the common-neighbour counts unless lambda = 0
    lam_values = set(on_edges.tolist())
    if on_edges.size < g.arc_count:
        lam_values.add(0)
    if len(lam_values) != 1:
        return None
    off_edges = vals[~adj_mask]
    non_adjacent_pairs = n * (n - 1 - k)
    mu_values = set(off_edges.tolist())
    if off_edges.size < non_adjacent_pairs:
        mu_values.add(0)
    if len(mu_values) != 1:
        return None
    return n, k, lam_values.pop(), mu_values.pop()


def distance_layers(nbrs: list[np.ndarray], root: int) -> np.ndarray:
    n = len(nbrs)
    dist = np.full(n, -1, dtype=np.int64)
    dist[root] = 0
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in nbrs[x].tolist():
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def intersection_numbers(nbrs: list[np.ndarray], root: int) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """``({b_0,...,b_{d-1}}, {c_1,...,c_d})`` from ``root``; None if not constant on a layer."""
    dist = distance_layers(nbrs, root)
    if (dist < 0).any():
        return None
    diameter = int(dist.max())
    b: list[int] = []
    c: list[int] = []
    for i in range(diameter + 1):
        layer = np.flatnonzero(dist == i)
        bs, cs = set(), set()
        for x in layer.tolist():
            dn = dist[nbrs[x]]
            bs.add(int((dn == i + 1).sum()))
            cs.add(int((dn == i - 1).sum()))
        if len(bs) != 1 or len(cs) != 1:
            return None
        if i < diameter:
            b.append(bs.pop())
        if i > 0:
            c.append(cs.pop())
    return tuple(b), tuple(c)


def _base_vertices(n: int, exhaustive: int = 200) -> list[int]:
    return list(range(n)) if n <= exhaustive else sorted({0, n // 3, (2 * n) // 3})


@dataclass(frozen=True)
class GraphIdentification:
    n: int
    valency: int
    complete: bool
    srg: tuple[int, int, int, int] | None
    intersection_array: tuple[tuple[int, ...], tuple[int, ...]] | None
    bases_checked: int
    kneser_9_4: bool | None = None

    def describe(self) -> str:
        parts = [f"{self.n} vertices, valency {self.valency}"]
        if self.complete:
            parts.append(f"K{self.n}")
        if self.srg:
            parts.append("SRG({},{},{},{})".format(*self.srg))
        if self.intersection_array:
            b, c = self.intersection_array
            parts.append("array {" + ",".join(map(str, b)) + ";" + ",".join(map(str, c)) + "}")
        if self.kneser_9_4:
            parts.append("K(9,4)")
        return ", ".join(parts)


def identify_graph(g: Digraph, seed: int = 0) -> GraphIdentification:
    """Regularity, completeness, SRG parameters, intersection array, and K(9,4) test at n = 126."""
    k = _require_regular(g)
    if g.n > IDENTIFY_VERTEX_BOUND:
        raise UnsupportedError(f"{g.n} vertices exceeds {IDENTIFY_VERTEX_BOUND}")
    nbrs = g.neighbours()
    bases = _base_vertices(g.n)
    arrays = {intersection_numbers(nbrs, r) for r in bases}
    array = arrays.pop() if len(arrays) == 1 else None
    if array is not None and len(array[0]) > MAX_DIAMETER:
        array = None
    kneser = None
    if g.n == 126:
        kneser = find_isomorphism(g, kneser_graph(9, 4)) is not None
    return GraphIdentification(g.n, k, k == g.n - 1, srg_parameters(g), array, len(bases), kneser)


# ---------------------------------------------------------------------------
# reference graphs


def kneser_graph(n: int, k: int) -> Digraph:
    """Vertices are the k-subsets of range(n) in lexicographic order; adjacency is disjointness."""
    subsets = [frozenset(s) for s in itertools.combinations(range(n), k)]
    arcs = [(i, j) for i, a in enumerate(subsets) for j, b in enumerate(subsets) if not a & b]
    return Digraph.from_arcs(len(subsets), arcs)


def complete_graph(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(i, j) for i in range(n) for j in range(n) if i != j])


# ---------------------------------------------------------------------------
# individualization and refinement


def _relabel(keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    uniq, inv = np.unique(keys, axis=0, return_inverse=True)
    return inv.reshape(-1), uniq


class _Refiner:
    """Colour refinement on a dense adjacency matrix, recording an isomorphism-invariant trace."""

    def __init__(self, adj: np.ndarray) -> None:
        self.adj = adj
        self.n = adj.shape[0]

    def refine(self, colors: np.ndarray) -> tuple[np.ndarray, tuple[bytes, ...]]:
        trace: list[bytes] = []
        k = int(colors.max()) + 1
        while True:
            onehot = np.zeros((self.n, k), dtype=np.int64)
            onehot[np.arange(self.n), colors] = 1
            counts = self.adj @ onehot
            new, uniq = _relabel(np.column_stack([colors, counts]))
            trace.append(uniq.tobytes() + bytes(str(uniq.shape), "ascii"))
            if uniq.shape[0] == k:
                return new, tuple(trace)
            colors, k = new, uniq.shape[0]

    @staticmethod
    def individualize(colors: np.ndarray, v: int) -> np.ndarray:
        marked = 2 * colors + 1
        marked[v] -= 1
        return np.unique(marked, return_inverse=True)[1].reshape(-1)


def _target_cell(colors: np.ndarray) -> int | None:
    sizes = np.bincount(colors)
    big = np.flatnonzero(sizes > 1)
    return int(big[0]) if big.size else None


def _leaf_path(ref: _Refiner, colors: np.ndarray):
    """Follow the first child at every level; returns cells, traces and the discrete leaf."""
    cells, traces = [], []
    while (cell := _target_cell(colors)) is not None:
        v = int(np.flatnonzero(colors == cell)[0])
        colors, tr = ref.refine(ref.individualize(colors, v))
        cells.append(cell)
        traces.append(tr)
    return cells, traces, colors


def _match(left: _Refiner, left_colors: np.ndarray, right: _Refiner, right_colors: np.ndarray) -> np.ndarray | None:
    """An isomorphism (as an image array) from the left coloured graph onto the right one."""
    cells, traces, leaf = _leaf_path(left, left_colors)
    order_left = np.argsort(leaf)

    def extend(colors: np.ndarray, depth: int) -> np.ndarray | None:
        if depth == len(cells):
            phi = np.empty(left.n, dtype=np.int64)
            phi[order_left] = np.argsort(colors)
            if np.array_equal(right.adj[np.ix_(phi, phi)], left.adj):
                return phi
            return None
        for x in np.flatnonzero(colors == cells[depth]).tolist():
            nxt, tr = right.refine(right.individualize(colors, x))
            if tr != traces[depth]:
                continue
            phi = extend(nxt, depth + 1)
            if phi is not None:
                return phi
        return None

    return extend(right_colors, 0)


def _dense(g: Digraph) -> np.ndarray:
    adj = np.zeros((g.n, g.n), dtype=np.int64)
    adj[g.arcs[:, 0], g.arcs[:, 1]] = 1
    return adj


def find_isomorphism(a: Digraph, b: Digraph) -> np.ndarray | None:
    """A vertex bijection ``phi`` with ``(u,v)`` an arc of ``a`` iff ``(phi[u],phi[v])`` is an arc of ``b``."""
    if a.n != b.n or a.arc_count != b.arc_count:
        return None
    if a.n > AUT_VERTEX_BOUND:
        raise UnsupportedError(f"{a.n} vertices exceeds {AUT_VERTEX_BOUND}")
    ra, rb = _Refiner(_dense(a)), _Refiner(_dense(b))
    ca, ta = ra.refine(np.zeros(a.n, dtype=np.int64))
    cb, tb = rb.refine(np.zeros(b.n, dtype=np.int64))
    if ta != tb:
        return None
    return _match(ra, ca, rb, cb)


@dataclass
class AutomorphismGroup:
    order: int
    generators: list[Permutation]
    base: list[int]
    orbit_lengths: list[int] = field(default_factory=list)

    def group(self, n: int) -> PermGroup:
        return PermGroup(n, self.generators, "Aut").freeze()


def automorphism_group(g: Digraph) -> AutomorphismGroup:
    """Order and generators of Aut(g), by orbit-pruned individualization–refinement."""
    if g.n > AUT_VERTEX_BOUND:
        raise UnsupportedError(f"{g.n} vertices exceeds {AUT_VERTEX_BOUND}")
    ref = _Refiner(_dense(g))
    colors, _ = ref.refine(np.zeros(g.n, dtype=np.int64))
    gens: list[Permutation] = []
    base: list[int] = []
    lengths: list[int] = []
    order = 1
    while (cell := _target_cell(colors)) is not None:
        members = np.flatnonzero(colors == cell).tolist()
        v = members[0]
        fixed_v, tr_v = ref.refine(ref.individualize(colors, v))
        orbit = {v}
        level: list[np.ndarray] = []
        for w in members[1:]:
            if w in orbit:
                continue
            fixed_w, tr_w = ref.refine(ref.individualize(colors, w))
            if tr_w != tr_v:
                continue
            phi = _match(ref, fixed_v, ref, fixed_w)
            if phi is None:
                continue
            level.append(phi)
            orbit = _orbit_closure(orbit, level)
        order *= len(orbit)
        lengths.append(len(orbit))
        gens.extend(Permutation(phi) for phi in level)
        base.append(v)
        colors = fixed_v
    return AutomorphismGroup(order, gens, base, lengths)


def _orbit_closure(seed: set[int], images: list[np.ndarray]) -> set[int]:
    out = set(seed)
    stack = list(seed)
    while stack:
        x = stack.pop()
        for phi in images:
            y = int(phi[x])
            if y not in out:
                out.add(y)
                stack.append(y)
    return out


def graph_aut_order_small(g: Digraph, certify: bool = True) -> int:
    """``|Aut(g)|``; with ``certify`` the generators are checked to preserve the arcs and to close to that order."""
    aut = automorphism_group(g)
    if certify:
        for phi in aut.generators:
            if not g.is_preserved_by(phi):
                raise AssertionError("search returned a non-automorphism")
        closure = aut.group(g.n).order if aut.generators else 1
        if closure != aut.order:
            raise AssertionError(f"generators close to order {closure}, search counted {aut.order}")
    return aut.order
