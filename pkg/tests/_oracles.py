"""Brute-force reference computations, independent of the library algorithms."""

from __future__ import annotations

import itertools
from collections import deque


def closure(gens: list[tuple[int, ...]], cap: int = 200_000) -> set[tuple[int, ...]]:
    """All products of the generators, by breadth-first search on tuples."""
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if len(seen) > cap:
                    raise RuntimeError("closure cap exceeded")
    return seen


def orbit(gens: list[tuple[int, ...]], point: int) -> set[int]:
    seen = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            if g[x] not in seen:
                seen.add(g[x])
                stack.append(g[x])
    return seen


def has_nontrivial_block(gens: list[tuple[int, ...]], n: int) -> bool:
    """Exhaustive block search: any proper block through 0 of size dividing n."""
    for k in range(2, n):
        if n % k:
            continue
        for rest in itertools.combinations(range(1, n), k - 1):
            block = frozenset((0,) + rest)
            if _is_block(gens, block):
                return True
    return False


def _is_block(gens, block) -> bool:
    seen = {block}
    stack = [block]
    while stack:
        b = stack.pop()
        for g in gens:
            img = frozenset(g[x] for x in b)
            if img in seen:
                continue
            if any(img & other for other in seen):
                return False
            seen.add(img)
            stack.append(img)
    return True


def pair_orbits(elements, n: int) -> dict[tuple[int, int], int]:
    """Label every ordered pair of distinct points by its orbital."""
    label: dict[tuple[int, int], int] = {}
    count = 0
    for u in range(n):
        for v in range(n):
            if u == v or (u, v) in label:
                continue
            for g in elements:
                label[(g[u], g[v])] = count
            count += 1
    return label


def common_neighbour_counts(edges: set[frozenset[int]], n: int) -> tuple[set[int], set[int]]:
    adj = [set() for _ in range(n)]
    for e in edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    lam, mu = set(), set()
    for a in range(n):
        for b in range(a + 1, n):
            c = len(adj[a] & adj[b])
            (lam if b in adj[a] else mu).add(c)
    return lam, mu


def mat_mul(a, b, p):
    n, m, k = len(a), len(b[0]), len(b)
    return [[sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(m)] for i in range(n)]


def mat_closure(gens, p, cap: int = 5000) -> set[tuple[tuple[int, ...], ...]]:
    n = len(gens[0])
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(tuple(r) for r in mat_mul(x, g, p))
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if len(seen) > cap:
                    raise RuntimeError("closure cap exceeded")
    return seen


def rank_mod_p(rows, p: int) -> int:
    """Gaussian elimination over GF(p) on lists of ints."""
    m = [list(r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c] % p), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank
