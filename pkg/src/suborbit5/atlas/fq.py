"""Small finite fields GF(q), q = p^k, as addition and multiplication tables.

Elements are the integers ``0..q-1`` read as base-p digit vectors of
polynomials modulo a fixed irreducible polynomial; ``0`` and ``1`` are the
field's zero and one.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from ..ffalg.field import _prime_factors, is_prime

MAX_Q = 1024


def prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1 or not is_prime(p):
                break
            return p, k
    raise ValueError(f"{q} is not a prime power")


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # reduce with monic modulus
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
    return prod[:k]


def _is_irreducible(mod: list[int], p: int) -> bool:
    k = len(mod) - 1
    # no factor of degree <= k/2: brute force over monic polynomials
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            f = list(tail) + [1]
            if _poly_divides(f, mod, p):
                return False
    return True


def _poly_divides(f: list[int], g: list[int], p: int) -> bool:
    r = list(g)
    df = len(f) - 1
    inv = pow(f[-1], p - 2, p)
    for d in range(len(r) - 1, df - 1, -1):
        c = r[d] * inv % p
        if c:
            for i in range(df + 1):
                r[d - df + i] = (r[d - df + i] - c * f[i]) % p
    return not any(r[:df])


class GFq:
    """Table-driven GF(q)."""

    def __init__(self, q: int) -> None:
        if q > MAX_Q:
            raise ValueError(f"q = {q} exceeds {MAX_Q}")
        p, k = prime_power(q)
        self.q, self.p, self.k = q, p, k
        self.modulus = self._find_modulus()
        digits = np.array([[(x // p**i) % p for i in range(k)] for x in range(q)], dtype=np.int64)
        weights = p ** np.arange(k)
        self.add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg = ((-digits) % p) @ weights
        self.mul = self._mul_table(digits, weights)
        self.inv = np.zeros(q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul == 1)
        self.inv[rows] = cols
        self.primitive = self._primitive()

    def _find_modulus(self) -> list[int]:
        if self.k == 1:
            return [0, 1]
        for tail in itertools.product(range(self.p), repeat=self.k):
            mod = list(tail) + [1]
            if mod[0] and _is_irreducible(mod, self.p):
                return mod
        raise AssertionError("no irreducible polynomial")

    def _mul_table(self, digits: np.ndarray, weights: np.ndarray) -> np.ndarray:
        q, p = self.q, self.p
        del weights
        polys = [list(map(int, d)) for d in digits]
        enc = {tuple(d): i for i, d in enumerate(polys)}
        # find a primitive element by walking its powers, then use log tables
        for cand in range(2 if q > 2 else 1, q):
            exp = [1]
            cur = polys[1]
            ok = True
            for _ in range(q - 2):
                cur = _poly_mulmod(cur, polys[cand], self.modulus, p) if self.k > 1 else [cur[0] * cand % p]
                cid = enc[tuple(cur)]
                if cid == 1:
                    ok = False
                    break
                exp.append(cid)
            if ok:
                break
        exp_arr = np.array(exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[exp_arr] = np.arange(q - 1)
        self._exp, self._log = exp_arr, log
        table = exp_arr[(log[:, None] + log[None, :]) % (q - 1)]
        table[0, :] = 0
        table[:, 0] = 0
        return table

    def _primitive(self) -> int:
        return int(self._exp[1]) if self.q > 2 else 1

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def frobenius(self) -> np.ndarray:
        """Table of ``x -> x^p``."""
        x = np.arange(self.q)
        out = np.ones(self.q, dtype=np.int64)
        for _ in range(self.p):
            out = self.mul[out, x]
        return out

    def squares(self) -> np.ndarray:
        x = np.arange(self.q)
        return np.unique(self.mul[x, x])


@lru_cache(maxsize=None)
def gfq(q: int) -> GFq:
    return GFq(q)
