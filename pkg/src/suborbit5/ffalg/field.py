"""Prime fields GF(p) and their quadratic extensions GF(p^2).

Elements are encoded as Python ints ``a + b*p`` meaning ``a + b*x`` with
``x^2 = ns`` (``b = 0`` for the prime field).  Array code works on *planes*:
an integer array whose leading axis has length ``e`` and holds the ``a`` and
``b`` coordinates separately.
"""

from __future__ import annotations

import math
import random
from functools import cached_property

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in (2, 3, 5, 7, 11, 13):
        if n % d == 0:
            return n == d
    return all(n % d for d in range(17, math.isqrt(n) + 1, 2))


class Field:
    """GF(p) (``e == 1``) or GF(p^2) = GF(p)[x]/(x^2 - ns) (``e == 2``, odd p)."""

    def __init__(self, p: int, e: int = 1) -> None:
        if not is_prime(p) or p >= 2**31:
            raise ValueError(f"{p} is not a prime below 2^31")
        if e not in (1, 2):
            raise ValueError("extension degree must be 1 or 2")
        if e == 2 and p == 2:
            raise ValueError("GF(4) is not supported by the x^2 - ns model")
        self.p = p
        self.e = e
        self.ns = self._smallest_nonsquare() if p > 2 else 1

    def _smallest_nonsquare(self) -> int:
        for a in range(2, self.p):
            if pow(a, (self.p - 1) // 2, self.p) == self.p - 1:
                return a
        raise AssertionError("no non-square")

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.e == 1 else f"GF({self.p}^2)"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.e))

    @cached_property
    def prime_field(self) -> "Field":
        return self if self.e == 1 else Field(self.p, 1)

    @cached_property
    def extension(self) -> "Field":
        return Field(self.p, 2) if self.e == 1 else self

    # -- scalars ---------------------------------------------------------

    def split(self, a: int) -> tuple[int, int]:
        return a % self.p, a // self.p

    def make(self, a: int, b: int = 0) -> int:
        if b % self.p and self.e == 1:
            raise ValueError("element outside the prime field")
        return a % self.p + (b % self.p) * self.p

    def add(self, a: int, b: int) -> int:
        a0, a1 = self.split(a)
        b0, b1 = self.split(b)
        return self.make(a0 + b0, a1 + b1)

    def sub(self, a: int, b: int) -> int:
        a0, a1 = self.split(a)
        b0, b1 = self.split(b)
        return self.make(a0 - b0, a1 - b1)

    def neg(self, a: int) -> int:
        a0, a1 = self.split(a)
        return self.make(-a0, -a1)

    def mul(self, a: int, b: int) -> int:
        a0, a1 = self.split(a)
        b0, b1 = self.split(b)
        return self.make(a0 * b0 + self.ns * a1 * b1, a0 * b1 + a1 * b0)

    def inv(self, a: int) -> int:
        a0, a1 = self.split(a)
        norm = (a0 * a0 - self.ns * a1 * a1) % self.p
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        n_inv = pow(norm, self.p - 2, self.p)
        return self.make(a0 * n_inv, -a1 * n_inv)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = 1
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def frob(self, a: int) -> int:
        """The Frobenius automorphism ``a -> a^p``."""
        a0, a1 = self.split(a)
        return self.make(a0, -a1)

    def norm(self, a: int) -> int:
        """``a * frob(a)``, an element of the prime field."""
        return self.mul(a, self.frob(a))

    def in_prime_field(self, a: int) -> bool:
        return a < self.p

    def elements(self) -> range:
        return range(self.q)

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.q)

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for f in _prime_factors(n):
            while order % f == 0 and self.power(a, order // f) == 1:
                order //= f
        return order

    @cached_property
    def primitive_element(self) -> int:
        n = self.q - 1
        factors = _prime_factors(n)
        for a in range(1, self.q):
            if all(self.power(a, n // f) != 1 for f in factors):
                return a
        raise AssertionError("no primitive element")

    def is_square(self, a: int) -> bool:
        return a == 0 or self.power(a, (self.q - 1) // 2) == 1 or self.p == 2

    def sqrt(self, a: int) -> int | None:
        """A square root of ``a`` in this field, or None."""
        if a == 0:
            return 0
        if self.p == 2:
            return a
        if self.e == 1:
            return _tonelli_shanks(a, self.p)
        a0, a1 = self.split(a)
        if a1 == 0:
            r = _tonelli_shanks(a0, self.p)
            if r is not None:
                return r
            # a0 = ns * b^2 -> sqrt = b*x
            b = _tonelli_shanks(a0 * pow(self.ns, self.p - 2, self.p) % self.p, self.p)
            return None if b is None else self.make(0, b)
        if not self.is_square(a):
            return None
        # (u + v x)^2 = u^2 + ns v^2 + 2uv x; solve through the norm
        n = self.norm(a)
        r = _tonelli_shanks(n, self.p)
        if r is None:
            return None
        inv2 = pow(2, self.p - 2, self.p)
        for s in (r, (-r) % self.p):
            u2 = (a0 + s) * inv2 % self.p
            u = _tonelli_shanks(u2, self.p)
            if u is None or u == 0:
                continue
            v = a1 * pow(2 * u, self.p - 2, self.p) % self.p
            cand = self.make(u, v)
            if self.mul(cand, cand) == a:
                return cand
        raise AssertionError("square root search failed")

    # -- planes ----------------------------------------------------------

    def to_planes(self, values) -> np.ndarray:
        arr = np.asarray(values, dtype=np.int64)
        if self.e == 1:
            if (arr >= self.p).any() or (arr < 0).any():
                raise ValueError("entries outside GF(p)")
            return arr[None] % self.p
        return np.stack([arr % self.p, arr // self.p])

    def from_planes(self, planes: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return planes[0].copy()
        return planes[0] + self.p * planes[1]

    def pmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise product of planes arrays (broadcasting)."""
        p = self.p
        if self.e == 1:
            return (a * b) % p
        a0, a1 = a[0], a[1]
        b0, b1 = b[0], b[1]
        c0 = (a0 * b0 % p + self.ns * (a1 * b1 % p)) % p
        c1 = (a0 * b1 % p + a1 * b0 % p) % p
        return np.stack([c0, c1])

    def pinv_scalar(self, planes: np.ndarray) -> np.ndarray:
        """Inverse of a single element given as a length-e planes vector."""
        a = self.from_planes(planes.reshape(self.e, 1))[0]
        return self.to_planes([self.inv(int(a))]).reshape(self.e)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _tonelli_shanks(a: int, p: int) -> int | None:
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r
