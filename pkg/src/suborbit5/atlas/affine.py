"""Affine groups V:L acting on GF(p)^d."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ResourceError
from ..ffalg import Field, MatRep, Matrix
from ..perm import MAX_DEGREE, PermGroup, Permutation


@dataclass
class AffineGroup:
    """``V:L`` on ``p^d`` points; the zero vector is point 0."""

    p: int
    d: int
    linear: MatRep
    linear_order: int
    group: PermGroup
    stabilizer: PermGroup

    @property
    def degree(self) -> int:
        return self.p**self.d

    def encode(self, vectors: np.ndarray) -> np.ndarray:
        weights = self.p ** np.arange(self.d)
        return (np.asarray(vectors) % self.p) @ weights

    def decode(self, points) -> np.ndarray:
        pts = np.asarray(points)
        return np.stack([(pts // self.p**i) % self.p for i in range(self.d)], axis=-1)

    def negation(self) -> Permutation:
        return Permutation(self.encode(-self.decode(np.arange(self.degree))))


def _vectors(p: int, d: int) -> np.ndarray:
    n = p**d
    pts = np.arange(n)
    return np.stack([(pts // p**i) % p for i in range(d)])  # shape (d, n)


def linear_permutation(m: Matrix, p: int, d: int, vecs: np.ndarray | None = None) -> Permutation:
    vecs = _vectors(p, d) if vecs is None else vecs
    img = (m.planes[0] @ vecs) % p
    return Permutation(p ** np.arange(d) @ img)


def translation(p: int, d: int, i: int) -> Permutation:
    vecs = _vectors(p, d)
    vecs[i] = (vecs[i] + 1) % p
    return Permutation(p ** np.arange(d) @ vecs)


def affine_group(linear: MatRep, name: str = "", seed: int = 0) -> AffineGroup:
    F = linear.field
    if F.e != 1:
        raise ValueError("affine groups are built over prime fields")
    p, d = F.p, linear.dim
    if p**d > MAX_DEGREE:
        raise ResourceError(f"degree {p}^{d} exceeds {MAX_DEGREE}")
    lin_order = len(linear.elements(limit=100_000))
    vecs = _vectors(p, d)
    lin_perms = [linear_permutation(g, p, d, vecs) for g in linear.gens]
    trans = [translation(p, d, i) for i in range(d)]
    degree = p**d
    G = PermGroup(degree, lin_perms + trans, name).freeze(seed, order=degree * lin_order)
    G0 = PermGroup(degree, lin_perms, f"{name}_0").freeze(seed, order=lin_order)
    return AffineGroup(p, d, linear, lin_order, G, G0)


def reflection_inverting(A: Matrix) -> Matrix:
    """An involution ``s`` with ``s A s^-1 = A^-1`` (first in enumeration order)."""
    F: Field = A.field
    n = A.rows
    Ainv = A.inverse()
    ident = Matrix.identity(F, n)
    # s A = A^-1 s  <=>  (I kron A^T - A^-1 kron I) vec(s) = 0
    system = ident.kron(A.T) - Ainv.kron(ident)
    basis = system.nullspace()
    k = basis.rows
    B = basis.planes[0].reshape(k, n, n)
    p = F.p
    coeffs = np.stack(np.meshgrid(*[np.arange(p)] * k, indexing="ij"), axis=-1).reshape(-1, k)
    cands = np.einsum("ck,kij->cij", coeffs, B) % p
    sq = np.einsum("cij,cjk->cik", cands, cands) % p
    is_inv = (sq == np.eye(n, dtype=np.int64)).all(axis=(1, 2))
    not_scalar = ~((cands == cands[:, :1, :1] * np.eye(n, dtype=np.int64)).all(axis=(1, 2)))
    hits = np.flatnonzero(is_inv & not_scalar)
    if hits.size == 0:
        raise ValueError("no inverting involution exists")
    return Matrix(F, cands[hits[0]][None])
