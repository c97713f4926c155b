"""Matrix representations: submodules, MeatAxe chopping, forms and descent.

Matrices act on column vectors.  Subspaces are stored as matrices whose rows
are a basis in reduced echelon form, so a vector ``v`` (a row) is mapped by
``g`` to ``v @ g.T``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import sympy

from ..errors import ResourceError, SearchFailure
from .field import Field
from .matrix import Matrix, poly_eval_matrix, poly_roots

MAX_MODULE_DIM = 16


@dataclass
class MatRep:
    """A group given by invertible generator matrices over one field."""

    field: Field
    gens: list[Matrix]
    form: Matrix | None = None
    name: str = ""

    def __post_init__(self) -> None:
        if not self.gens:
            raise ValueError("a representation needs at least one generator")
        n = self.gens[0].rows
        for g in self.gens:
            if g.shape != (n, n) or g.field != self.field:
                raise ValueError("generators must be square matrices of one size over one field")

    @property
    def dim(self) -> int:
        return self.gens[0].rows

    def identity(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    def transposed(self) -> "MatRep":
        """The dual action ``g -> (g^-1)^T``; same submodule lattice reversed."""
        return MatRep(self.field, [g.inverse().T for g in self.gens], name=f"{self.name}*")

    def over(self, field: Field) -> "MatRep":
        form = self.form.over(field) if self.form is not None else None
        return MatRep(field, [g.over(field) for g in self.gens], form, self.name)

    def random_word(self, rng: random.Random, length: int = 8) -> Matrix:
        x = self.identity()
        invs = [g.inverse() for g in self.gens]
        for _ in range(length):
            k = rng.randrange(len(self.gens))
            x = x @ (self.gens[k] if rng.random() < 0.5 else invs[k])
        return x

    def elements(self, limit: int = 10_000) -> list[Matrix]:
        """All group elements by breadth-first closure."""
        ident = self.identity()
        seen = {ident.key(): ident}
        queue = [ident]
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            for g in self.gens:
                y = x @ g
                k = y.key()
                if k not in seen:
                    if len(seen) >= limit:
                        raise ResourceError(f"matrix group exceeds {limit} elements")
                    seen[k] = y
                    queue.append(y)
        return queue

    def traces(self, words: Iterable[Matrix]) -> list[int]:
        return [w.trace() for w in words]


# ---------------------------------------------------------------------------
# subspaces


def echelon(rows: Matrix) -> Matrix:
    return rows.rref()[0]


def fixed_space(rep: MatRep) -> Matrix:
    """Basis (rows) of the common fixed space of all generators."""
    ident = rep.identity()
    system = Matrix.vstack(rep.field, [g - ident for g in rep.gens], rep.dim)
    return echelon(system.nullspace())


def spin(vectors: Matrix, rep: MatRep) -> Matrix:
    """Smallest invariant subspace containing the given row vectors."""
    F = rep.field
    basis = echelon(vectors)
    gts = [g.T for g in rep.gens]
    while True:
        if basis.rows == 0 or basis.rows == rep.dim:
            return basis
        images = [basis @ gt for gt in gts]
        grown = echelon(Matrix.vstack(F, [basis, *images], rep.dim))
        if grown.rows == basis.rows:
            return basis
        basis = grown


def coordinates(basis: Matrix, pivots: Sequence[int], vectors: Matrix) -> Matrix:
    """Coordinates of row vectors lying in the row space of an RREF basis."""
    return vectors.select_cols(list(pivots))


def _pivots(basis: Matrix) -> list[int]:
    return basis.rref()[1]


def submodule_rep(rep: MatRep, basis: Matrix) -> MatRep:
    """Action on an invariant subspace (rows of ``basis`` in RREF)."""
    piv = _pivots(basis)
    gens = []
    for g in rep.gens:
        img = basis @ g.T
        gens.append(img.select_cols(piv).T)
    return MatRep(rep.field, gens, name=f"{rep.name}|sub")


def quotient_rep(rep: MatRep, basis: Matrix) -> tuple[MatRep, list[int]]:
    """Action on ``V / span(basis)``; coordinates on the non-pivot unit vectors."""
    F = rep.field
    piv = _pivots(basis)
    rest = [j for j in range(rep.dim) if j not in set(piv)]
    units = Matrix.identity(F, rep.dim).select_rows(rest)
    gens = []
    for g in rep.gens:
        img = units @ g.T
        # remove the span(basis) component: subtract img[:, piv] @ basis
        img = img - img.select_cols(piv) @ basis
        gens.append(img.select_cols(rest).T)
    return MatRep(F, gens, name=f"{rep.name}|quot"), rest


def annihilator(rows: Matrix) -> Matrix:
    """Rows spanning ``{v : w . v = 0 for all rows w}``."""
    return echelon(rows.nullspace())


# ---------------------------------------------------------------------------
# MeatAxe


@dataclass
class Constituent:
    """A composition factor: its dimension and the action on it."""

    dim: int
    rep: MatRep


@dataclass
class _Split:
    irreducible: bool
    submodule: Matrix | None = None


def _candidate_factors(F: Field, poly: list[int]) -> list[list[int]]:
    """Irreducible factors of a characteristic polynomial (ascending coefficients).

    Over a prime field the full factorization comes from sympy; over GF(p^2)
    only linear factors are produced, from roots.
    """
    if F.e == 1:
        x = sympy.Symbol("x")
        _, parts = sympy.Poly(list(reversed(poly)), x, modulus=F.p).factor_list()
        return [[int(c) % F.p for c in reversed(f.all_coeffs())] for f, _ in parts]
    return [[F.neg(r), 1] for r in poly_roots(F, poly)]


def _test_irreducible(rep: MatRep, rng: random.Random, budget: int = 64) -> _Split:
    n = rep.dim
    F = rep.field
    if n == 1:
        return _Split(True)
    words = list(rep.gens)
    dual = None
    for _ in range(budget):
        a, b = rng.choice(words), rng.choice(words)
        words.append(a @ b)
        if len(words) > 12:
            words.pop(rng.randrange(len(rep.gens), len(words) - 1))
        elem = Matrix.zeros(F, n)
        for w in words:
            elem = elem + w.scale(rng.randrange(F.q))
        poly = elem.charpoly()
        for f in sorted(_candidate_factors(F, poly), key=len):
            B = poly_eval_matrix(f, elem)
            kernel = B.nullspace()
            if kernel.rows == 0:
                continue
            sub = spin(kernel.row(0), rep)
            if 0 < sub.rows < n:
                return _Split(False, sub)
            if kernel.rows != len(f) - 1:
                continue
            if dual is None:
                dual = MatRep(F, [g.T for g in rep.gens])
            wker = B.T.nullspace()
            dsub = spin(wker.row(0), dual)
            if 0 < dsub.rows < n:
                return _Split(False, annihilator(dsub))
            return _Split(True)
    raise SearchFailure(f"MeatAxe found no certificate within {budget} algebra elements")


def is_irreducible(rep: MatRep, seed: int = 0) -> bool:
    return _test_irreducible(rep, random.Random(seed)).irreducible


def find_submodule(rep: MatRep, seed: int = 0) -> Matrix | None:
    """A proper nonzero invariant subspace, or None when irreducible."""
    return _test_irreducible(rep, random.Random(seed)).submodule


def chop(rep: MatRep, seed: int = 0) -> list[Constituent]:
    """Composition factors, bottom of the series first."""
    if rep.dim > MAX_MODULE_DIM:
        raise ResourceError(f"module dimension {rep.dim} exceeds {MAX_MODULE_DIM}")
    rng = random.Random(seed)
    return _chop(rep, rng)


def _chop(rep: MatRep, rng: random.Random) -> list[Constituent]:
    res = _test_irreducible(rep, rng)
    if res.irreducible:
        return [Constituent(rep.dim, rep)]
    sub = res.submodule
    quot, _ = quotient_rep(rep, sub)
    return _chop(submodule_rep(rep, sub), rng) + _chop(quot, rng)


# ---------------------------------------------------------------------------
# commuting matrices and forms


def _solution_matrices(F: Field, system: Matrix, n: int) -> list[Matrix]:
    null = system.nullspace()
    return [Matrix(F, null.planes[:, k, :].reshape(F.e, n, n)) for k in range(null.rows)]


def centralizer_algebra(rep: MatRep) -> list[Matrix]:
    """Basis of ``{X : X g = g X}``; length 1 means absolutely irreducible."""
    n = rep.dim
    if n > MAX_MODULE_DIM:
        raise ResourceError(f"module dimension {n} exceeds {MAX_MODULE_DIM}")
    F = rep.field
    ident = Matrix.identity(F, n)
    blocks = [ident.kron(g.T) - g.kron(ident) for g in rep.gens]
    return _solution_matrices(F, Matrix.vstack(F, blocks, n * n), n)


def intertwiners(rep_a: MatRep, rep_b: MatRep) -> list[Matrix]:
    """Basis of ``{T : T a(g) = b(g) T}``."""
    n = rep_a.dim
    F = rep_a.field
    ident = Matrix.identity(F, n)
    blocks = [ident.kron(a.T) - b.kron(ident) for a, b in zip(rep_a.gens, rep_b.gens)]
    return _solution_matrices(F, Matrix.vstack(F, blocks, n * n), n)


def invariant_forms(rep: MatRep) -> list[Matrix]:
    """Basis of bilinear forms ``J`` with ``g^T J g = J`` for all generators."""
    n = rep.dim
    if n > MAX_MODULE_DIM:
        raise ResourceError(f"module dimension {n} exceeds {MAX_MODULE_DIM}")
    F = rep.field
    eye = Matrix.identity(F, n * n)
    blocks = [g.T.kron(g.T) - eye for g in rep.gens]
    return _solution_matrices(F, Matrix.vstack(F, blocks, n * n), n)


def is_alternating(form: Matrix) -> bool:
    diag = form.planes[:, np.arange(form.rows), np.arange(form.rows)]
    return (form + form.T).is_zero() and not diag.any()


def restrict_form(form: Matrix, basis: Matrix) -> Matrix:
    """Gram matrix of ``form`` on the row vectors of ``basis``."""
    return basis @ form @ basis.T


def is_nondegenerate_on(form: Matrix, basis: Matrix) -> bool:
    return restrict_form(form, basis).is_invertible()


def is_totally_isotropic(form: Matrix, basis: Matrix) -> bool:
    return restrict_form(form, basis).is_zero()


# ---------------------------------------------------------------------------
# semisimple decomposition


def complement(rep: MatRep, basis: Matrix, elements: Sequence[Matrix]) -> Matrix:
    """Invariant complement of ``span(basis)`` by averaging a projection.

    ``elements`` must be the whole group and its order must be prime to p.
    """
    F = rep.field
    n = rep.dim
    order = len(elements)
    if order % F.p == 0:
        raise ValueError("Maschke averaging needs |G| prime to p")
    piv = _pivots(basis)
    # projection onto span(basis) along the non-pivot unit vectors (column action)
    proj = basis.T @ Matrix.identity(F, n).select_rows(piv)
    total = Matrix.zeros(F, n)
    for g in elements:
        total = total + g @ proj @ g.inverse()
    avg = total.scale(F.inv(order % F.p))
    # complement = kernel of the averaged projection, as rows
    return echelon(avg.nullspace())


def decompose(rep: MatRep, elements: Sequence[Matrix], seed: int = 0) -> list[Matrix]:
    """Direct sum decomposition into irreducible submodules (row bases in V)."""
    rng = random.Random(seed)
    return _decompose(rep, Matrix.identity(rep.field, rep.dim), elements, rng)


def _decompose(rep: MatRep, ambient: Matrix, elements: Sequence[Matrix], rng: random.Random) -> list[Matrix]:
    # ambient rows span an invariant subspace of V; rep and elements act on its coordinates
    res = _test_irreducible(rep, rng)
    if res.irreducible:
        return [echelon(ambient)]
    sub = res.submodule
    comp = complement(rep, sub, elements)
    out = []
    for part in (sub, comp):
        out.extend(_decompose(submodule_rep(rep, part), part @ ambient, _restrict_all(elements, part), rng))
    return out


def _restrict_all(elements: Sequence[Matrix], basis: Matrix) -> list[Matrix]:
    piv = _pivots(basis)
    return [(basis @ g.T).select_cols(piv).T for g in elements]


# ---------------------------------------------------------------------------
# symmetric power and special matrices


def _binom_row(F: Field, a: int, b: int, k: int) -> list[int]:
    """Coefficients of (a X + b Y)^k, indexed by the power of Y."""
    out = [1]
    for _ in range(k):
        nxt = [0] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i] = F.add(nxt[i], F.mul(c, a))
            nxt[i + 1] = F.add(nxt[i + 1], F.mul(c, b))
        out = nxt
    return out


def _poly_mul(F: Field, u: list[int], v: list[int]) -> list[int]:
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return out


def sym_power_matrix(g: Matrix, k: int) -> Matrix:
    """Action of ``g`` on binary forms of degree k by ``(x, y) -> (x, y) g``.

    Basis ``x^k, x^(k-1) y, ..., y^k``.
    """
    F = g.field
    (a, b), (c, d) = g.to_rows()
    cols = []
    for i in range(k + 1):
        # x -> a x + c y, y -> b x + d y
        col = _poly_mul(F, _binom_row(F, a, c, k - i), _binom_row(F, b, d, i))
        cols.append(col)
    return Matrix.from_rows(F, cols).T


def sym5_power(rep2: MatRep) -> MatRep:
    """Fifth symmetric power of a 2-dimensional representation."""
    if rep2.dim != 2:
        raise ValueError("sym5_power needs a 2-dimensional representation")
    return MatRep(rep2.field, [sym_power_matrix(g, 5) for g in rep2.gens], name=f"S5({rep2.name})")


def companion(F: Field, poly: Sequence[int]) -> Matrix:
    """Companion matrix of a monic polynomial (constant term first)."""
    n = len(poly) - 1
    if poly[-1] != 1:
        raise ValueError("polynomial must be monic")
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = F.neg(poly[i])
    return Matrix.from_rows(F, rows)


def golden_trace(F: Field) -> int:
    """A root ``c`` of ``y^2 + y - 1`` (``c = zeta + zeta^-1`` for a 5th root of unity)."""
    if F.e == 1 and F.p % 5 not in (1, 4):
        raise ValueError(f"5 is not a square modulo {F.p}")
    if F.p == 2 or F.p == 5:
        raise ValueError("characteristic must differ from 2 and 5")
    s = F.sqrt(5 % F.p)
    if s is None:
        raise ValueError("5 has no square root in this field")
    return F.mul(F.sub(s, 1), F.inv(2))


def phi5_companion(p: int, dim: int) -> Matrix:
    """A matrix of order 5 over GF(p) without eigenvalue 1, irreducible of size ``dim``."""
    if p == 5:
        raise ValueError("p must differ from 5")
    F = Field(p)
    r = p % 5
    expected = {1: 1, 4: 2, 2: 4, 3: 4}[r]
    if dim != expected:
        raise ValueError(f"dimension {dim} incompatible with p = {p} (needs {expected})")
    if dim == 1:
        zeta = F.power(F.primitive_element, (p - 1) // 5)
        return Matrix.from_rows(F, [[zeta]])
    if dim == 2:
        c = golden_trace(F)
        return companion(F, [1, F.neg(c), 1])
    return companion(F, [1, 1, 1, 1, 1])


def deleted_permutation_matrix(F: Field, images: Sequence[int]) -> Matrix:
    """Matrix of a permutation of {0..n-1} on the sum-zero module.

    Basis ``e_i - e_{n-1}`` for ``i < n-1``; for ``p`` not dividing ``n`` this is
    the deleted permutation module.
    """
    n = len(images)
    m = n - 1
    cols = []
    last = images[n - 1]
    for i in range(m):
        v = [0] * n
        v[images[i]] = F.add(v[images[i]], 1)
        v[last] = F.sub(v[last], 1)
        cols.append(v[:m])
    return Matrix.from_rows(F, cols).T


# ---------------------------------------------------------------------------
# Galois descent


def _sample_words(rep: MatRep, count: int, seed: int) -> list[Matrix]:
    rng = random.Random(seed)
    return [rep.random_word(rng, rng.randrange(1, 10)) for _ in range(count)]


def traces_in_prime_field(rep: MatRep, samples: int = 40, seed: int = 0) -> bool:
    F = rep.field
    words = list(rep.gens) + _sample_words(rep, samples, seed)
    return all(F.in_prime_field(w.trace()) for w in words)


def galois_descent(rep: MatRep, samples: int = 40, seed: int = 0) -> MatRep:
    """Rewrite an absolutely irreducible rep over GF(p^2) on a GF(p)-basis."""
    F = rep.field
    if F.e == 1:
        return rep
    if not traces_in_prime_field(rep, samples, seed):
        raise ValueError("some trace lies outside GF(p); no descent exists")
    n = rep.dim
    conj = MatRep(F, [g.frobenius() for g in rep.gens])
    sols = intertwiners(conj, rep)
    if len(sols) != 1:
        raise ValueError(f"intertwiner space has dimension {len(sols)}; rep not absolutely irreducible")
    T = sols[0]
    prod = T @ T.frobenius()
    lam = prod[0, 0]
    if prod != Matrix.scalar(F, n, lam) or not F.in_prime_field(lam) or lam == 0:
        raise AssertionError("T * sigma(T) is not a nonzero GF(p) scalar")
    mu = _norm_preimage(F, lam)
    T1 = T.scale(F.inv(mu))
    assert (T1 @ T1.frobenius()).is_identity()

    def phi(v: Matrix) -> Matrix:  # v is a column
        return T1 @ v.frobenius()

    x = F.make(0, 1)
    cols: list[Matrix] = []
    current = Matrix.zeros(F, n, 0)
    for i in range(n):
        e_i = Matrix.identity(F, n).select_cols([i])
        for scalar in (1, x):
            v = e_i.scale(scalar)
            w = v + phi(v)
            if w.is_zero():
                continue
            trial = Matrix(F, np.concatenate([current.planes, w.planes], axis=2))
            if trial.rank() > current.cols:
                current = trial
                cols.append(w)
            if current.cols == n:
                break
        if current.cols == n:
            break
    if current.cols != n:
        raise AssertionError("fixed vectors of the semilinear map do not span")
    B = current
    Binv = B.inverse()
    prime = F.prime_field
    gens = []
    for g in rep.gens:
        h = Binv @ g @ B
        if not h.in_prime_field():
            raise AssertionError("descended generator has entries outside GF(p)")
        gens.append(h.over(prime))
    return MatRep(prime, gens, name=f"{rep.name}/GF({F.p})")


def _norm_preimage(F: Field, lam: int) -> int:
    """Some ``mu`` in GF(p^2) with ``mu^(p+1) = lam`` (``lam`` in GF(p))."""
    p = F.p
    for b in range(p):
        t = (lam + F.ns * b * b) % p
        a = F.prime_field.sqrt(t)
        if a is not None:
            mu = F.make(a, b)
            if mu and F.norm(mu) == lam:
                return mu
    raise AssertionError("norm map is surjective; search cannot fail")
