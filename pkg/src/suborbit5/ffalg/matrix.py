"""Dense matrices over GF(p) and GF(p^2) with exact Gaussian elimination."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .field import Field


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[-1]
    if p * p * max(inner, 1) < 2**62:
        return (a @ b) % p
    out = a.astype(object) @ b.astype(object)
    return (out % p).astype(np.int64)


class Matrix:
    """An ``rows x cols`` matrix stored as a planes array of shape (e, rows, cols)."""

    __slots__ = ("field", "planes")

    def __init__(self, field: Field, planes: np.ndarray) -> None:
        planes = np.asarray(planes, dtype=np.int64)
        if planes.ndim != 3 or planes.shape[0] != field.e:
            raise ValueError("planes must have shape (e, rows, cols)")
        planes.flags.writeable = False
        self.field = field
        self.planes = planes

    # -- construction ----------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[int]]) -> "Matrix":
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        return cls(field, field.to_planes(arr))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(field, np.zeros((field.e, rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        planes = np.zeros((field.e, n, n), dtype=np.int64)
        planes[0] = np.eye(n, dtype=np.int64)
        return cls(field, planes)

    @classmethod
    def scalar(cls, field: Field, n: int, value: int) -> "Matrix":
        return cls.identity(field, n).scale(value)

    @classmethod
    def diagonal(cls, field: Field, values: Sequence[int]) -> "Matrix":
        n = len(values)
        planes = np.zeros((field.e, n, n), dtype=np.int64)
        vp = field.to_planes(list(values))
        for k in range(field.e):
            planes[k][np.arange(n), np.arange(n)] = vp[k]
        return cls(field, planes)

    @classmethod
    def vstack(cls, field: Field, mats: Iterable["Matrix"], cols: int) -> "Matrix":
        mats = [m.planes for m in mats]
        if not mats:
            return cls.zeros(field, 0, cols)
        return cls(field, np.concatenate(mats, axis=1))

    # -- basic properties -------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.planes.shape[1], self.planes.shape[2]

    @property
    def rows(self) -> int:
        return self.planes.shape[1]

    @property
    def cols(self) -> int:
        return self.planes.shape[2]

    def entries(self) -> np.ndarray:
        """Encoded entries (``a + b*p``) as an int array."""
        return self.field.from_planes(self.planes)

    def to_rows(self) -> list[list[int]]:
        return self.entries().tolist()

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return int(self.field.from_planes(self.planes[:, i : i + 1, j : j + 1])[0, 0])

    def row(self, i: int) -> "Matrix":
        return Matrix(self.field, self.planes[:, i : i + 1, :])

    def select_rows(self, idx) -> "Matrix":
        return Matrix(self.field, self.planes[:, idx, :])

    def select_cols(self, idx) -> "Matrix":
        return Matrix(self.field, self.planes[:, :, idx])

    def key(self) -> bytes:
        return self.planes.tobytes()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.planes.shape == other.planes.shape
            and np.array_equal(self.planes, other.planes)
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.key()))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.to_rows())
        return f"Matrix({self.field}, [{body}])"

    def is_zero(self) -> bool:
        return not self.planes.any()

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.field, self.rows)

    def in_prime_field(self) -> bool:
        return self.field.e == 1 or not self.planes[1].any()

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, (self.planes + other.planes) % self.field.p)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, (self.planes - other.planes) % self.field.p)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, (-self.planes) % self.field.p)

    def scale(self, c: int) -> "Matrix":
        cp = self.field.to_planes([c]).reshape(self.field.e, 1, 1)
        return Matrix(self.field, self.field.pmul(cp, self.planes))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        p = F.p
        a, b = self.planes, other.planes
        if F.e == 1:
            return Matrix(F, _matmul_mod(a[0], b[0], p)[None])
        a0b0 = _matmul_mod(a[0], b[0], p)
        a1b1 = _matmul_mod(a[1], b[1], p)
        c0 = (a0b0 + F.ns * a1b1) % p
        c1 = (_matmul_mod(a[0], b[1], p) + _matmul_mod(a[1], b[0], p)) % p
        return Matrix(F, np.stack([c0, c1]))

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.planes.transpose(0, 2, 1))

    def frobenius(self) -> "Matrix":
        """Entrywise ``a -> a^p``."""
        if self.field.e == 1:
            return self
        planes = self.planes.copy()
        planes[1] = (-planes[1]) % self.field.p
        return Matrix(self.field, planes)

    def trace(self) -> int:
        F = self.field
        diag = self.planes[:, np.arange(self.rows), np.arange(self.rows)].sum(axis=1) % F.p
        return int(F.from_planes(diag.reshape(F.e, 1))[0])

    def kron(self, other: "Matrix") -> "Matrix":
        F = self.field
        r1, c1 = self.shape
        r2, c2 = other.shape
        a = self.planes[:, :, None, :, None]
        b = other.planes[:, None, :, None, :]
        prod = F.pmul(a, b)
        return Matrix(F, prod.reshape(F.e, r1 * r2, c1 * c2))

    def over(self, field: Field) -> "Matrix":
        """Re-express over a field with the same characteristic."""
        if field.p != self.field.p:
            raise ValueError("characteristic mismatch")
        if field.e == self.field.e:
            return self
        if field.e == 2:
            planes = np.concatenate([self.planes, np.zeros_like(self.planes)])
            return Matrix(field, planes)
        if self.planes[1].any():
            raise ValueError("matrix has entries outside the prime field")
        return Matrix(field, self.planes[:1].copy())

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form (zero rows dropped) and pivot columns."""
        F = self.field
        p = F.p
        m = self.planes.copy()
        r, c = self.shape
        pivots: list[int] = []
        row = 0
        for col in range(c):
            if row >= r:
                break
            nz = np.flatnonzero(m[:, row:, col].any(axis=0))
            if nz.size == 0:
                continue
            piv = row + int(nz[0])
            if piv != row:
                m[:, [row, piv], :] = m[:, [piv, row], :]
            inv = F.pinv_scalar(m[:, row, col])
            m[:, row, :] = F.pmul(inv[:, None], m[:, row, :])
            factors = m[:, :, col].copy()
            factors[:, row] = 0
            mask = factors.any(axis=0)
            if mask.any():
                upd = F.pmul(factors[:, mask][:, :, None], m[:, row, :][:, None, :])
                m[:, mask, :] = (m[:, mask, :] - upd) % p
            pivots.append(col)
            row += 1
        return Matrix(F, m[:, :row, :]), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> "Matrix":
        """Rows form a basis of ``{v : self @ v = 0}``."""
        F = self.field
        red, pivots = self.rref()
        c = self.cols
        free = [j for j in range(c) if j not in set(pivots)]
        basis = np.zeros((F.e, len(free), c), dtype=np.int64)
        for k, j in enumerate(free):
            basis[0, k, j] = 1
            # pivot variable = - (coefficient of free var j) in that row
            basis[:, k, pivots] = (-red.planes[:, : len(pivots), j]) % F.p
        return Matrix(F, basis)

    def inverse(self) -> "Matrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("not square")
        aug = Matrix(self.field, np.concatenate([self.planes, Matrix.identity(self.field, n).planes], axis=2))
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix(self.field, red.planes[:, :, n:])

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def det(self) -> int:
        F = self.field
        n = self.rows
        m = [[int(x) for x in row] for row in self.to_rows()]
        det = 1
        for col in range(n):
            piv = next((i for i in range(col, n) if m[i][col]), None)
            if piv is None:
                return 0
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = F.neg(det)
            det = F.mul(det, m[col][col])
            inv = F.inv(m[col][col])
            for i in range(col + 1, n):
                if m[i][col]:
                    f = F.mul(m[i][col], inv)
                    m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[col])]
        return det

    def order(self, limit: int = 100_000) -> int:
        """Multiplicative order (square invertible matrices)."""
        ident = Matrix.identity(self.field, self.rows)
        x = self
        for k in range(1, limit + 1):
            if x == ident:
                return k
            x = x @ self
        raise ValueError(f"order exceeds {limit}")

    def charpoly(self) -> list[int]:
        """Characteristic polynomial, coefficients from constant term upwards."""
        return charpoly(self)


def charpoly(m: Matrix) -> list[int]:
    """Characteristic polynomial via Hessenberg reduction (scalar arithmetic)."""
    F = m.field
    n = m.rows
    a = [[int(x) for x in row] for row in m.to_rows()]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if a[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            a[j + 1], a[piv] = a[piv], a[j + 1]
            for row in a:
                row[j + 1], row[piv] = row[piv], row[j + 1]
        inv = F.inv(a[j + 1][j])
        for i in range(j + 2, n):
            if a[i][j]:
                f = F.mul(a[i][j], inv)
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[j + 1])]
                for row in a:
                    row[j + 1] = F.add(row[j + 1], F.mul(f, row[i]))
    # recurrence for characteristic polynomials of leading Hessenberg blocks
    polys: list[list[int]] = [[1]]
    for k in range(n):
        # p_{k+1} = (x - a_kk) p_k - sum_{i<k} a_ik * prod_{l=i+1..k} a_{l,l-1} * p_i
        nxt = [0] + polys[k]
        nxt = _poly_sub(F, nxt, _poly_scale(F, polys[k], a[k][k]))
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = F.mul(prod, a[i + 1][i])
            if prod == 0:
                break
            coef = F.mul(a[i][k], prod)
            if coef:
                nxt = _poly_sub(F, nxt, _poly_scale(F, polys[i], coef))
        polys.append(nxt)
    return polys[n]


def _poly_scale(F: Field, poly: list[int], c: int) -> list[int]:
    return [F.mul(x, c) for x in poly]


def _poly_sub(F: Field, a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return [F.sub(x, y) for x, y in zip(a, b)]


def poly_eval_matrix(poly: Sequence[int], m: Matrix) -> Matrix:
    """Horner evaluation of a polynomial (constant term first) at a matrix."""
    n = m.rows
    result = Matrix.zeros(m.field, n)
    for c in reversed(poly):
        result = (result @ m) + Matrix.scalar(m.field, n, c)
    return result


def poly_roots(F: Field, poly: Sequence[int], limit: int = 2**20) -> list[int]:
    """Roots in ``F`` by vectorized evaluation at every element (``|F| <= limit``)."""
    if F.q > limit:
        raise ValueError(f"field too large for root search ({F.q} > {limit})")
    xs = F.to_planes(np.arange(F.q, dtype=np.int64))
    acc = np.zeros_like(xs)
    for c in reversed(list(poly)):
        cp = F.to_planes([c]).reshape(F.e, 1)
        acc = (F.pmul(acc, xs) + cp) % F.p
    return np.flatnonzero(~acc.any(axis=0)).tolist()
