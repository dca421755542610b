"""Exact dense linear algebra over a prime field F_p.

Field elements are canonical int residues in [0, p). Matrices are square,
immutable, and backed by int64 numpy arrays; with p < 2^20 every dot product
of length up to ~2^22 fits in int64 before reduction, so all arithmetic here
is exact.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    ModulusTooLarge,
    NotPrime,
    Singular,
)

MAX_MODULUS = 1 << 20


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The prime field F_p, p prime and at most 2^20."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise NotPrime(f"modulus {p!r} is not a prime number")
        if p > MAX_MODULUS:
            raise ModulusTooLarge(f"modulus {p} exceeds the 2^20 root-scan cap")
        self.p = p

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def element(self, value: int) -> int:
        return value % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)


class Matrix:
    """Immutable square matrix over a PrimeField."""

    __slots__ = ("field", "n", "entries")

    def __init__(self, field: PrimeField, entries):
        arr = np.asarray(entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionMismatch(f"expected a square array, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise DimensionMismatch("matrix order must be at least 1")
        arr = arr % field.p
        arr.flags.writeable = False
        self.field = field
        self.n = int(arr.shape[0])
        self.entries = arr

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> Matrix:
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zero(cls, field: PrimeField, n: int) -> Matrix:
        return cls(field, np.zeros((n, n), dtype=np.int64))

    @classmethod
    def unit(cls, field: PrimeField, n: int, i: int, j: int) -> Matrix:
        """The matrix unit with a single 1 at position (i, j), 0-indexed."""
        arr = np.zeros((n, n), dtype=np.int64)
        arr[i, j] = 1
        return cls(field, arr)

    def vec(self) -> np.ndarray:
        """Row-major flattening into F_p^{n^2} (read-only view)."""
        return self.entries.reshape(-1)

    def add(self, other: Matrix) -> Matrix:
        _check_pair(self, other)
        return Matrix(self.field, self.entries + other.entries)

    def sub(self, other: Matrix) -> Matrix:
        _check_pair(self, other)
        return Matrix(self.field, self.entries - other.entries)

    def scale(self, c: int) -> Matrix:
        return Matrix(self.field, self.entries * (c % self.field.p))

    def is_zero(self) -> bool:
        return not self.entries.any()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.n == self.n
            and np.array_equal(other.entries, self.entries)
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.n, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix(F_{self.field.p}, {self.entries.tolist()})"


class Polynomial:
    """Polynomial over F_p, coefficients ascending, no trailing zeros.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs: Iterable[int]):
        cs = [c % field.p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field: PrimeField) -> Polynomial:
        return cls(field, ())

    @classmethod
    def one(cls, field: PrimeField) -> Polynomial:
        return cls(field, (1,))

    @classmethod
    def x_minus(cls, field: PrimeField, lam: int) -> Polynomial:
        return cls(field, (-lam, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def mul(self, other: Polynomial) -> Polynomial:
        _check_field(self.field, other.field)
        if not self.coeffs or not other.coeffs:
            return Polynomial.zero(self.field)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(self.field, out)

    def add(self, other: Polynomial) -> Polynomial:
        _check_field(self.field, other.field)
        m = max(len(self.coeffs), len(other.coeffs))
        out = [0] * m
        for i, a in enumerate(self.coeffs):
            out[i] += a
        for i, b in enumerate(other.coeffs):
            out[i] += b
        return Polynomial(self.field, out)

    def eval_scalar(self, x: int) -> int:
        p = self.field.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def eval_many(self, xs: np.ndarray) -> np.ndarray:
        """Horner evaluation at a vector of points (used by the root scan)."""
        p = self.field.p
        acc = np.zeros_like(xs)
        for c in reversed(self.coeffs):
            acc = (acc * xs + c) % p
        return acc

    def divmod_linear(self, lam: int) -> tuple[Polynomial, int]:
        """Synthetic division by (x - lam); returns (quotient, remainder)."""
        p = self.field.p
        if not self.coeffs:
            return Polynomial.zero(self.field), 0
        out = [0] * (len(self.coeffs) - 1)
        acc = 0
        for i in range(len(self.coeffs) - 1, 0, -1):
            acc = (acc * lam + self.coeffs[i]) % p
            out[i - 1] = acc
        rem = (acc * lam + self.coeffs[0]) % p
        return Polynomial(self.field, out), rem

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.coeffs))

    def __repr__(self) -> str:
        return f"Polynomial(F_{self.field.p}, {list(self.coeffs)})"


def _check_field(a: PrimeField, b: PrimeField) -> None:
    if a != b:
        raise FieldMismatch(f"mixed moduli {a.p} and {b.p}")


def _check_pair(a: Matrix, b: Matrix) -> None:
    _check_field(a.field, b.field)
    if a.n != b.n:
        raise DimensionMismatch(f"orders differ: {a.n} vs {b.n}")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Exact product over F_p."""
    _check_pair(a, b)
    return Matrix(a.field, (a.entries @ b.entries) % a.field.p)


def _rref_array(arr: np.ndarray, field: PrimeField) -> tuple[np.ndarray, list[int]]:
    """Gauss-Jordan on an arbitrary rows x cols int64 array; returns (RREF, pivot cols)."""
    p = field.p
    a = arr % p
    m, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * field.inv(int(a[r, c]))) % p
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    reduced, pivots = _rref_array(a.entries.copy(), a.field)
    return Matrix(a.field, reduced), pivots


def rank(a: Matrix) -> int:
    """Row rank over F_p."""
    _, pivots = _rref_array(a.entries.copy(), a.field)
    return len(pivots)


def mat_inverse(a: Matrix) -> Matrix:
    """Inverse of a, or Singular if rank < n."""
    n = a.n
    aug = np.hstack([a.entries, np.eye(n, dtype=np.int64)])
    reduced, pivots = _rref_array(aug, a.field)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise Singular(f"matrix of rank {len([c for c in pivots if c < n])} < {n}")
    return Matrix(a.field, reduced[:, n:])


def conjugate(p: Matrix, a: Matrix) -> Matrix:
    """P A P^{-1} (raises Singular when P is not invertible)."""
    _check_pair(p, a)
    return mat_mul(mat_mul(p, a), mat_inverse(p))


def poly_eval(q: Polynomial, a: Matrix) -> Matrix:
    """Horner evaluation q(A); the constant term multiplies the identity."""
    field = a.field
    _check_field(q.field, field)
    acc = np.zeros((a.n, a.n), dtype=np.int64)
    for c in reversed(q.coeffs):
        acc = (acc @ a.entries) % field.p
        if c:
            acc[np.diag_indices(a.n)] = (acc.diagonal() + c) % field.p
    return Matrix(field, acc)


def solve(columns: np.ndarray, b: np.ndarray, field: PrimeField) -> np.ndarray | None:
    """Solve columns @ x = b over F_p; None if inconsistent or underdetermined."""
    m, k = columns.shape
    aug = np.hstack([columns % field.p, (b % field.p).reshape(-1, 1)])
    reduced, pivots = _rref_array(aug, field)
    if k in pivots:  # pivot in the augmented column: inconsistent
        return None
    if pivots != list(range(k)):
        return None
    x = np.zeros(k, dtype=np.int64)
    x[:] = reduced[: len(pivots), k]
    return x


class SpanBasis:
    """Row-reduced basis of a subspace of F_p^{ambient_dim}.

    Rows are kept in RREF with strictly increasing pivot columns, so a vector
    reduces against the whole basis in one shot: its coordinate on row i is
    its entry at pivot column i.
    """

    __slots__ = ("field", "ambient_dim", "_rows", "_pivots")

    def __init__(self, field: PrimeField, ambient_dim: int):
        self.field = field
        self.ambient_dim = int(ambient_dim)
        self._rows = np.zeros((0, self.ambient_dim), dtype=np.int64)
        self._pivots: list[int] = []

    def dim(self) -> int:
        return len(self._pivots)

    @property
    def rows(self) -> np.ndarray:
        return self._rows

    @property
    def pivot_cols(self) -> tuple[int, ...]:
        return tuple(self._pivots)

    def reduce(self, vec: Sequence[int] | np.ndarray) -> np.ndarray:
        """Residue of vec after elimination against the basis."""
        v = np.asarray(vec, dtype=np.int64) % self.field.p
        if v.shape != (self.ambient_dim,):
            raise DimensionMismatch(
                f"vector of shape {v.shape} does not match ambient dimension {self.ambient_dim}"
            )
        if self._pivots:
            coeffs = v[self._pivots]
            if coeffs.any():
                v = (v - coeffs @ self._rows) % self.field.p
        return v

    def contains(self, vec: Sequence[int] | np.ndarray) -> bool:
        return not self.reduce(vec).any()

    def insert(self, vec: Sequence[int] | np.ndarray) -> bool:
        """Insert vec if independent; returns True iff the dimension grew."""
        v = self.reduce(vec)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        j = int(nz[0])
        v = (v * self.field.inv(int(v[j]))) % self.field.p
        if self._pivots:
            col = self._rows[:, j].copy()
            if col.any():
                self._rows = (self._rows - np.outer(col, v)) % self.field.p
        pos = bisect_left(self._pivots, j)
        self._rows = np.insert(self._rows, pos, v, axis=0)
        self._pivots.insert(pos, j)
        return True


def span_insert(basis: SpanBasis, m: Matrix) -> bool:
    """Vectorize m row-major and insert into basis; True iff dim grew by 1."""
    if m.n * m.n != basis.ambient_dim:
        raise DimensionMismatch(
            f"matrix order {m.n} does not vectorize into ambient {basis.ambient_dim}"
        )
    _check_field(m.field, basis.field)
    return basis.insert(m.vec())
