"""Exact dense linear algebra over F_p or Q.

Storage is numpy: int64 arrays reduced mod p for prime fields, object
arrays of ints/Fractions for the rationals.  Internally the package works
with row vectors (subspaces are row spans, maps act as ``v @ A``); the
public :class:`Matrix` wrapper follows the usual column conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InputError

DEFAULT_PRIME = 32003
_I64_MAX = (1 << 63) - 1


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either ``prime(p)`` or ``rational()``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind == "prime":
            if not (2 <= self.p < 2**31) or not _is_prime(self.p):
                raise InputError(f"characteristic {self.p} is not a prime below 2^31")
        elif self.kind == "rational":
            if self.p != 0:
                raise InputError("rational field carries no prime")
        else:
            raise InputError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p=DEFAULT_PRIME):
        return cls("prime", int(p))

    @classmethod
    def rational(cls):
        return cls("rational", 0)

    @classmethod
    def from_char(cls, c):
        c = int(c)
        return cls.rational() if c == 0 else cls.prime(c)

    @property
    def is_prime(self):
        return self.kind == "prime"

    @property
    def char(self):
        return self.p

    @property
    def label(self):
        return str(self.p) if self.is_prime else "Q"

    @property
    def dtype(self):
        return np.int64 if self.is_prime else object

    # scalars -----------------------------------------------------------

    def scalar(self, x):
        """Canonical representative of ``x`` (int in [0, p) or Fraction)."""
        if self.is_prime:
            if isinstance(x, Fraction):
                num = x.numerator % self.p
                den = x.denominator % self.p
                if den == 0:
                    raise InputError(f"{x} has no value mod {self.p}")
                return num * pow(den, self.p - 2, self.p) % self.p
            return int(x) % self.p
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_prime:
            return pow(int(x), self.p - 2, self.p)
        return self.scalar(1 / Fraction(x))

    def fmt(self, x):
        if self.is_prime:
            return str(int(x))
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    # arrays ------------------------------------------------------------

    def zeros(self, shape):
        if self.is_prime:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(0)
        return out

    def eye(self, n):
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = 1
        return out

    def array(self, data, shape=None):
        if self.is_prime:
            a = np.array(data, dtype=object)
            a = np.vectorize(self.scalar, otypes=[np.int64])(a) if a.size else np.zeros(a.shape, np.int64)
        else:
            a = np.array(data, dtype=object)
            if a.size:
                a = np.vectorize(self.scalar, otypes=[object])(a)
        if shape is not None:
            a = a.reshape(shape)
        return a

    def norm(self, a):
        if self.is_prime:
            return a % self.p
        return a

    def matmul(self, a, b):
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        if not self.is_prime:
            return a @ b
        k = a.shape[1]
        chunk = max(1, _I64_MAX // ((self.p - 1) ** 2 + 1))
        if k <= chunk:
            return (a @ b) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for s in range(0, k, chunk):
            out = (out + (a[:, s:s + chunk] @ b[s:s + chunk]) % self.p) % self.p
        return out


# ---------------------------------------------------------------------------
# row-convention kernels used throughout the package


def rref_rows(F, a):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = np.array(a, dtype=F.dtype, copy=True)
    if a.ndim != 2:
        raise InputError("expected a 2-d array")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = a[r, c]
        if piv != 1:
            a[r] = F.norm(a[r] * F.inv(piv))
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = F.norm(a[hit] - np.outer(col[hit], a[r]))
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(F, a):
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    return len(rref_rows(F, a)[1])


def row_space(F, a, ncols=None):
    """RREF basis of the row span (an (r x n) array, r possibly 0)."""
    if a is None or len(a) == 0:
        return F.zeros((0, ncols if ncols is not None else 0))
    return rref_rows(F, a)[0]


def stack(F, blocks, ncols):
    blocks = [b for b in blocks if b is not None and b.shape[0] > 0]
    if not blocks:
        return F.zeros((0, ncols))
    return np.vstack(blocks)


def null_space_cols(F, a):
    """Columns spanning {v : a v = 0}, as an (ncols x k) array."""
    rows, cols = a.shape
    R, piv = rref_rows(F, a) if rows else (F.zeros((0, cols)), [])
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    out = F.zeros((cols, len(free)))
    if free:
        idx = np.arange(len(free))
        out[free, idx] = 1
        if piv:
            out[np.ix_(piv, idx)] = F.norm(-R[:, free])
    return out


def left_kernel(F, a):
    """RREF rows spanning {v : v a = 0}."""
    n = a.shape[0]
    if n == 0:
        return F.zeros((0, 0))
    if a.shape[1] == 0:
        return F.eye(n)
    k = null_space_cols(F, a.T.copy())
    if k.shape[1] == 0:
        return F.zeros((0, n))
    return rref_rows(F, k.T.copy())[0]


def projector(F, S, piv, n):
    """Matrix of F^n -> F^n / rowspan(S) in coordinates of the non-pivot columns.

    ``S`` must be in RREF with pivot list ``piv``.  The map is v -> v - v[piv] S,
    restricted to the remaining columns.
    """
    pivset = set(piv)
    keep = [c for c in range(n) if c not in pivset]
    P = F.eye(n)
    if len(piv):
        P[list(piv)] = F.norm(P[list(piv)] - S)
    return P[:, keep], keep


def contains(F, S, piv, v):
    """Is the row ``v`` in the row span of RREF ``S``?"""
    if not len(piv):
        return not np.any(v)
    r = F.norm(v - F.matmul(v[piv].reshape(1, -1), S)[0])
    return not np.any(r)


def subspace_le(F, A, B):
    """rowspan(A) subset of rowspan(B); B in RREF."""
    if A.shape[0] == 0:
        return True
    if B.shape[0] == 0:
        return not np.any(A)
    piv = pivots_of(B)
    red = F.norm(A - F.matmul(A[:, piv], B))
    return not np.any(red)


def pivots_of(R):
    out = []
    for row in R:
        nz = np.flatnonzero(row)
        out.append(int(nz[0]))
    return out


def intersect(F, A, B, n):
    """RREF basis of rowspan(A) ∩ rowspan(B) (both RREF)."""
    if A.shape[0] == 0 or B.shape[0] == 0:
        return F.zeros((0, n))
    P, _ = projector(F, B, pivots_of(B), n)
    K = left_kernel(F, F.matmul(A, P))
    if K.shape[0] == 0:
        return F.zeros((0, n))
    return row_space(F, F.matmul(K, A), n)


def solve_left(F, a, v):
    """Some c with c @ a = v, or None."""
    n = a.shape[0]
    if n == 0:
        return F.zeros(0) if not np.any(v) else None
    aug = np.hstack([a.T, v.reshape(-1, 1)])
    R, piv = rref_rows(F, aug)
    if piv and piv[-1] == n:
        return None
    c = F.zeros(n)
    for i, p in enumerate(piv):
        c[p] = R[i, n]
    return c


# ---------------------------------------------------------------------------
# public, column-convention API


class Matrix:
    """Immutable dense matrix over a FieldSpec."""

    __slots__ = ("field", "_a")

    def __init__(self, field, entries, shape=None):
        self.field = field
        if isinstance(entries, np.ndarray) and entries.dtype == field.dtype:
            a = field.norm(entries.copy())
        elif len(entries) == 0:
            a = field.zeros(shape or (0, 0))
        else:
            widths = {len(r) for r in entries}
            if len(widths) != 1:
                raise InputError("matrix entries must form a rectangular grid")
            a = field.array(entries)
        if shape is not None:
            a = a.reshape(shape)
        if a.ndim != 2:
            raise InputError("matrix entries must form a rectangular grid")
        a.setflags(write=False)
        self._a = a

    @property
    def rows(self):
        return self._a.shape[0]

    @property
    def cols(self):
        return self._a.shape[1]

    @property
    def array(self):
        return self._a

    def entries(self):
        return tuple(tuple(self.field.scalar(x) for x in row) for row in self._a)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if other.field != self.field or self.cols != other.rows:
                raise InputError("incompatible matrices")
            return Matrix(self.field, self.field.matmul(self._a, other._a))
        v = self.field.array(list(other)).reshape(-1, 1)
        if v.shape[0] != self.cols:
            raise InputError("dimension mismatch")
        return tuple(self.field.matmul(self._a, v)[:, 0])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self._a.shape == other._a.shape and bool(np.all(self._a == other._a)))

    def __hash__(self):
        return hash((self.field, self._a.shape, self.entries()))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.fmt(x) for x in row) for row in self._a)
        return f"Matrix[{self.field.label}]({self.rows}x{self.cols}: {body})"

    def is_zero(self):
        return not np.any(self._a)


def rref(A):
    """(R, pivots, rank) with R the full-size reduced row echelon form."""
    F = A.field
    R, piv = rref_rows(F, A.array) if A.rows else (F.zeros((0, A.cols)), [])
    full = F.zeros((A.rows, A.cols))
    full[: R.shape[0]] = R
    return Matrix(F, full), list(piv), len(piv)


def kernel_basis(A):
    """Matrix whose columns form a basis of {v : A v = 0}."""
    F = A.field
    return Matrix(F, null_space_cols(F, A.array))


def membership(A, v):
    """c with A c = v, or None when v is outside the column span."""
    F = A.field
    v = F.array(list(v))
    if v.shape != (A.rows,):
        raise InputError(f"vector of length {v.shape[0]} against {A.rows} rows")
    c = solve_left(F, A.array.T.copy(), v)
    if c is None:
        return None
    return tuple(F.scalar(x) for x in c)
