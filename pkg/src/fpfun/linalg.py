"""Exact dense linear algebra over a prime field F_p.

Everything downstream (module categories, functor calculus, the
verification suites) reduces to the operations here.  All results are
deterministic: identical inputs give bit-identical outputs, pivots are
always the leftmost available column, free variables are always set to
zero, and kernel bases follow the standard rref back-substitution form.

Empty matrices (0 x n, n x 0) are first-class; zero modules and empty
presentations occur throughout the functor layer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _core
from ._core.kernels_py import INT64_MAX_PRIME


class PrimeField:
    """The field F_p.  p is checked prime by trial division."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {p!r}")
        d = 2
        while d * d <= p:
            if p % d == 0:
                raise ValueError(f"modulus {p} is not prime (divisor {d})")
            d += 1
        self.p = p

    @property
    def dtype(self):
        return np.int64 if self.p < INT64_MAX_PRIME else object

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class FieldMatrix:
    """Immutable dense matrix over a prime field.

    Entries are residues in [0, p), stored row-major in a read-only
    numpy array.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: PrimeField, data: np.ndarray, *, _raw: bool = False):
        if _raw:
            arr = data
        else:
            arr = np.asarray(data, dtype=field.dtype)
            if arr.ndim != 2:
                raise ValueError(f"expected 2-D data, got shape {arr.shape}")
            arr = arr % field.p
        arr.setflags(write=False)
        self.field = field
        self.rows = int(arr.shape[0])
        self.cols = int(arr.shape[1])
        self.data = arr

    @classmethod
    def from_rows(cls, field: PrimeField, rows: list[list[int]],
                  cols: int | None = None) -> "FieldMatrix":
        if not rows:
            if cols is None:
                raise ValueError("need explicit cols for a 0-row matrix")
            return cls.zeros(field, 0, cols)
        return cls(field, np.array(rows, dtype=field.dtype).reshape(len(rows), -1))

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "FieldMatrix":
        return cls(field, np.zeros((rows, cols), dtype=field.dtype), _raw=True)

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "FieldMatrix":
        return cls(field, np.eye(n, dtype=field.dtype) if field.dtype is np.int64
                   else np.eye(n).astype(object), _raw=True)

    def _wrap(self, arr: np.ndarray) -> "FieldMatrix":
        return FieldMatrix(self.field, arr, _raw=True)

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        return self._wrap(_core.matmul(self.data, other.data, self.field.p))

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check_shape(other)
        return self._wrap((self.data + other.data) % self.field.p)

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check_shape(other)
        return self._wrap((self.data - other.data) % self.field.p)

    def __neg__(self) -> "FieldMatrix":
        return self._wrap((-self.data) % self.field.p)

    def scale(self, c: int) -> "FieldMatrix":
        return self._wrap((self.data * (c % self.field.p)) % self.field.p)

    def transpose(self) -> "FieldMatrix":
        return self._wrap(np.ascontiguousarray(self.data.T))

    def __eq__(self, other):
        return (isinstance(other, FieldMatrix) and other.field == self.field
                and other.shape == self.shape
                and bool(np.array_equal(other.data, self.data)))

    def __hash__(self):
        return hash((self.field.p, self.rows, self.cols,
                     self.data.tobytes() if self.data.dtype == np.int64
                     else tuple(self.data.flat)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not np.any(self.data)

    def column(self, j: int) -> "FieldMatrix":
        return self._wrap(np.ascontiguousarray(self.data[:, j:j + 1]))

    def take_columns(self, idx: list[int]) -> "FieldMatrix":
        return self._wrap(np.ascontiguousarray(self.data[:, idx]))

    def vec(self) -> "FieldMatrix":
        """Row-major flattening as a column vector."""
        return self._wrap(self.data.reshape(self.rows * self.cols, 1))

    def unvec(self, rows: int, cols: int) -> "FieldMatrix":
        if self.cols != 1 or self.rows != rows * cols:
            raise ValueError("unvec shape mismatch")
        return self._wrap(self.data.reshape(rows, cols))

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.data]

    def __repr__(self):
        return f"FieldMatrix(p={self.field.p}, {self.rows}x{self.cols})"

    def _check_field(self, other: "FieldMatrix"):
        if other.field != self.field:
            raise ValueError("field mismatch")

    def _check_shape(self, other: "FieldMatrix"):
        self._check_field(other)
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")


def hstack(mats: list[FieldMatrix]) -> FieldMatrix:
    if not mats:
        raise ValueError("hstack of nothing")
    f = mats[0].field
    return FieldMatrix(f, np.hstack([m.data for m in mats]), _raw=True)


def vstack(mats: list[FieldMatrix]) -> FieldMatrix:
    if not mats:
        raise ValueError("vstack of nothing")
    f = mats[0].field
    return FieldMatrix(f, np.vstack([m.data for m in mats]), _raw=True)


def direct_sum(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    a._check_field(b)
    out = np.zeros((a.rows + b.rows, a.cols + b.cols), dtype=a.field.dtype)
    out[:a.rows, :a.cols] = a.data
    out[a.rows:, a.cols:] = b.data
    return FieldMatrix(a.field, out, _raw=True)


@dataclass(frozen=True)
class RrefResult:
    matrix: FieldMatrix
    pivots: tuple[int, ...]


def rref(m: FieldMatrix) -> RrefResult:
    """Reduced row echelon form; pivot columns are strictly increasing."""
    arr, pivots = _core.rref(m.data, m.field.p)
    return RrefResult(FieldMatrix(m.field, arr, _raw=True), tuple(pivots))


def rank(m: FieldMatrix) -> int:
    return len(rref(m).pivots)


def kernel_basis(m: FieldMatrix) -> FieldMatrix:
    """Basis of the right null space, one vector per column.

    Free columns are taken in increasing order; entries at pivot
    positions come from rref back-substitution.  kernel_basis(m) has
    m.cols rows and (m.cols - rank) columns.
    """
    res = rref(m)
    p = m.field.p
    piv = res.pivots
    free = [j for j in range(m.cols) if j not in set(piv)]
    out = np.zeros((m.cols, len(free)), dtype=m.field.dtype)
    rdata = res.matrix.data
    for t, j in enumerate(free):
        out[j, t] = 1
        for r, pc in enumerate(piv):
            out[pc, t] = (-rdata[r, j]) % p
    return FieldMatrix(m.field, out, _raw=True)


def solve(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix | None:
    """Some X with a @ X = b, or None if unsolvable.

    Deterministic particular solution: free variables are zero.
    """
    a._check_field(b)
    if a.rows != b.rows:
        raise ValueError(f"solve: row mismatch {a.rows} vs {b.rows}")
    aug = hstack([a, b])
    res = rref(aug)
    if any(pc >= a.cols for pc in res.pivots):
        return None
    out = np.zeros((a.cols, b.cols), dtype=a.field.dtype)
    rdata = res.matrix.data
    for r, pc in enumerate(res.pivots):
        out[pc, :] = rdata[r, a.cols:]
    return FieldMatrix(a.field, out, _raw=True)


def image_basis(m: FieldMatrix) -> FieldMatrix:
    """Basis of the column space: the original columns at pivot positions."""
    res = rref(m)
    return m.take_columns(list(res.pivots))


@dataclass(frozen=True)
class QuotientSpace:
    """Quotient of F^n by the column span of a matrix.

    proj (dim x n) maps ambient vectors to quotient coordinates, lift
    (n x dim) chooses representatives; proj @ lift = identity and
    proj annihilates the subspace.
    """

    ambient_dim: int
    dim: int
    proj: FieldMatrix
    lift: FieldMatrix


def quotient_space(span: FieldMatrix) -> QuotientSpace:
    """Quotient of F^n (n = span.rows) by the column span of `span`."""
    f = span.field
    n = span.rows
    res = rref(span.transpose())
    piv = res.pivots
    free = [j for j in range(n) if j not in set(piv)]
    q = len(free)
    proj = np.zeros((q, n), dtype=f.dtype)
    lift = np.zeros((n, q), dtype=f.dtype)
    rdata = res.matrix.data
    for t, j in enumerate(free):
        proj[t, j] = 1
        for r, pc in enumerate(piv):
            proj[t, pc] = (-rdata[r, j]) % f.p
        lift[j, t] = 1
    return QuotientSpace(n, q, FieldMatrix(f, proj, _raw=True),
                         FieldMatrix(f, lift, _raw=True))
