"""Finite-dimensional associative unital F_p-algebras by structure constants.

An algebra is given by a basis b_0..b_{n-1}, structure constants
c[i][j][k] with b_i * b_j = sum_k c[i][j][k] b_k, and a unit vector.
Associativity and the unit law are checked at construction.  An optional
radical basis may be supplied (builders populate it); when present it is
checked to span a nilpotent two-sided ideal, which is exactly what the
minimal-cover constructions downstream rely on.  Semisimplicity of the
quotient is not verified.

Left modules are the canonical stored form everywhere; a right module is
represented as a left module over opposite(a).
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from .linalg import FieldMatrix, PrimeField, rank, hstack, solve


class AlgebraError(ValueError):
    pass


class Algebra:
    """F_p-algebra by structure constants, immutable after validation."""

    def __init__(self, field: PrimeField, basis: list[str],
                 mul: np.ndarray, unit: list[int],
                 radical_basis: list[list[int]] | None = None,
                 name: str = "", *,
                 idempotents: list[list[int]] | None = None):
        self.field = field
        self.dim = len(basis)
        self.basis = tuple(basis)
        self.name = name or "algebra"
        c = np.asarray(mul, dtype=field.dtype) % field.p
        if c.shape != (self.dim, self.dim, self.dim):
            raise AlgebraError(f"structure tensor shape {c.shape}, "
                               f"expected {(self.dim,) * 3}")
        c.setflags(write=False)
        self.mul = c
        u = np.asarray(unit, dtype=field.dtype) % field.p
        if u.shape != (self.dim,):
            raise AlgebraError("unit vector has wrong length")
        u.setflags(write=False)
        self.unit = u
        self.radical_basis = (tuple(tuple(int(x) % field.p for x in v)
                                    for v in radical_basis)
                              if radical_basis is not None else None)
        # orthogonal primitive idempotents, populated by builders; used to
        # construct simple modules for probe batteries
        self.idempotents = (tuple(tuple(int(x) % field.p for x in v)
                                  for v in idempotents)
                            if idempotents is not None else None)
        self._opposite: Algebra | None = None
        self._validate()

    # -- multiplication -------------------------------------------------
    # einsum is used when int64 cannot overflow; otherwise exact loops
    # (dims here are tiny, so the loops cost nothing)

    @property
    def _fast(self) -> bool:
        p = self.field.p
        return (self.field.dtype is np.int64
                and (p - 1) ** 2 * max(1, self.dim) < 2**63)

    def lmult(self, u) -> FieldMatrix:
        """Matrix of x -> u*x on coefficient vectors."""
        uv = np.asarray(u, dtype=self.field.dtype) % self.field.p
        if self._fast:
            mat = np.einsum("i,ijk->kj", uv, self.mul) % self.field.p
        else:
            n, p = self.dim, self.field.p
            mat = np.array([[sum(int(uv[i]) * int(self.mul[i, j, k])
                                 for i in range(n)) % p
                             for j in range(n)] for k in range(n)],
                           dtype=self.field.dtype).reshape(n, n)
        return FieldMatrix(self.field, mat)

    def rmult(self, v) -> FieldMatrix:
        """Matrix of x -> x*v on coefficient vectors."""
        vv = np.asarray(v, dtype=self.field.dtype) % self.field.p
        if self._fast:
            mat = np.einsum("j,ijk->ki", vv, self.mul) % self.field.p
        else:
            n, p = self.dim, self.field.p
            mat = np.array([[sum(int(vv[j]) * int(self.mul[i, j, k])
                                 for j in range(n)) % p
                             for i in range(n)] for k in range(n)],
                           dtype=self.field.dtype).reshape(n, n)
        return FieldMatrix(self.field, mat)

    def mul_vec(self, u, v) -> np.ndarray:
        uv = np.asarray(u, dtype=self.field.dtype) % self.field.p
        return (self.lmult(uv) @ FieldMatrix(
            self.field, np.asarray(v, dtype=self.field.dtype).reshape(-1, 1))
        ).data.reshape(-1)

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=self.field.dtype)
        e[i] = 1
        return e

    # -- derived structure ----------------------------------------------

    @property
    def opposite(self) -> "Algebra":
        """The opposite algebra; an involution (a.opposite.opposite is a)."""
        if self._opposite is None:
            opp = Algebra(self.field, list(self.basis),
                          np.ascontiguousarray(self.mul.swapaxes(0, 1)),
                          list(self.unit),
                          radical_basis=[list(v) for v in self.radical_basis]
                          if self.radical_basis is not None else None,
                          name=self.name + "^op",
                          idempotents=[list(v) for v in self.idempotents]
                          if self.idempotents is not None else None)
            opp._opposite = self
            self._opposite = opp
        return self._opposite

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.swapaxes(0, 1)))

    def content_hash(self) -> str:
        doc = {
            "p": self.field.p,
            "dim": self.dim,
            "basis": list(self.basis),
            "unit": [int(x) for x in self.unit],
            "mul": [[[int(x) for x in row] for row in plane]
                    for plane in self.mul],
            "radical_basis": [list(v) for v in self.radical_basis]
            if self.radical_basis is not None else None,
        }
        blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def __repr__(self):
        return f"Algebra({self.name}, p={self.field.p}, dim={self.dim})"

    # -- validation -----------------------------------------------------

    def _validate(self):
        n, p = self.dim, self.field.p
        if n == 0:
            raise AlgebraError("zero-dimensional algebras are not unital")
        ident = FieldMatrix.identity(self.field, n)
        if self.lmult(self.unit) != ident or self.rmult(self.unit) != ident:
            raise AlgebraError("unit axiom fails: 1*b_i = b_i*1 = b_i violated")
        # (b_i b_j) b_l = b_i (b_j b_l): compare lmult(b_i b_j) rows against
        # iterated products, naming the first failing triple
        for i in range(n):
            for j in range(n):
                ij = self.mul_vec(self.basis_vector(i), self.basis_vector(j))
                for l in range(n):
                    el = self.basis_vector(l)
                    jl = self.mul_vec(self.basis_vector(j), el)
                    lhs = self.mul_vec(ij, el)
                    rhs = self.mul_vec(self.basis_vector(i), jl)
                    if not np.array_equal(lhs, rhs):
                        raise AlgebraError(
                            f"associativity fails at triple ({i},{j},{l}): "
                            f"({self.basis[i]}*{self.basis[j]})*{self.basis[l]} "
                            f"!= {self.basis[i]}*({self.basis[j]}*{self.basis[l]})")
        if self.radical_basis is not None:
            self._validate_radical()

    def _validate_radical(self):
        rad = FieldMatrix(self.field, np.array(
            [list(v) for v in self.radical_basis],
            dtype=self.field.dtype).reshape(len(self.radical_basis), -1)).transpose()
        if rad.rows != self.dim:
            raise AlgebraError("radical vectors have wrong length")
        # two-sided ideal: b_i*r and r*b_i stay in the span
        for i in range(self.dim):
            e = self.basis_vector(i)
            for prod in (self.lmult(e) @ rad, self.rmult(e) @ rad):
                if solve(rad, prod) is None:
                    raise AlgebraError(
                        f"radical span is not a two-sided ideal "
                        f"(multiplication by {self.basis[i]} leaves it)")
        # nilpotency of the ideal, needed for Nakayama-style minimal covers
        power = rad
        for _ in range(self.dim + 1):
            if power.is_zero() or power.cols == 0:
                return
            cols = [self.lmult(np.asarray(power.data[:, t]))
                    @ rad for t in range(power.cols)]
            power = hstack(cols)
        if rank(power) > 0:
            raise AlgebraError("radical span is not a nilpotent ideal")


# -- builders -----------------------------------------------------------


def truncated_poly(p: int, n: int, name: str | None = None) -> Algebra:
    """F_p[x]/(x^n) with basis 1, x, ..., x^{n-1}."""
    if n < 1:
        raise AlgebraError("need n >= 1")
    field = PrimeField(p)
    mul = np.zeros((n, n, n), dtype=field.dtype)
    for i in range(n):
        for j in range(n):
            if i + j < n:
                mul[i, j, i + j] = 1
    unit = [1] + [0] * (n - 1)
    rad = [[1 if k == i else 0 for k in range(n)] for i in range(1, n)]
    labels = ["1"] + [f"x{i}" if i > 1 else "x" for i in range(1, n)]
    return Algebra(field, labels, mul, unit,
                   radical_basis=rad or None,
                   name=name or f"k{p}x{n}",
                   idempotents=[unit])


def path_algebra_a_n(p: int, n: int, name: str | None = None) -> Algebra:
    """Path algebra of the linear A_n quiver 1 -> 2 -> ... -> n.

    Basis: all paths, ordered by length then source vertex.  A path from
    i to j acts on left modules as a map from the i-component to the
    j-component; the product a*b is "b then a".
    """
    if n < 1:
        raise AlgebraError("need n >= 1")
    field = PrimeField(p)
    paths = []  # (source, target)
    for length in range(n):
        for src in range(1, n - length + 1):
            paths.append((src, src + length))
    index = {pq: k for k, pq in enumerate(paths)}
    dim = len(paths)
    mul = np.zeros((dim, dim, dim), dtype=field.dtype)
    for ai, (asrc, atgt) in enumerate(paths):
        for bi, (bsrc, btgt) in enumerate(paths):
            if btgt == asrc:
                mul[ai, bi, index[(bsrc, atgt)]] = 1
    unit = [0] * dim
    for v in range(1, n + 1):
        unit[index[(v, v)]] = 1
    labels = [f"e{s}" if s == t else f"x{s}{t}" for s, t in paths]
    rad = [[1 if k == i else 0 for k in range(dim)]
           for i, (s, t) in enumerate(paths) if s != t]
    idems = []
    for v in range(1, n + 1):
        e = [0] * dim
        e[index[(v, v)]] = 1
        idems.append(e)
    return Algebra(field, labels, mul, unit,
                   radical_basis=rad or None,
                   name=name or f"a{n}p{p}",
                   idempotents=idems)


def dual_bimodule_data(a: Algebra) -> Algebra:
    """The algebra acting on k-duals: D_k of a left a-module is a left
    module over opposite(a) (action matrices transposed)."""
    return a.opposite


# -- file format --------------------------------------------------------


def algebra_from_dict(doc: dict) -> Algebra:
    try:
        p = int(doc["p"])
        dim = int(doc["dim"])
        basis = [str(x) for x in doc["basis"]]
        unit = [int(x) for x in doc["unit"]]
        mul_spec = doc["mul"]
    except KeyError as exc:
        raise AlgebraError(f"algebra file missing field {exc}") from exc
    field = PrimeField(p)
    if len(basis) != dim:
        raise AlgebraError("basis labels do not match dim")
    mul = np.zeros((dim, dim, dim), dtype=field.dtype)
    is_triples = (bool(mul_spec) and isinstance(mul_spec[0], list)
                  and len(mul_spec[0]) == 3
                  and not isinstance(mul_spec[0][0], list)
                  and isinstance(mul_spec[0][2], list))
    if is_triples:
        for i, j, coeffs in mul_spec:
            if len(coeffs) != dim:
                raise AlgebraError(f"mul triple ({i},{j}) has wrong length")
            mul[int(i), int(j), :] = [int(x) for x in coeffs]
    else:
        mul = np.asarray(mul_spec, dtype=field.dtype)
    rad = doc.get("radical_basis")
    return Algebra(field, basis, mul, unit,
                   radical_basis=rad, name=str(doc.get("name", "algebra")))


def algebra_to_dict(a: Algebra) -> dict:
    return {
        "name": a.name,
        "p": a.field.p,
        "dim": a.dim,
        "basis": list(a.basis),
        "unit": [int(x) for x in a.unit],
        "mul": [[[int(x) for x in row] for row in plane] for plane in a.mul],
        **({"radical_basis": [list(v) for v in a.radical_basis]}
           if a.radical_basis is not None else {}),
    }


def load_algebra(path: str) -> Algebra:
    with open(path) as fh:
        return algebra_from_dict(json.load(fh))
