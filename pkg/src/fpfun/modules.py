"""The category mod(Lambda) of finite-dimensional left modules.

Modules carry one action matrix per algebra basis element and are
validated against the module law at construction.  Morphisms are
commuting linear maps.  On top of those sit the homological toolkit:
Hom spaces, kernels and cokernels with induced actions, free covers
(minimal when the algebra carries a radical basis), syzygies, injective
envelopes via k-duality, Ext^1, tensor products and Tor_1, the
transpose into modules over the opposite algebra, and stable Hom spaces
modulo projectives or injectives.

Every construction is deterministic and independent, up to the
documented invariants, of the choice of cover; the test suite exercises
that independence by swapping minimal covers for padded ones.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebras import Algebra
from .linalg import (
    FieldMatrix, QuotientSpace, hstack, image_basis, kernel_basis,
    quotient_space, rank, rref, solve,
)


class ModuleError(ValueError):
    pass


def _kron(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    field = a.field
    return FieldMatrix(field, np.kron(a.data, b.data) % field.p, _raw=True)


class FdModule:
    """Finite-dimensional left module: one action matrix per basis element."""

    def __init__(self, algebra: Algebra, dim: int,
                 action: list[FieldMatrix], name: str = "",
                 free_rank: int | None = None):
        self.algebra = algebra
        self.dim = dim
        self.action = tuple(action)
        self.name = name
        self.free_rank = free_rank  # set only for free modules
        self._validate()

    def act(self, vec) -> FieldMatrix:
        """Action matrix of an algebra element given by coefficients."""
        out = FieldMatrix.zeros(self.algebra.field, self.dim, self.dim)
        for i, c in enumerate(np.asarray(vec).reshape(-1)):
            if int(c) % self.algebra.field.p:
                out = out + self.action[i].scale(int(c))
        return out

    def _validate(self):
        alg = self.algebra
        if len(self.action) != alg.dim:
            raise ModuleError("need one action matrix per basis element")
        for m in self.action:
            if m.shape != (self.dim, self.dim):
                raise ModuleError("action matrix has wrong shape")
        if self.act(alg.unit) != FieldMatrix.identity(alg.field, self.dim):
            raise ModuleError("unit does not act as the identity")
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = self.action[i] @ self.action[j]
                rhs = self.act(alg.mul[i, j, :])
                if lhs != rhs:
                    raise ModuleError(
                        f"module law fails at pair ({i},{j}): "
                        f"rho({alg.basis[i]})rho({alg.basis[j]}) != "
                        f"rho({alg.basis[i]}*{alg.basis[j]})")

    def __repr__(self):
        label = self.name or "module"
        return f"FdModule({label}, dim={self.dim}, over {self.algebra.name})"


class ModMorphism:
    """Lambda-linear map, stored as a (target.dim x source.dim) matrix."""

    def __init__(self, source: FdModule, target: FdModule, matrix: FieldMatrix):
        if source.algebra is not target.algebra:
            raise ModuleError("morphism endpoints live over different algebras")
        if matrix.shape != (target.dim, source.dim):
            raise ModuleError(
                f"matrix shape {matrix.shape} != ({target.dim},{source.dim})")
        for i in range(source.algebra.dim):
            if matrix @ source.action[i] != target.action[i] @ matrix:
                raise ModuleError(
                    f"matrix does not commute with the action of "
                    f"{source.algebra.basis[i]}")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def identity(cls, m: FdModule) -> "ModMorphism":
        return cls(m, m, FieldMatrix.identity(m.algebra.field, m.dim))

    @classmethod
    def zero(cls, source: FdModule, target: FdModule) -> "ModMorphism":
        return cls(source, target,
                   FieldMatrix.zeros(source.algebra.field, target.dim, source.dim))

    def compose(self, other: "ModMorphism") -> "ModMorphism":
        """self after other."""
        if other.target is not self.source:
            raise ModuleError("composition mismatch")
        return ModMorphism(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other: "ModMorphism") -> "ModMorphism":
        return ModMorphism(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "ModMorphism") -> "ModMorphism":
        return ModMorphism(self.source, self.target, self.matrix - other.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def rank(self) -> int:
        return rank(self.matrix)

    def is_mono(self) -> bool:
        return self.rank() == self.source.dim

    def is_epi(self) -> bool:
        return self.rank() == self.target.dim

    def __repr__(self):
        return (f"ModMorphism({self.source.name or '?'} -> "
                f"{self.target.name or '?'}, rank {self.rank()})")


@dataclass(frozen=True)
class SubquotientSpace:
    """A subspace of an ambient F_p^n modulo a sub-subspace.

    Realizes abelian groups like Ext^1 and the stable Homs: `sub` and
    `subsub` hold spanning columns, with subsub contained in sub.
    """

    ambient_dim: int
    sub: FieldMatrix
    subsub: FieldMatrix

    def __post_init__(self):
        if solve(self.sub, self.subsub) is None:
            raise ModuleError("sub-subspace not contained in subspace")

    @property
    def dim(self) -> int:
        return rank(self.sub) - rank(self.subsub)

    def coordinate_quotient(self) -> QuotientSpace:
        """Quotient in sub-basis coordinates (sub must have full column rank)."""
        coords = solve(self.sub, self.subsub)
        return quotient_space(coords)


# -- hom spaces ---------------------------------------------------------


@lru_cache(maxsize=None)
def hom_space(X: FdModule, Y: FdModule) -> tuple[ModMorphism, ...]:
    """Deterministic basis of Hom(X, Y)."""
    if X.algebra is not Y.algebra:
        raise ModuleError("hom_space needs modules over the same algebra")
    alg = X.algebra
    field = alg.field
    n_unknowns = X.dim * Y.dim
    if n_unknowns == 0:
        return ()
    eye_x = FieldMatrix.identity(field, X.dim)
    eye_y = FieldMatrix.identity(field, Y.dim)
    blocks = []
    for i in range(alg.dim):
        # T @ rho_X(b) - rho_Y(b) @ T = 0, vectorized row-major
        blocks.append(
            (_kron(eye_y, X.action[i].transpose()) - _kron(Y.action[i], eye_x)).data)
    system = FieldMatrix(field, np.vstack(blocks), _raw=True)
    basis = kernel_basis(system)
    out = []
    for t in range(basis.cols):
        mat = basis.column(t).unvec(Y.dim, X.dim)
        out.append(ModMorphism(X, Y, mat))
    return tuple(out)


@lru_cache(maxsize=None)
def hom_matrix(X: FdModule, Y: FdModule) -> FieldMatrix:
    """Columns are the vectorized hom basis elements ((X.dim*Y.dim) x s)."""
    basis = hom_space(X, Y)
    field = X.algebra.field
    if not basis:
        return FieldMatrix.zeros(field, X.dim * Y.dim, 0)
    return hstack([h.matrix.vec() for h in basis])


def hom_coords(basis_matrix: FieldMatrix, f: ModMorphism) -> FieldMatrix:
    """Coefficients of a morphism in a hom basis (unique)."""
    c = solve(basis_matrix, f.matrix.vec())
    if c is None:
        raise ModuleError("morphism not in the hom space span")
    return c


# -- kernels, cokernels, images ----------------------------------------


def submodule_from(M: FdModule, span: FieldMatrix, name: str = "") \
        -> tuple[FdModule, ModMorphism]:
    """Submodule spanned by columns of `span` (must be action-stable)."""
    basis = image_basis(span)
    actions = []
    for a in M.action:
        coords = solve(basis, a @ basis)
        if coords is None:
            raise ModuleError("span is not action-stable")
        actions.append(coords)
    sub = FdModule(M.algebra, basis.cols, actions, name=name)
    return sub, ModMorphism(sub, M, basis)


def kernel(f: ModMorphism, name: str = "") -> tuple[FdModule, ModMorphism]:
    k = kernel_basis(f.matrix)
    actions = [solve(k, a @ k) for a in f.source.action]
    ker = FdModule(f.source.algebra, k.cols, actions, name=name)
    return ker, ModMorphism(ker, f.source, k)


def cokernel(f: ModMorphism, name: str = "") -> tuple[FdModule, ModMorphism]:
    q = quotient_space(f.matrix)
    actions = [q.proj @ a @ q.lift for a in f.target.action]
    cok = FdModule(f.target.algebra, q.dim, actions, name=name)
    return cok, ModMorphism(f.target, cok, q.proj)


def cokernel_data(f: ModMorphism, name: str = "") \
        -> tuple[FdModule, ModMorphism, FieldMatrix]:
    """Like cokernel, but also returns the representative-choosing lift."""
    q = quotient_space(f.matrix)
    actions = [q.proj @ a @ q.lift for a in f.target.action]
    cok = FdModule(f.target.algebra, q.dim, actions, name=name)
    return cok, ModMorphism(f.target, cok, q.proj), q.lift


def image_factorization(f: ModMorphism) \
        -> tuple[FdModule, ModMorphism, ModMorphism]:
    """(V, e, m) with f = m o e, e epi onto the image, m mono."""
    basis = image_basis(f.matrix)
    actions = [solve(basis, a @ basis) for a in f.target.action]
    V = FdModule(f.target.algebra, basis.cols, actions)
    m = ModMorphism(V, f.target, basis)
    e = ModMorphism(f.source, V, solve(basis, f.matrix))
    return V, e, m


@dataclass(frozen=True)
class DirectSum:
    module: FdModule
    incl1: ModMorphism
    incl2: ModMorphism
    proj1: ModMorphism
    proj2: ModMorphism


def direct_sum_module(M: FdModule, N: FdModule) -> DirectSum:
    from .linalg import direct_sum as mat_dsum
    field = M.algebra.field
    actions = [mat_dsum(a, b) for a, b in zip(M.action, N.action)]
    P = FdModule(M.algebra, M.dim + N.dim, actions,
                 name=f"{M.name}+{N.name}" if M.name and N.name else "")
    z = FieldMatrix.zeros
    i1 = ModMorphism(M, P, vstack([FieldMatrix.identity(field, M.dim),
                                   z(field, N.dim, M.dim)]))
    i2 = ModMorphism(N, P, vstack([z(field, M.dim, N.dim),
                                   FieldMatrix.identity(field, N.dim)]))
    p1 = ModMorphism(P, M, hstack([FieldMatrix.identity(field, M.dim),
                                   z(field, M.dim, N.dim)])
                     if M.dim or N.dim else z(field, 0, 0))
    p2 = ModMorphism(P, N, hstack([z(field, N.dim, M.dim),
                                   FieldMatrix.identity(field, N.dim)])
                     if M.dim or N.dim else z(field, 0, 0))
    return DirectSum(P, i1, i2, p1, p2)


# -- free modules and covers --------------------------------------------


def zero_module(alg: Algebra) -> FdModule:
    return FdModule(alg, 0, [FieldMatrix.zeros(alg.field, 0, 0)] * alg.dim,
                    name="0")


@lru_cache(maxsize=None)
def free_module(alg: Algebra, r: int) -> FdModule:
    eye = FieldMatrix.identity(alg.field, r)
    actions = [_kron(eye, alg.lmult(alg.basis_vector(i)))
               for i in range(alg.dim)]
    return FdModule(alg, r * alg.dim, actions,
                    name="L" if r == 1 else f"L^{r}", free_rank=r)


def regular_module(alg: Algebra) -> FdModule:
    return free_module(alg, 1)


def radical_span(M: FdModule) -> FieldMatrix:
    """Columns spanning rad(Lambda) * M; zero-width if no radical data."""
    alg = M.algebra
    if not alg.radical_basis or M.dim == 0:
        return FieldMatrix.zeros(alg.field, M.dim, 0)
    return hstack([M.act(v) for v in alg.radical_basis])


def free_cover(M: FdModule, minimal: bool | None = None) -> ModMorphism:
    """Epi from a free module onto M.

    Non-minimal form: one generator per basis vector of M.  When the
    algebra has radical data (or minimal=True), generators instead lift
    a basis of M/rad.M; the cover is then a projective cover.
    """
    if minimal is None:
        minimal = M.algebra.radical_basis is not None
    return _free_cover(M, minimal)


@lru_cache(maxsize=None)
def _free_cover(M: FdModule, minimal: bool) -> ModMorphism:
    alg = M.algebra
    if minimal:
        gens = quotient_space(radical_span(M)).lift
    else:
        gens = FieldMatrix.identity(alg.field, M.dim)
    r = gens.cols
    src = free_module(alg, r)
    cols = []
    for i in range(r):
        g = gens.column(i)
        for j in range(alg.dim):
            cols.append(M.action[j] @ g)
    mat = (hstack(cols) if cols
           else FieldMatrix.zeros(alg.field, M.dim, 0))
    cover = ModMorphism(src, M, mat)
    if not cover.is_epi():
        raise ModuleError("free cover failed to be surjective")
    return cover


def syzygy(M: FdModule, minimal: bool | None = None) \
        -> tuple[FdModule, ModMorphism]:
    """Kernel of the free cover, with its inclusion into the cover source."""
    if minimal is None:
        minimal = M.algebra.radical_basis is not None
    return _syzygy(M, minimal)


@lru_cache(maxsize=None)
def _syzygy(M: FdModule, minimal: bool) -> tuple[FdModule, ModMorphism]:
    ker, incl = kernel(free_cover(M, minimal),
                       name=f"Om({M.name})" if M.name else "")
    return ker, incl


def free_presentation(M: FdModule, minimal: bool | None = None) \
        -> tuple[ModMorphism, ModMorphism]:
    """(t: P1 -> P0, cover: P0 -> M) with coker(t) = M via the cover."""
    if minimal is None:
        minimal = M.algebra.radical_basis is not None
    return _free_presentation(M, minimal)


@lru_cache(maxsize=None)
def _free_presentation(M: FdModule, minimal: bool) \
        -> tuple[ModMorphism, ModMorphism]:
    cover = free_cover(M, minimal)
    _, incl = syzygy(M, minimal)
    c1 = free_cover(incl.source, minimal)
    return incl.compose(c1), cover


# -- duality and injectives ----------------------------------------------


def k_dual_module(M: FdModule, name: str = "") -> FdModule:
    """D_k(M): same dimension, transposed actions, over the opposite algebra."""
    return FdModule(M.algebra.opposite, M.dim,
                    [a.transpose() for a in M.action],
                    name=name or (f"D({M.name})" if M.name else ""))


def k_dual_map(f: ModMorphism) -> ModMorphism:
    """Contravariant: D_k(f): D_k(target) -> D_k(source)."""
    return ModMorphism(k_dual_module(f.target), k_dual_module(f.source),
                       f.matrix.transpose())


def injective_embed(M: FdModule, minimal: bool | None = None) -> ModMorphism:
    """Mono M -> E with E injective (the k-dual of a free cover of D_k M)."""
    if minimal is None:
        minimal = M.algebra.radical_basis is not None
    return _injective_embed(M, minimal)


@lru_cache(maxsize=None)
def _injective_embed(M: FdModule, minimal: bool) -> ModMorphism:
    cover = free_cover(k_dual_module(M), minimal)
    emb_raw = k_dual_map(cover)
    # D_k D_k M is canonically M itself (double transpose), so recast
    E = emb_raw.target
    emb = ModMorphism(M, E, emb_raw.matrix)
    if not emb.is_mono():
        raise ModuleError("injective embedding failed to be injective")
    return emb


def injective_copresentation(M: FdModule, minimal: bool | None = None) \
        -> tuple[ModMorphism, ModMorphism]:
    """(u: E0 -> E1, embed: M -> E0) exact at E0: im(embed) = ker(u)."""
    if minimal is None:
        minimal = M.algebra.radical_basis is not None
    return _injective_copresentation(M, minimal)


@lru_cache(maxsize=None)
def _injective_copresentation(M: FdModule, minimal: bool) \
        -> tuple[ModMorphism, ModMorphism]:
    embed = injective_embed(M, minimal)
    cok, proj = cokernel(embed)
    embed2 = injective_embed(cok, minimal)
    return embed2.compose(proj), embed


# -- Ext and Tor ---------------------------------------------------------


def ext1(M: FdModule, N: FdModule,
         minimal: bool | None = None) -> SubquotientSpace:
    """Ext^1(M, N) as Hom(Omega M, N) modulo restrictions from the cover."""
    if M.algebra is not N.algebra:
        raise ModuleError("ext1 needs modules over the same algebra")
    _, incl = syzygy(M, minimal)
    omega = incl.source
    cover_src = incl.target
    ambient = omega.dim * N.dim
    sub = hom_matrix(omega, N)
    restricted = [h.compose(incl).matrix.vec() for h in hom_space(cover_src, N)]
    subsub = (hstack(restricted) if restricted
              else FieldMatrix.zeros(N.algebra.field, ambient, 0))
    return SubquotientSpace(ambient, sub, subsub)


@dataclass(frozen=True)
class TensorSpace:
    """M tensor_Lambda N for a right module M (left over the opposite) and
    a left module N, as a quotient of the k-tensor square."""

    right: FdModule
    left: FdModule
    quotient: QuotientSpace

    @property
    def dim(self) -> int:
        return self.quotient.dim


def tensor(M: FdModule, N: FdModule) -> TensorSpace:
    if M.algebra is not N.algebra.opposite:
        raise ModuleError(
            "tensor needs a right module (over the opposite) and a left module")
    alg = N.algebra
    field = alg.field
    eye_m = FieldMatrix.identity(field, M.dim)
    eye_n = FieldMatrix.identity(field, N.dim)
    rels = []
    for i in range(alg.dim):
        rels.append((_kron(M.action[i], eye_n) - _kron(eye_m, N.action[i])).data)
    span = FieldMatrix(field, np.hstack(rels) if rels
                       else np.zeros((M.dim * N.dim, 0), dtype=field.dtype),
                       _raw=True)
    return TensorSpace(M, N, quotient_space(span))


def tensor_map_left(f: ModMorphism, N: FdModule,
                    src: TensorSpace | None = None,
                    tgt: TensorSpace | None = None) -> FieldMatrix:
    """Induced matrix (f tensor N): (source tensor N) -> (target tensor N)."""
    src = src or tensor(f.source, N)
    tgt = tgt or tensor(f.target, N)
    eye_n = FieldMatrix.identity(N.algebra.field, N.dim)
    return tgt.quotient.proj @ _kron(f.matrix, eye_n) @ src.quotient.lift


def tensor_map_right(M: FdModule, g: ModMorphism,
                     src: TensorSpace | None = None,
                     tgt: TensorSpace | None = None) -> FieldMatrix:
    """Induced matrix (M tensor g)."""
    src = src or tensor(M, g.source)
    tgt = tgt or tensor(M, g.target)
    eye_m = FieldMatrix.identity(M.algebra.field, M.dim)
    return tgt.quotient.proj @ _kron(eye_m, g.matrix) @ src.quotient.lift


def tor1(M: FdModule, N: FdModule, minimal: bool | None = None) -> int:
    """dim Tor_1(M, N) for a right module M, from a free presentation of M."""
    _, incl = syzygy(M, minimal)
    induced = tensor_map_left(incl, N)
    return tensor(incl.source, N).dim - rank(induced)


# -- transpose -----------------------------------------------------------


def _lambda_matrix(t: ModMorphism) -> list[list[np.ndarray]]:
    """Entries over Lambda of a map between free modules.

    Row i, column j: the coefficient vector a_ij with
    t(gen_i) = sum_j a_ij . gen_j.
    """
    alg = t.source.algebra
    m, n = t.source.free_rank, t.target.free_rank
    if m is None or n is None:
        raise ModuleError("need free modules with recorded ranks")
    d = alg.dim
    out = []
    for i in range(m):
        gen = np.zeros((m * d, 1), dtype=alg.field.dtype)
        gen[i * d:(i + 1) * d, 0] = alg.unit
        img = (t.matrix @ FieldMatrix(alg.field, gen, _raw=True)).data.reshape(-1)
        out.append([img[j * d:(j + 1) * d] for j in range(n)])
    return out


def _transposed_morphism(entries: list[list[np.ndarray]], alg: Algebra,
                         m: int, n: int) -> ModMorphism:
    """Left multiplication by an m x n Lambda-matrix, as a morphism of free
    modules over the opposite algebra: (op)^n -> (op)^m."""
    opp = alg.opposite
    src = free_module(opp, n)
    tgt = free_module(opp, m)
    d = alg.dim
    field = alg.field
    blocks = np.zeros((m * d, n * d), dtype=field.dtype)
    for i in range(m):
        for j in range(n):
            blocks[i * d:(i + 1) * d, j * d:(j + 1) * d] = \
                alg.lmult(entries[i][j]).data
    return ModMorphism(src, tgt, FieldMatrix(field, blocks, _raw=True))


@dataclass(frozen=True)
class TransposeData:
    module: FdModule
    u: ModMorphism            # (op)^n -> (op)^m, left-mult by the transpose
    proj: ModMorphism         # (op)^m -> Tr M
    pres: ModMorphism         # t: P1 -> P0 over the original algebra
    cover: ModMorphism        # P0 -> M


def transpose_data(M: FdModule, minimal: bool | None = None) -> TransposeData:
    if minimal is None:
        minimal = M.algebra.radical_basis is not None
    return _transpose_data(M, minimal)


@lru_cache(maxsize=None)
def _transpose_data(M: FdModule, minimal: bool) -> TransposeData:
    alg = M.algebra
    t, cover = free_presentation(M, minimal)
    m, n = t.source.free_rank, t.target.free_rank
    entries = _lambda_matrix(t)
    u = _transposed_morphism(entries, alg, m, n)
    tr, proj = cokernel(u, name=f"Tr({M.name})" if M.name else "")
    return TransposeData(tr, u, proj, t, cover)


def transpose(M: FdModule, minimal: bool | None = None) -> FdModule:
    """Auslander-Bridger transpose: cokernel of the Lambda-transposed
    presentation matrix, a module over the opposite algebra.  Defined up
    to projective equivalence; all consumers are stable invariants."""
    return transpose_data(M, minimal).module


def _lift_through_cover(f: ModMorphism, cover: ModMorphism) -> ModMorphism:
    """Some g with cover o g = f, g a module morphism (source projective)."""
    basis = hom_space(f.source, cover.source)
    field = f.source.algebra.field
    cols = ([cover.compose(h).matrix.vec() for h in basis])
    mat = (hstack(cols) if cols
           else FieldMatrix.zeros(field, f.matrix.rows * f.matrix.cols, 0))
    coeffs = solve(mat, f.matrix.vec())
    if coeffs is None:
        raise ModuleError("lift through cover does not exist")
    out = FieldMatrix.zeros(field, cover.source.dim, f.source.dim)
    for t, h in enumerate(basis):
        c = int(coeffs.data[t, 0])
        if c:
            out = out + h.matrix.scale(c)
    return ModMorphism(f.source, cover.source, out)


def transpose_map(a: ModMorphism) -> ModMorphism:
    """Tr(a): Tr(target) -> Tr(source), well defined up to stable maps."""
    src_data = transpose_data(a.source)
    tgt_data = transpose_data(a.target)
    alg = a.source.algebra
    # lift a through the covers to a chain map (b0, b1)
    b0 = _lift_through_cover(a.compose(src_data.cover), tgt_data.cover)
    b1 = _lift_through_cover(b0.compose(src_data.pres), tgt_data.pres)
    m, n = src_data.pres.source.free_rank, src_data.pres.target.free_rank
    mp, np_ = tgt_data.pres.source.free_rank, tgt_data.pres.target.free_rank
    c1 = _transposed_morphism(_lambda_matrix(b1), alg, m, mp)
    # induced map on cokernels of the transposed presentations
    mat = src_data.proj.matrix @ c1.matrix @ _coker_lift(tgt_data)
    return ModMorphism(tgt_data.module, src_data.module, mat)


def _coker_lift(data: TransposeData) -> FieldMatrix:
    q = quotient_space(data.u.matrix)
    return q.lift


# -- stable homs ----------------------------------------------------------


def stable_hom_proj(X: FdModule, Y: FdModule,
                    minimal: bool | None = None) -> SubquotientSpace:
    """underline-Hom(X, Y): Hom modulo maps factoring through projectives."""
    cover = free_cover(Y, minimal)
    ambient = X.dim * Y.dim
    sub = hom_matrix(X, Y)
    through = [cover.compose(h).matrix.vec()
               for h in hom_space(X, cover.source)]
    subsub = (hstack(through) if through
              else FieldMatrix.zeros(X.algebra.field, ambient, 0))
    return SubquotientSpace(ambient, sub, subsub)


def stable_hom_inj(X: FdModule, Y: FdModule,
                   minimal: bool | None = None) -> SubquotientSpace:
    """overline-Hom(X, Y): Hom modulo maps factoring through injectives."""
    emb = injective_embed(X, minimal)
    ambient = X.dim * Y.dim
    sub = hom_matrix(X, Y)
    through = [h.compose(emb).matrix.vec() for h in hom_space(emb.target, Y)]
    subsub = (hstack(through) if through
              else FieldMatrix.zeros(X.algebra.field, ambient, 0))
    return SubquotientSpace(ambient, sub, subsub)


@dataclass(frozen=True)
class StableIsoResult:
    status: str               # "iso" | "not_iso" | "inconclusive"
    detail: str
    witness: ModMorphism | None = None


def _stably_identity_solvable(u: ModMorphism, side: str) -> bool:
    """Is there v with v o u = id (side='left') or u o v = id (side='right'),
    modulo maps factoring through projectives?"""
    X = u.source if side == "left" else u.target
    field = X.algebra.field
    v_basis = hom_space(u.target, u.source)
    # columns: compositions with u, then the projective ideal of End(X)
    cols = []
    for v in v_basis:
        comp = v.compose(u) if side == "left" else u.compose(v)
        cols.append(comp.matrix.vec())
    ideal = stable_hom_proj(X, X).subsub
    mat_cols = cols + [ideal.column(t) for t in range(ideal.cols)]
    target = FieldMatrix.identity(field, X.dim).vec()
    if not mat_cols:
        return target.is_zero()
    return solve(hstack(mat_cols), target) is not None


def stable_iso(X: FdModule, Y: FdModule, budget: int = 64,
               seed: int = 0) -> StableIsoResult:
    """Search for a stable isomorphism X ~= Y in the projectively stable
    category.

    A found two-sided stable inverse proves the isomorphism; dimension
    obstructions prove a negative; anything else is reported as
    "not found (budget)" rather than a proven negative.
    """
    for probe in (X, Y):
        dx = stable_hom_proj(X, probe).dim
        dy = stable_hom_proj(Y, probe).dim
        if dx != dy:
            return StableIsoResult(
                "not_iso", f"dim underline-Hom(-,{probe.name or '?'}) "
                           f"differs: {dx} vs {dy}")
        dx = stable_hom_proj(probe, X).dim
        dy = stable_hom_proj(probe, Y).dim
        if dx != dy:
            return StableIsoResult(
                "not_iso", f"dim underline-Hom({probe.name or '?'},-) "
                           f"differs: {dx} vs {dy}")
    basis = list(hom_space(X, Y))
    p = X.algebra.field.p
    rng = random.Random(seed)
    candidates = list(basis)
    for _ in range(max(0, budget - len(basis))):
        if not basis:
            break
        coeffs = [rng.randrange(p) for _ in basis]
        u = ModMorphism.zero(X, Y)
        for c, h in zip(coeffs, basis):
            if c:
                u = u + ModMorphism(X, Y, h.matrix.scale(c))
        candidates.append(u)
    if not candidates:
        # Hom(X, Y) = 0: stably isomorphic only if both are stably zero
        if stable_hom_proj(X, X).dim == 0 and stable_hom_proj(Y, Y).dim == 0:
            return StableIsoResult("iso", "both stably zero",
                                   ModMorphism.zero(X, Y))
        return StableIsoResult("not_iso", "Hom(X,Y) = 0 but not stably zero")
    for u in candidates[:budget]:
        if (_stably_identity_solvable(u, "left")
                and _stably_identity_solvable(u, "right")):
            return StableIsoResult("iso", "two-sided stable inverse found", u)
    return StableIsoResult("inconclusive",
                           f"not found (budget {budget}, seed {seed})")


# -- canonical modules for batteries --------------------------------------


def principal_projectives(alg: Algebra) -> list[FdModule]:
    """Submodules Lambda.e of the regular module, one per stored idempotent."""
    if not alg.idempotents:
        return []
    reg = regular_module(alg)
    out = []
    for t, e in enumerate(alg.idempotents):
        span = alg.rmult(e)  # columns span Lambda.e
        sub, _ = submodule_from(reg, span, name=f"P{t + 1}")
        out.append(sub)
    return out


def simple_modules(alg: Algebra) -> list[FdModule]:
    """Tops P/rad.P of the principal projectives (builders only)."""
    projs = principal_projectives(alg)
    singleton = len(projs) == 1
    out = []
    for t, P in enumerate(projs):
        sub, incl = submodule_from(P, radical_span(P))
        top, _ = cokernel(incl, name="S" if singleton else f"S{t + 1}")
        out.append(top)
    return out


# -- module file format ----------------------------------------------------


def module_from_dict(doc: dict, algebras: dict[str, Algebra],
                     name: str = "") -> FdModule:
    try:
        alg_name = doc["algebra"]
        dim = int(doc["dim"])
        action_spec = doc["action"]
    except KeyError as exc:
        raise ModuleError(f"module file missing field {exc}") from exc
    if alg_name not in algebras:
        raise ModuleError(f"unknown algebra reference {alg_name!r}")
    alg = algebras[alg_name]
    if len(action_spec) != alg.dim:
        raise ModuleError("need one action matrix per algebra basis element")
    action = [FieldMatrix.from_rows(alg.field,
                                    [[int(x) for x in row] for row in mat],
                                    cols=dim)
              for mat in action_spec]
    return FdModule(alg, dim, action, name=name or str(doc.get("name", "")))


def module_to_dict(M: FdModule) -> dict:
    return {
        "algebra": M.algebra.name,
        "name": M.name,
        "dim": M.dim,
        "action": [a.tolist() for a in M.action],
    }


def load_module(path: str, algebras: dict[str, Algebra]) -> FdModule:
    with open(path) as fh:
        return module_from_dict(json.load(fh), algebras)
