"""Finite-dimensional modules over a preprojective algebra as quiver representations.

A module has a vector space per vertex and, for each arrow a: i -> j, a matrix
``maps[a]`` of shape (dim M_j, dim M_i) acting on column vectors.  Subspaces of
a vertex space are stored as echelon row bases in the module's coordinates.

Homomorphisms are computed from a projective presentation of the source: a
map X -> N is the same as a choice of images of the generators of X that kill
every relation.  This keeps the linear systems small even when X is large.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from flint import fmpq, fmpq_mat

from . import linalg as la
from .algebra import Arrow, PiAlgebra, Quiver, pi_algebra

__all__ = [
    "ModuleRep",
    "Hom",
    "Presentation",
    "UndecidedIsomorphism",
    "subquotient",
    "direct_sum",
    "regular_module",
    "projective",
    "simple",
    "hom",
    "hom_dim",
    "end_dim",
    "is_brick",
    "is_stone",
    "ext1_dim",
    "extensions",
    "syzygy",
    "nakayama",
    "tau",
    "tau_minus",
    "is_tau_rigid",
    "is_tau_minus_rigid",
    "dual",
    "is_isomorphic",
    "in_fac",
    "in_sub",
    "top_over_end",
    "soc_over_end",
    "is_indecomposable",
    "generated_submodule",
    "ideal_twist",
    "euler_form",
    "radical_layers",
    "loewy_label",
    "set_iso_seed",
]


class UndecidedIsomorphism(RuntimeError):
    """Every cheap invariant agrees but no isomorphism was found."""


class ModuleRep:
    def __init__(self, quiver: Quiver, dims: Mapping[int, int] | Sequence[int],
                 maps: Mapping[Arrow, fmpq_mat] | None = None, check: bool = True):
        self.quiver = quiver
        if isinstance(dims, Mapping):
            self.dims = tuple(int(dims.get(v, 0)) for v in quiver.vertices)
        else:
            self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != len(quiver.vertices):
            raise ValueError("dimension vector has the wrong length")
        self.maps: dict[Arrow, fmpq_mat] = {}
        maps = maps or {}
        for a in maps:
            if a not in quiver.arrow_set:
                raise ValueError(f"{a} is not an arrow of the quiver")
        for a in quiver.arrows:
            m = maps.get(a)
            r, c = self.dim_at(a.target), self.dim_at(a.source)
            if m is None:
                m = fmpq_mat(r, c)
            elif not isinstance(m, fmpq_mat):
                m = la.from_rows([[la.from_fraction(x) for x in row] for row in m], c)
            if (m.nrows(), m.ncols()) != (r, c):
                raise ValueError(f"matrix for {a} has shape {(m.nrows(), m.ncols())}, expected {(r, c)}")
            self.maps[a] = m
        if check and not self.satisfies_relations():
            raise ValueError("representation does not satisfy the preprojective relations")

    # basic data

    def dim_at(self, v: int) -> int:
        return self.dims[self.quiver.vpos[v]]

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.quiver.vertices

    def dimension_vector(self) -> dict[int, int]:
        return dict(zip(self.quiver.vertices, self.dims))

    def __repr__(self) -> str:
        dv = ",".join(str(d) for d in self.dims)
        return f"ModuleRep({self.quiver.ctype}, dims=({dv}))"

    @cached_property
    def rmaps(self) -> dict[Arrow, fmpq_mat]:
        """Row-vector form: v -> v * rmaps[a]."""
        return {a: m.transpose() for a, m in self.maps.items()}

    def satisfies_relations(self) -> bool:
        q = self.quiver
        for k in q.vertices:
            d = self.dim_at(k)
            total = fmpq_mat(d, d)
            for sign, first, second in q.relation(k):
                total += (self.maps[second] * self.maps[first]) * sign
            if not la.is_zero(total):
                return False
        return True

    @property
    def algebra(self) -> PiAlgebra:
        return pi_algebra(self.quiver.ctype)

    @cached_property
    def action(self) -> dict[int, fmpq_mat]:
        """Matrix of every basis element of Pi acting on the module."""
        alg = self.algebra
        out: dict[int, fmpq_mat] = {}
        order = sorted(range(alg.dim), key=lambda g: alg.basis[g].degree)
        for g in order:
            el = alg.basis[g]
            if not el.path:
                out[g] = la.identity(self.dim_at(el.source))
            else:
                prefix = alg.index_of_path[(el.source, el.path[:-1])]
                out[g] = self.maps[el.path[-1]] * out[prefix]
        return out

    def radical(self) -> dict[int, fmpq_mat]:
        return {v: la.rowspace(la.vstack([self.rmaps[a] for a in self.quiver.in_arrows[v]],
                                         self.dim_at(v)))
                for v in self.vertices}

    def socle(self) -> dict[int, fmpq_mat]:
        out = {}
        for v in self.vertices:
            outs = [self.maps[a] for a in self.quiver.out_arrows[v]]
            eq = la.vstack(outs, self.dim_at(v))
            out[v] = la.rowspace(la.nullspace(eq)) if eq.nrows() else la.identity(self.dim_at(v))
        return out

    def top_dims(self) -> dict[int, int]:
        rad = self.radical()
        return {v: self.dim_at(v) - rad[v].nrows() for v in self.vertices}

    def socle_dims(self) -> dict[int, int]:
        return {v: m.nrows() for v, m in self.socle().items()}

    @cached_property
    def presentation(self) -> "Presentation":
        return Presentation(self)

    def is_zero(self) -> bool:
        return self.dim == 0

    def to_json(self) -> dict:
        return {
            "type": self.quiver.ctype.family,
            "rank": self.quiver.ctype.rank,
            "dims": {str(v): d for v, d in zip(self.vertices, self.dims)},
            "maps": {a.name: [[_q_to_str(x) for x in row] for row in la.rows_of(m)]
                     for a, m in self.maps.items() if m.nrows() and m.ncols()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "ModuleRep":
        from .weyl import CartanType

        q = Quiver(CartanType(data["type"], int(data["rank"])))
        dims = {int(v): int(d) for v, d in data["dims"].items()}
        maps = {}
        for name, rows in data.get("maps", {}).items():
            s, t = name.split("->")
            a = q.arrow(int(s), int(t))
            maps[a] = la.from_rows([[la.from_fraction(Fraction(x)) for x in row] for row in rows],
                                   dims.get(a.source, 0))
        return cls(q, dims, maps)


def _q_to_str(x: fmpq) -> str:
    return str(int(x.p)) if x.q == 1 else f"{int(x.p)}/{int(x.q)}"


# constructions


def subquotient(ambient: ModuleRep, upper: Mapping[int, fmpq_mat],
                lower: Mapping[int, fmpq_mat] | None = None,
                return_basis: bool = False):
    """upper / lower for submodules lower <= upper of ``ambient`` (echelon rows per vertex)."""
    comps: dict[int, fmpq_mat] = {}
    coords: dict[int, la.Coordinates] = {}
    for v in ambient.vertices:
        n = ambient.dim_at(v)
        V = la.rowspace(upper.get(v, fmpq_mat(0, n)))
        U = la.rowspace(lower.get(v, fmpq_mat(0, n))) if lower is not None else fmpq_mat(0, n)
        C = la.complement_rows(V, U)
        comps[v] = C
        coords[v] = la.Coordinates(la.vstack([C, U], n))
    maps = {}
    for a in ambient.quiver.arrows:
        C = comps[a.source]
        k_t = comps[a.target].nrows()
        if C.nrows() == 0 or k_t == 0:
            continue
        img = C * ambient.rmaps[a]
        c = coords[a.target](img)
        maps[a] = la.select_columns(c, list(range(k_t))).transpose()
    out = ModuleRep(ambient.quiver, {v: comps[v].nrows() for v in ambient.vertices}, maps, check=False)
    if return_basis:
        return out, comps
    return out


def direct_sum(mods: Sequence[ModuleRep]) -> ModuleRep:
    q = mods[0].quiver
    dims = {v: sum(m.dim_at(v) for m in mods) for v in q.vertices}
    maps = {}
    for a in q.arrows:
        big = fmpq_mat(dims[a.target], dims[a.source])
        r0 = c0 = 0
        for m in mods:
            blk = m.maps[a]
            for i in range(blk.nrows()):
                for j in range(blk.ncols()):
                    x = blk[i, j]
                    if x:
                        big[r0 + i, c0 + j] = x
            r0 += m.dim_at(a.target)
            c0 += m.dim_at(a.source)
        maps[a] = big
    return ModuleRep(q, dims, maps, check=False)


_REGULAR: dict = {}


def regular_module(alg: PiAlgebra) -> ModuleRep:
    """Pi as a left module; the vertex-v space is e_v Pi in the algebra's basis order."""
    m = _REGULAR.get(alg.ctype)
    if m is None or m.algebra is not alg:
        dims = {v: len(alg.block[v]) for v in alg.quiver.vertices}
        maps = {a: blk.transpose() for a, blk in alg.left_blocks.items()}
        m = ModuleRep(alg.quiver, dims, maps, check=False)
        _REGULAR[alg.ctype] = m
    return m


def _unit_rows(n: int, cols: Sequence[int]) -> fmpq_mat:
    m = fmpq_mat(len(cols), n)
    for r, c in enumerate(cols):
        m[r, c] = 1
    return m


def projective(alg: PiAlgebra, v: int) -> ModuleRep:
    """P_v = Pi e_v, with basis the Pi-basis paths starting at v."""
    reg = regular_module(alg)
    upper = {u: _unit_rows(len(alg.block[u]), alg.source_mask(u, v)) for u in alg.quiver.vertices}
    return subquotient(reg, upper)


def simple(quiver: Quiver, v: int) -> ModuleRep:
    return ModuleRep(quiver, {v: 1})


def generated_submodule(M: ModuleRep, gens: Mapping[int, fmpq_mat]) -> dict[int, fmpq_mat]:
    """Smallest submodule containing the given rows (per vertex)."""
    cur = {v: la.rowspace(gens.get(v, fmpq_mat(0, M.dim_at(v)))) for v in M.vertices}
    frontier = dict(cur)
    while True:
        new = {v: [cur[v]] for v in M.vertices}
        for a in M.quiver.arrows:
            f = frontier[a.source]
            if f.nrows() and M.dim_at(a.target):
                new[a.target].append(f * M.rmaps[a])
        changed = False
        nxt = {}
        for v in M.vertices:
            sp = la.rowspace(la.vstack(new[v], M.dim_at(v)))
            if sp.nrows() != cur[v].nrows():
                changed = True
                nxt[v] = sp
            else:
                nxt[v] = fmpq_mat(0, M.dim_at(v))
            cur[v] = sp
        if not changed:
            return cur
        frontier = {v: (cur[v] if nxt[v].nrows() else nxt[v]) for v in M.vertices}


# presentations and homomorphisms


class Presentation:
    """Projective cover P0 -> M and the kernel (syzygy) inside P0.

    Generators are unit vectors of M at the columns complementary to the
    radical.  P0 coordinates at vertex t are pairs (k, g): generator k and a
    Pi-basis element g from the generator's vertex to t.
    """

    def __init__(self, M: ModuleRep):
        self.module = M
        alg = M.algebra
        self.algebra = alg
        rad = M.radical()
        self.gens: list[tuple[int, int]] = []
        for v in M.vertices:
            piv = set(la.pivots(rad[v]))
            for c in range(M.dim_at(v)):
                if c not in piv:
                    self.gens.append((v, c))
        self.coords: dict[int, list[tuple[int, int]]] = {}
        self.phi: dict[int, fmpq_mat] = {}
        self.kernel: dict[int, fmpq_mat] = {}
        self.section_cols: dict[int, list[int]] = {}
        self.section_inv: dict[int, fmpq_mat] = {}
        act = M.action
        for t in M.vertices:
            cols = [(k, g) for k, (v, _) in enumerate(self.gens)
                    for g in alg.block[t] if alg.basis[g].source == v]
            self.coords[t] = cols
            d = M.dim_at(t)
            phi = fmpq_mat(d, len(cols))
            for j, (k, g) in enumerate(cols):
                c = self.gens[k][1]
                a = act[g]
                for i in range(d):
                    x = a[i, c]
                    if x:
                        phi[i, j] = x
            self.phi[t] = phi
            if d:
                ech = la.rowspace(phi)
                piv = la.pivots(ech)
                if len(piv) != d:
                    raise ArithmeticError("generators do not span the module")
                self.section_cols[t] = piv
                self.section_inv[t] = la.select_columns(phi, piv).inv()
                self.kernel[t] = la.rowspace(la.nullspace(phi))
            else:
                self.section_cols[t] = []
                self.section_inv[t] = fmpq_mat(0, 0)
                self.kernel[t] = la.identity(len(cols))

    @cached_property
    def cover(self) -> ModuleRep:
        """P0 as a module, coordinates matching ``coords``."""
        return direct_sum([projective(self.algebra, v) for v, _ in self.gens]) if self.gens \
            else ModuleRep(self.module.quiver, {})

    @cached_property
    def syzygy(self) -> ModuleRep:
        return subquotient(self.cover, self.kernel)

    def cover_dims(self) -> dict[int, int]:
        return {t: len(c) for t, c in self.coords.items()}

    @cached_property
    def relations(self) -> dict[int, fmpq_mat]:
        """Generators of the syzygy: complement of its radical."""
        omega = self.syzygy
        rad = omega.radical()
        out = {}
        for t in self.module.vertices:
            K = self.kernel[t]
            piv = set(la.pivots(rad[t]))
            keep = [c for c in range(K.nrows()) if c not in piv]
            out[t] = la.select_rows(K, keep)
        return out


@dataclass
class Hom:
    """A homomorphism given by one matrix per vertex (target x source)."""

    source: ModuleRep
    target: ModuleRep
    blocks: dict[int, fmpq_mat]

    def is_injective(self) -> bool:
        return all(la.rank(self.blocks[v]) == self.source.dim_at(v) for v in self.source.vertices)

    def is_surjective(self) -> bool:
        return all(la.rank(self.blocks[v]) == self.target.dim_at(v) for v in self.source.vertices)

    def is_isomorphism(self) -> bool:
        if self.source.dims != self.target.dims:
            return False
        return all(self.blocks[v].det() != 0 for v in self.source.vertices if self.source.dim_at(v))

    def image(self) -> dict[int, fmpq_mat]:
        return {v: la.rowspace(self.blocks[v].transpose()) for v in self.source.vertices}

    def kernel(self) -> dict[int, fmpq_mat]:
        return {v: la.rowspace(la.nullspace(self.blocks[v])) if self.target.dim_at(v)
                else la.identity(self.source.dim_at(v)) for v in self.source.vertices}

    def is_zero(self) -> bool:
        return all(la.is_zero(b) for b in self.blocks.values())

    def __add__(self, other: "Hom") -> "Hom":
        return Hom(self.source, self.target, {v: self.blocks[v] + other.blocks[v] for v in self.blocks})

    def scale(self, c) -> "Hom":
        return Hom(self.source, self.target, {v: b * c for v, b in self.blocks.items()})

    def compose(self, other: "Hom") -> "Hom":
        """self after other."""
        return Hom(other.source, self.target, {v: self.blocks[v] * other.blocks[v] for v in self.blocks})

    def check(self) -> bool:
        for a in self.source.quiver.arrows:
            lhs = self.blocks[a.target] * self.source.maps[a]
            rhs = self.target.maps[a] * self.blocks[a.source]
            if lhs != rhs:
                return False
        return True


def _generator_solutions(X: ModuleRep, N: ModuleRep) -> tuple[fmpq_mat, list[int]]:
    """Nullspace of the relation system; unknowns are generator images in N."""
    pres = X.presentation
    offs = []
    total = 0
    for v, _ in pres.gens:
        offs.append(total)
        total += N.dim_at(v)
    act = N.action
    rels = pres.relations
    rows: list[list] = []
    for t in X.vertices:
        R = rels[t]
        nt = N.dim_at(t)
        if R.nrows() == 0 or nt == 0:
            continue
        cols = pres.coords[t]
        block = [[0] * total for _ in range(R.nrows() * nt)]
        for j, (k, g) in enumerate(cols):
            a = act[g]
            nv = a.ncols()
            if nv == 0:
                continue
            ent = a.entries()
            for r in range(R.nrows()):
                w = R[r, j]
                if not w:
                    continue
                base = r * nt
                off = offs[k]
                for p in range(nt):
                    row = block[base + p]
                    for qq in range(nv):
                        x = ent[p * nv + qq]
                        if x:
                            row[off + qq] += w * x
        rows.extend(block)
    if total == 0:
        return fmpq_mat(0, 0), offs
    if not rows:
        return la.identity(total), offs
    return la.nullspace(la.from_rows(rows, total)), offs


def _hom_from_solution(X: ModuleRep, N: ModuleRep, sol: Sequence, offs: list[int]) -> Hom:
    pres = X.presentation
    act = N.action
    blocks = {}
    for t in X.vertices:
        nt, mt = N.dim_at(t), X.dim_at(t)
        if mt == 0 or nt == 0:
            blocks[t] = fmpq_mat(nt, mt)
            continue
        cols = [pres.coords[t][j] for j in pres.section_cols[t]]
        psi = fmpq_mat(nt, len(cols))
        for j, (k, g) in enumerate(cols):
            v = pres.gens[k][0]
            nv = N.dim_at(v)
            x = fmpq_mat(nv, 1, [sol[offs[k] + i] for i in range(nv)])
            y = act[g] * x
            for i in range(nt):
                psi[i, j] = y[i, 0]
        blocks[t] = psi * pres.section_inv[t]
    return Hom(X, N, blocks)


def hom(X: ModuleRep, N: ModuleRep) -> list[Hom]:
    """A basis of Hom(X, N)."""
    if X.quiver != N.quiver:
        raise ValueError("modules over different algebras")
    sols, offs = _generator_solutions(X, N)
    return [_hom_from_solution(X, N, la.rows_of(sols)[r], offs) for r in range(sols.nrows())]


def hom_dim(X: ModuleRep, N: ModuleRep) -> int:
    return _generator_solutions(X, N)[0].nrows()


def end_dim(M: ModuleRep) -> int:
    return hom_dim(M, M)


def is_brick(M: ModuleRep) -> bool:
    return end_dim(M) == 1


def is_stone(M: ModuleRep) -> bool:
    """A brick without self-extensions."""
    return is_brick(M) and ext1_dim(M, M) == 0


def euler_form(M: ModuleRep, N: ModuleRep | None = None) -> int:
    N = M if N is None else N
    return M.quiver.euler_form(M.dims, N.dims)


# syzygies, Ext and extensions


def syzygy(M: ModuleRep) -> ModuleRep:
    return M.presentation.syzygy


def ext1_dim(X: ModuleRep, Y: ModuleRep) -> int:
    pres = X.presentation
    hp = sum(Y.dim_at(v) for v, _ in pres.gens)
    return hom_dim(pres.syzygy, Y) - hp + hom_dim(X, Y)


def _restriction_homs(X: ModuleRep, Y: ModuleRep) -> list[Hom]:
    """Restrictions to the syzygy of all maps P0 -> Y (spanning set)."""
    pres = X.presentation
    omega = pres.syzygy
    act = Y.action
    out = []
    for k, (v, _) in enumerate(pres.gens):
        for c in range(Y.dim_at(v)):
            blocks = {}
            for t in X.vertices:
                K = pres.kernel[t]
                cols = pres.coords[t]
                blk = fmpq_mat(Y.dim_at(t), K.nrows())
                for j, (kk, g) in enumerate(cols):
                    if kk != k:
                        continue
                    col = act[g]
                    for r in range(K.nrows()):
                        w = K[r, j]
                        if not w:
                            continue
                        for i in range(Y.dim_at(t)):
                            x = col[i, c]
                            if x:
                                blk[i, r] += w * x
                blocks[t] = blk
            out.append(Hom(omega, Y, blocks))
    return out


def _flatten(h: Hom) -> list:
    out = []
    for v in h.source.vertices:
        out.extend(h.blocks[v].entries())
    return out


def ext1_cocycles(X: ModuleRep, Y: ModuleRep) -> list[Hom]:
    """Maps syzygy(X) -> Y representing a basis of Ext^1(X, Y)."""
    pres = X.presentation
    omega = pres.syzygy
    hs = hom(omega, Y)
    if not hs:
        return []
    width = len(_flatten(hs[0]))
    restr = [_flatten(h) for h in _restriction_homs(X, Y)]
    span = la.rowspace(la.from_rows(restr, width)) if restr else fmpq_mat(0, width)
    out = []
    for h in hs:
        cand = la.vstack([span, la.from_rows([_flatten(h)], width)], width)
        r = la.rank(cand)
        if r > span.nrows():
            span = la.rowspace(cand)
            out.append(h)
    return out


def pushout_extension(X: ModuleRep, Y: ModuleRep, cocycle: Hom) -> ModuleRep:
    """Middle term E of 0 -> Y -> E -> X -> 0 for the given cocycle."""
    pres = X.presentation
    P0 = pres.cover
    S = direct_sum([Y, P0])
    lower = {}
    for t in X.vertices:
        K = pres.kernel[t]
        F = cocycle.blocks[t]
        yt = Y.dim_at(t)
        rows = []
        for r in range(K.nrows()):
            row = [F[i, r] for i in range(yt)] + [-x for x in la.rows_of(K)[r]]
            rows.append(row)
        lower[t] = la.rowspace(la.from_rows(rows, S.dim_at(t))) if rows else fmpq_mat(0, S.dim_at(t))
    upper = {t: la.identity(S.dim_at(t)) for t in X.vertices}
    return subquotient(S, upper, lower)


def extensions(X: ModuleRep, Y: ModuleRep) -> list[ModuleRep]:
    """Middle terms of 0 -> Y -> E -> X -> 0, one per basis cocycle of Ext^1(X, Y)."""
    return [pushout_extension(X, Y, c) for c in ext1_cocycles(X, Y)]


# Nakayama functor and Auslander-Reiten translate


def nakayama(M: ModuleRep) -> ModuleRep:
    """D Hom(M, Pi) with vertex-j space D Hom(M, P_j)."""
    alg = M.algebra
    q = M.quiver
    sols: dict[int, fmpq_mat] = {}
    offs: dict[int, list[int]] = {}
    coords: dict[int, la.Coordinates] = {}
    projs = {j: projective(alg, j) for j in q.vertices}
    for j in q.vertices:
        s, o = _generator_solutions(M, projs[j])
        sols[j], offs[j] = s, o
        coords[j] = la.Coordinates(s) if s.nrows() else None
    gens = M.presentation.gens
    # local coordinates of P_j at vertex v are the Pi-basis elements from j to v
    local = {j: {v: [g for g in alg.block[v] if alg.basis[g].source == j] for v in q.vertices}
             for j in q.vertices}
    maps = {}
    for a in q.arrows:
        i, j = a.source, a.target
        hj, hi = sols[j].nrows(), sols[i].nrows()
        if hj == 0 or hi == 0:
            continue
        width = sols[i].ncols()
        images = []
        for r in range(hj):
            row = la.rows_of(sols[j])[r]
            new = [0] * width
            for k, (v, _) in enumerate(gens):
                vec = {local[j][v][p]: row[offs[j][k] + p] for p in range(len(local[j][v]))
                       if row[offs[j][k] + p]}
                res = alg.right_mul(vec, a)
                pos = {g: p for p, g in enumerate(local[i][v])}
                for g, x in res.items():
                    new[offs[i][k] + pos[g]] += x
            images.append(new)
        R = coords[i](la.from_rows(images, width))
        maps[a] = R
    dims = {j: sols[j].nrows() for j in q.vertices}
    return ModuleRep(q, dims, maps)


def tau(M: ModuleRep) -> ModuleRep:
    """Auslander-Reiten translate, as syzygy^2 of the Nakayama image (Pi is self-injective)."""
    return syzygy(syzygy(nakayama(M)))


def dual(M: ModuleRep) -> ModuleRep:
    """k-dual twisted by the anti-automorphism fixing vertices and swapping a, a*."""
    maps = {a: M.maps[a.star].transpose() for a in M.quiver.arrows}
    return ModuleRep(M.quiver, M.dims, maps)


def tau_minus(M: ModuleRep) -> ModuleRep:
    return dual(tau(dual(M)))


def is_tau_rigid(M: ModuleRep) -> bool:
    return hom_dim(M, tau(M)) == 0


def is_tau_minus_rigid(M: ModuleRep) -> bool:
    return hom_dim(tau_minus(M), M) == 0


# isomorphism and generation


ISO_SEED = 0


def set_iso_seed(seed: int) -> None:
    """Seed used by is_isomorphic when none is passed."""
    global ISO_SEED
    ISO_SEED = int(seed)


def is_isomorphic(M: ModuleRep, N: ModuleRep, seed: int | None = None, tries: int = 64) -> bool:
    """Decide M = N up to isomorphism.

    Cheap filters first, then random combinations of a Hom basis, then a small
    exhaustive grid.  Raises UndecidedIsomorphism when nothing separates or
    identifies the modules.
    """
    if M.dims != N.dims:
        return False
    if M.dim == 0:
        return True
    if M.top_dims() != N.top_dims() or M.socle_dims() != N.socle_dims():
        return False
    hs = hom(M, N)
    if not hs:
        return False
    em = end_dim(M)
    if em != len(hs) or em != end_dim(N):
        return False
    for h in hs:
        if h.is_isomorphism():
            return True
    if len(hs) == 1:
        return False
    rng = random.Random(ISO_SEED if seed is None else seed)
    for _ in range(tries):
        c = [rng.randint(-7, 7) for _ in hs]
        if not any(c):
            continue
        if _combo(hs, c).is_isomorphism():
            return True
    if len(hs) <= 5:
        for c in itertools.product(range(-2, 3), repeat=len(hs)):
            if any(c) and _combo(hs, c).is_isomorphism():
                return True
    raise UndecidedIsomorphism(f"could not decide isomorphism for {M} and {N}")


def _combo(hs: Sequence[Hom], coeffs: Sequence[int]) -> Hom:
    out = None
    for h, c in zip(hs, coeffs):
        if not c:
            continue
        t = h.scale(c)
        out = t if out is None else out + t
    return out


def trace(N: ModuleRep, M: ModuleRep) -> dict[int, fmpq_mat]:
    """Sum of the images of all maps N -> M."""
    parts = {v: [] for v in M.vertices}
    for h in hom(N, M):
        for v, b in h.image().items():
            parts[v].append(b)
    return {v: la.rowspace(la.vstack(parts[v], M.dim_at(v))) for v in M.vertices}


def in_fac(M: ModuleRep, N: ModuleRep) -> bool:
    """True when M is a quotient of a direct sum of copies of N."""
    if M.dim == 0:
        return True
    tr = trace(N, M)
    return all(tr[v].nrows() == M.dim_at(v) for v in M.vertices)


def in_sub(M: ModuleRep, N: ModuleRep) -> bool:
    """True when M embeds in a direct sum of copies of N."""
    if M.dim == 0:
        return True
    parts = {v: [] for v in M.vertices}
    for h in hom(M, N):
        for v in M.vertices:
            parts[v].append(h.blocks[v])
    for v in M.vertices:
        d = M.dim_at(v)
        if d == 0:
            continue
        eq = la.vstack(parts[v], d)
        if la.rank(eq) != d:
            return False
    return True


def _rad_end(M: ModuleRep) -> list[Hom]:
    """Radical of End(M): kernel of the trace form of its action on M."""
    es = hom(M, M)
    r = len(es)
    gram = fmpq_mat(r, r)
    for i in range(r):
        for j in range(r):
            tr = 0
            for v in M.vertices:
                if M.dim_at(v):
                    p = es[i].blocks[v] * es[j].blocks[v]
                    tr += sum(p[k, k] for k in range(p.nrows()))
            gram[i, j] = tr
    ker = la.nullspace(gram)
    out = []
    for row in la.rows_of(ker):
        h = None
        for c, e in zip(row, es):
            if c:
                t = e.scale(c)
                h = t if h is None else h + t
        if h is not None:
            out.append(h)
    return out


def radical_layers(M: ModuleRep) -> list[dict[int, int]]:
    """Dimension vectors of M/rad M, rad M/rad^2 M, ..."""
    out = []
    cur = M
    while cur.dim:
        rad = cur.radical()
        out.append({v: cur.dim_at(v) - rad[v].nrows() for v in cur.vertices})
        cur = subquotient(cur, rad)
    return out


def loewy_label(M: ModuleRep) -> str:
    """Radical layers written top to bottom, e.g. '1/2' or '2/1 3'."""
    parts = []
    for layer in radical_layers(M):
        parts.append(" ".join(str(v) for v in M.vertices for _ in range(layer[v])))
    return "/".join(parts) if parts else "0"


def is_indecomposable(M: ModuleRep) -> bool:
    """End(M)/rad End(M) is one-dimensional."""
    if M.dim == 0:
        return False
    return end_dim(M) - len(_rad_end(M)) == 1


def top_over_end(M: ModuleRep) -> ModuleRep:
    """M modulo the images of radical endomorphisms."""
    parts = {v: [] for v in M.vertices}
    for h in _rad_end(M):
        for v, b in h.image().items():
            parts[v].append(b)
    lower = {v: la.rowspace(la.vstack(parts[v], M.dim_at(v))) for v in M.vertices}
    upper = {v: la.identity(M.dim_at(v)) for v in M.vertices}
    return subquotient(M, upper, lower)


def soc_over_end(M: ModuleRep) -> ModuleRep:
    """Common kernel of the radical endomorphisms of M."""
    rad = _rad_end(M)
    upper = {}
    for v in M.vertices:
        d = M.dim_at(v)
        eq = la.vstack([h.blocks[v] for h in rad], d)
        upper[v] = la.rowspace(la.nullspace(eq)) if eq.nrows() else la.identity(d)
    return subquotient(M, upper)


def ideal_twist(M: ModuleRep, i: int) -> ModuleRep:
    """I_i (x) M, computed as I_i P0 / I_i Omega for the projective cover P0 -> M."""
    pres = M.presentation
    P0 = pres.cover

    def apply_ideal(sub: Mapping[int, fmpq_mat]) -> dict[int, fmpq_mat]:
        gens = {v: (sub[v] if v != i else fmpq_mat(0, P0.dim_at(v))) for v in P0.vertices}
        return generated_submodule(P0, gens)

    full = {v: la.identity(P0.dim_at(v)) for v in P0.vertices}
    return subquotient(P0, apply_ideal(full), apply_ideal(pres.kernel))
