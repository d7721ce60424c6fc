"""Layer modules of weak order: catalogue, doubletons and stone reduction.

Layers are indexed by join-irreducibles: the layer of j is the layer on the
Hasse arrow j -> j_*.  Indices here are lattice indices of ``weak_order``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .ideals import IdealTable, ideal_table
from .lattice import FiniteLattice, ForcingPoset
from flint import fmpq_mat

from . import linalg as la
from .modules import ModuleRep, ext1_dim, extensions, ideal_twist, is_isomorphic, regular_module, subquotient
from .weyl import CartanType, WeylElement, weak_order

__all__ = [
    "Doubleton",
    "LayerCatalog",
    "StoneReductionError",
    "layer_catalog",
    "reduce_stone_to_simple",
    "ideal_quotient",
    "right_quotient_dual",
]


class StoneReductionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Doubleton:
    """Layers x, y with one-dimensional Ext^1 both ways.

    ``xy`` is the layer isomorphic to the middle term of 0 -> x -> E -> y -> 0
    and ``yx`` the one for 0 -> y -> F -> x -> 0 (None when not a layer).
    """

    x: int
    y: int
    xy: int | None
    yx: int | None

    @property
    def is_layer_pair(self) -> bool:
        return self.xy is not None and self.yx is not None


class LayerCatalog:
    def __init__(self, ct: CartanType, table: IdealTable | None = None):
        self.ctype = ct
        self.table = table or ideal_table(ct)
        self.lattice: FiniteLattice = weak_order(ct)
        self.jirrs: list[int] = self.lattice.join_irreducibles()
        self.position = {j: k for k, j in enumerate(self.jirrs)}

    def element(self, x: int) -> WeylElement:
        return self.lattice.payload[x]

    def arrow_layer(self, arrow: tuple[int, int]) -> ModuleRep:
        u, l = arrow
        return self.table.layer(self.element(u), self.element(l))

    def layer(self, j: int) -> ModuleRep:
        """Layer of the join-irreducible j (a lattice index)."""
        return self.arrow_layer((j, self.lattice.j_star(j)))

    @cached_property
    def layers(self) -> list[ModuleRep]:
        return [self.layer(j) for j in self.jirrs]

    def identify(self, M: ModuleRep) -> int | None:
        """Join-irreducible whose layer is isomorphic to M, if any."""
        for j, L in zip(self.jirrs, self.layers):
            if L.dims == M.dims and is_isomorphic(L, M):
                return j
        return None

    @cached_property
    def ext_table(self) -> dict[tuple[int, int], int]:
        """dim Ext^1(layer a, layer b) keyed by join-irreducibles."""
        out = {}
        for a, La in zip(self.jirrs, self.layers):
            for b, Lb in zip(self.jirrs, self.layers):
                out[(a, b)] = ext1_dim(La, Lb)
        return out

    @cached_property
    def doubletons(self) -> list[Doubleton]:
        """Pairs with one-dimensional Ext^1 both ways whose extensions are layers."""
        out = []
        ext = self.ext_table
        for p, a in enumerate(self.jirrs):
            for b in self.jirrs[p + 1:]:
                if ext[(a, b)] != 1 or ext[(b, a)] != 1:
                    continue
                La, Lb = self.layers[self.position[a]], self.layers[self.position[b]]
                (e_ab,) = extensions(Lb, La)   # 0 -> La -> E -> Lb -> 0
                (e_ba,) = extensions(La, Lb)
                d = Doubleton(a, b, self.identify(e_ab), self.identify(e_ba))
                if d.is_layer_pair:
                    out.append(d)
        return out

    def doubleton_order(self) -> ForcingPoset:
        """Transitive closure of A > B for B an extension within a doubleton containing A."""
        n = len(self.jirrs)
        below = [1 << k for k in range(n)]
        pos = self.position
        for d in self.doubletons:
            for ext in (d.xy, d.yx):
                for top in (d.x, d.y):
                    below[pos[top]] |= 1 << pos[ext]
        changed = True
        while changed:
            changed = False
            for k in range(n):
                acc = below[k]
                for t in range(n):
                    if acc >> t & 1 and t != k:
                        acc |= below[t]
                if acc != below[k]:
                    below[k] = acc
                    changed = True
        return ForcingPoset(list(self.jirrs), below)


_CATALOGS: dict[CartanType, LayerCatalog] = {}


def layer_catalog(ct: CartanType) -> LayerCatalog:
    c = _CATALOGS.get(ct)
    if c is None:
        c = LayerCatalog(ct)
        _CATALOGS[ct] = c
    return c


def ideal_quotient(table: IdealTable, big: WeylElement, small: WeylElement) -> ModuleRep:
    """I(big) / I(small) as a left module; needs I(small) inside I(big)."""
    alg = table.alg
    vs = alg.quiver.vertices
    upper = dict(zip(vs, table.ideal(big).blocks))
    lower = dict(zip(vs, table.ideal(small).blocks))
    return subquotient(regular_module(alg), upper, lower)


def right_quotient_dual(table: IdealTable, big: WeylElement, small: WeylElement) -> ModuleRep:
    """D(I(big)/I(small)) for the quotient taken as a right Pi-module.

    The right module splits by path source; an arrow a: i -> j sends the part
    at j to the part at i by precomposition, and the dual left module uses the
    transposed matrices.
    """
    alg = table.alg
    q = alg.quiver
    hi, lo = table.ideal(big), table.ideal(small)

    def global_rows(ideal, s):
        rows = []
        for v, blk in zip(q.vertices, ideal.blocks):
            for p, row in zip(la.pivots(blk), la.rows_of(blk)):
                if alg.basis[alg.block[v][p]].source != s:
                    continue
                full = [0] * alg.dim
                for k, x in enumerate(row):
                    if x:
                        full[alg.block[v][k]] = x
                rows.append(full)
        return la.rowspace(la.from_rows(rows, alg.dim)) if rows else fmpq_mat(0, alg.dim)

    comp, coords = {}, {}
    for s in q.vertices:
        U, V = global_rows(hi, s), global_rows(lo, s)
        if not la.contains(U, V):
            raise ValueError("I(small) is not contained in I(big)")
        comp[s] = la.complement_rows(U, V)
        coords[s] = la.Coordinates(la.vstack([comp[s], V], alg.dim))
    maps = {}
    for a in q.arrows:
        i, j = a.source, a.target
        C = comp[j]
        if C.nrows() == 0 or comp[i].nrows() == 0:
            continue
        images = []
        for row in la.rows_of(C):
            vec = {g: x for g, x in enumerate(row) if x}
            res = alg.right_mul(vec, a)
            img = [0] * alg.dim
            for g, x in res.items():
                img[g] = x
            images.append(img)
        c = coords[i](la.from_rows(images, alg.dim))
        # row r holds the image of the r-th basis vector at j; keep the part along comp[i]
        R = la.select_columns(c, list(range(comp[i].nrows())))
        maps[a] = R
    dims = {s: comp[s].nrows() for s in q.vertices}
    return ModuleRep(q, dims, maps)


def reduce_stone_to_simple(L: ModuleRep, max_steps: int | None = None) -> tuple[list[int], ModuleRep]:
    """Twist by I_i at a top vertex i until a simple module is reached.

    Returns the vertex sequence and the final simple.  Raises
    StoneReductionError when no simple is reached within ``max_steps``.
    """
    q = L.quiver
    if max_steps is None:
        max_steps = q.ctype.longest_length
    seq: list[int] = []
    cur = L
    while cur.dim != 1:
        if len(seq) >= max_steps:
            raise StoneReductionError(f"no simple after {max_steps} steps")
        if cur.dim == 0:
            raise StoneReductionError("reduction reached the zero module")
        top = cur.top_dims()
        i = next(v for v in q.vertices if top[v])
        seq.append(i)
        cur = ideal_twist(cur, i)
    return seq, cur
