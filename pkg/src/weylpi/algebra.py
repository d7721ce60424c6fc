"""Preprojective algebras of Dynkin quivers, built degree by degree.

Paths are written in traversal order: ``(p; q)`` means first p, then q.  The
doubled quiver has an x-arrow u -> v and a y-arrow v -> u for every Dynkin
edge (u, v).  The relation at vertex k is

    sum_{x: k -> j} (x; y)  -  sum_{x: i -> k} (y; x)  =  0,

which for type A reads x_i y_{i+1} = y_i x_{i-1}.

The basis of degree d consists of monomials (b, a) with b a basis element of
degree d-1 and a an arrow starting where b ends; the basis is the set of
non-pivot monomials after row-reducing the relation span.  Every basis element
therefore has a representative path.  Basis elements are finally ordered by
(target, degree, source), so e_j Pi is a contiguous block of coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from flint import fmpq_mat

from . import linalg as la
from .weyl import CartanType

__all__ = ["Arrow", "Quiver", "PiAlgebra", "build_pi", "pi_algebra"]


@dataclass(frozen=True, order=True)
class Arrow:
    source: int
    target: int

    @property
    def name(self) -> str:
        return f"{self.source}->{self.target}"

    @property
    def star(self) -> "Arrow":
        return Arrow(self.target, self.source)

    def __str__(self) -> str:
        return self.name


class Quiver:
    """Double of a Dynkin quiver."""

    def __init__(self, ctype: CartanType):
        self.ctype = ctype
        if ctype.family == "D":
            self.vertices: tuple[int, ...] = (-1,) + tuple(range(1, ctype.rank))
        else:
            self.vertices = tuple(range(1, ctype.rank + 1))
        self.vpos = {v: k for k, v in enumerate(self.vertices)}
        self.edges = ctype.edges
        self.x_arrows = tuple(Arrow(u, v) for u, v in self.edges)
        self.arrows: tuple[Arrow, ...] = tuple(sorted(
            list(self.x_arrows) + [a.star for a in self.x_arrows],
            key=lambda a: (self.vpos[a.source], self.vpos[a.target]),
        ))
        self.arrow_set = frozenset(self.arrows)
        self.out_arrows = {v: [a for a in self.arrows if a.source == v] for v in self.vertices}
        self.in_arrows = {v: [a for a in self.arrows if a.target == v] for v in self.vertices}

    def relation(self, k: int) -> list[tuple[int, Arrow, Arrow]]:
        """Terms (sign, first, second) of the relation at vertex k."""
        terms = []
        for x in self.x_arrows:
            if x.source == k:
                terms.append((1, x, x.star))
            if x.target == k:
                terms.append((-1, x.star, x))
        return terms

    def arrow(self, source: int, target: int) -> Arrow:
        a = Arrow(source, target)
        if a not in self.arrow_set:
            raise KeyError(f"no arrow {a}")
        return a

    def euler_form(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Symmetrised Euler form: 2 sum x_i y_i - sum over edges (x_i y_j + x_j y_i)."""
        p = self.vpos
        out = 2 * sum(a * b for a, b in zip(x, y))
        for u, v in self.edges:
            out -= x[p[u]] * y[p[v]] + x[p[v]] * y[p[u]]
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Quiver) and other.ctype == self.ctype

    def __hash__(self) -> int:
        return hash(self.ctype)


@dataclass(frozen=True)
class BasisElement:
    degree: int
    source: int
    target: int
    path: tuple[Arrow, ...]

    @property
    def label(self) -> str:
        if not self.path:
            return f"e{self.source}"
        return ".".join(a.name for a in self.path)


class PiAlgebra:
    """Preprojective algebra with left and right multiplication by arrows."""

    def __init__(self, ctype: CartanType, max_dim: int | None = None):
        self.ctype = ctype
        self.quiver = q = Quiver(ctype)
        # graded construction with temporary (degree-local) indexing
        degrees: list[list[BasisElement]] = [
            [BasisElement(0, v, v, ()) for v in q.vertices]
        ]
        # left[d][a] : dict (index in degree d-1) -> vector over degree d (dict)
        step_maps: list[dict[Arrow, dict[int, dict[int, object]]]] = [{}]
        total = len(q.vertices)
        d = 1
        while True:
            prev = degrees[-1]
            monomials = [(b, a) for b, el in enumerate(prev) for a in q.out_arrows[el.target]]
            mon_index = {m: k for k, m in enumerate(monomials)}
            rows = []
            if d >= 2:
                for c, el in enumerate(degrees[-2]):
                    row = [0] * len(monomials)
                    for sign, first, second in q.relation(el.target):
                        for b, coeff in step_maps[-1][first].get(c, {}).items():
                            row[mon_index[(b, second)]] += sign * coeff
                    if any(row):
                        rows.append(row)
            if rows:
                rel = la.rowspace(la.from_rows(rows, len(monomials)))
                piv = la.pivots(rel)
            else:
                rel = fmpq_mat(0, len(monomials))
                piv = []
            pset = set(piv)
            free = [k for k in range(len(monomials)) if k not in pset]
            if not free:
                break
            free_pos = {k: t for t, k in enumerate(free)}
            new = []
            for k in free:
                b, a = monomials[k]
                el = prev[b]
                new.append(BasisElement(d, el.source, a.target, el.path + (a,)))
            images: dict[int, dict[int, object]] = {}
            for k in free:
                images[k] = {free_pos[k]: 1}
            for r, p in enumerate(piv):
                vec = {}
                for f in free:
                    x = rel[r, f]
                    if x:
                        vec[free_pos[f]] = -x
                images[p] = vec
            maps: dict[Arrow, dict[int, dict[int, object]]] = {a: {} for a in q.arrows}
            for k, (b, a) in enumerate(monomials):
                maps[a][b] = images[k]
            degrees.append(new)
            step_maps.append(maps)
            total += len(new)
            if max_dim is not None and total > max_dim:
                raise MemoryError(f"dim Pi({ctype}) exceeds the limit {max_dim}")
            d += 1
        flat = [(el, dg, k) for dg, els in enumerate(degrees) for k, el in enumerate(els)]
        order = sorted(range(len(flat)), key=lambda t: (
            q.vpos[flat[t][0].target], flat[t][1], q.vpos[flat[t][0].source], flat[t][2]))
        self.basis: list[BasisElement] = [flat[t][0] for t in order]
        gidx = {(flat[t][1], flat[t][2]): g for g, t in enumerate(order)}
        self.dim = len(self.basis)
        self.loewy_length = len(degrees)
        # left multiplication (append an arrow) as sparse global maps
        self._left: dict[Arrow, dict[int, dict[int, object]]] = {a: {} for a in q.arrows}
        for dg in range(1, len(degrees)):
            for a, m in step_maps[dg].items():
                for b, vec in m.items():
                    self._left[a][gidx[(dg - 1, b)]] = {gidx[(dg, t)]: c for t, c in vec.items()}
        self.block: dict[int, list[int]] = {v: [] for v in q.vertices}
        for g, el in enumerate(self.basis):
            self.block[el.target].append(g)
        self.local = {}
        for v, idxs in self.block.items():
            for k, g in enumerate(idxs):
                self.local[g] = k
        self.index_of_path = {(el.source, el.path): g for g, el in enumerate(self.basis)}

    def __repr__(self) -> str:
        return f"PiAlgebra({self.ctype}, dim={self.dim})"

    def idempotent(self, v: int) -> int:
        return self.index_of_path_at(v)

    def index_of_path_at(self, v: int) -> int:
        for g in self.block[v]:
            if self.basis[g].degree == 0:
                return g
        raise KeyError(v)

    def left_mul(self, a: Arrow, vec: dict[int, object]) -> dict[int, object]:
        """a . vec  (append a to every path of vec)."""
        out: dict[int, object] = {}
        for g, c in vec.items():
            for t, x in self._left[a].get(g, {}).items():
                out[t] = out.get(t, 0) + c * x
        return {k: v for k, v in out.items() if v}

    def right_mul(self, vec: dict[int, object], a: Arrow) -> dict[int, object]:
        """vec . a  (prepend a to every path of vec)."""
        out: dict[int, object] = {}
        for g, c in vec.items():
            el = self.basis[g]
            if el.source != a.target:
                continue
            cur = {self.index_of_path[(a.source, (a,))]: 1}
            for b in el.path:
                cur = self.left_mul(b, cur)
            for t, x in cur.items():
                out[t] = out.get(t, 0) + c * x
        return {k: v for k, v in out.items() if v}

    def multiply(self, u: dict[int, object], v: dict[int, object]) -> dict[int, object]:
        """Product u * v with u applied after v: the path of v then the path of u.

        Equivalently, as elements of the path algebra composed left to right,
        this is (v; u).
        """
        out: dict[int, object] = {}
        for g, c in u.items():
            el = self.basis[g]
            cur = {k: x for k, x in v.items() if self.basis[k].target == el.source}
            for b in el.path:
                cur = self.left_mul(b, cur)
            for t, x in cur.items():
                out[t] = out.get(t, 0) + c * x
        return {k: x for k, x in out.items() if x}

    @cached_property
    def left_blocks(self) -> dict[Arrow, fmpq_mat]:
        """For a: i -> j, the matrix (rows = e_i Pi coordinates) of x -> a.x into e_j Pi."""
        out = {}
        for a in self.quiver.arrows:
            src, tgt = self.block[a.source], self.block[a.target]
            m = fmpq_mat(len(src), len(tgt))
            for r, g in enumerate(src):
                for t, x in self._left[a].get(g, {}).items():
                    m[r, self.local[t]] = x
            out[a] = m
        return out

    def dim_by_degree(self) -> list[int]:
        out = [0] * self.loewy_length
        for el in self.basis:
            out[el.degree] += 1
        return out

    def projective_dims(self, v: int) -> dict[int, int]:
        """Dimension vector of P_v = Pi e_v."""
        out = {u: 0 for u in self.quiver.vertices}
        for el in self.basis:
            if el.source == v:
                out[el.target] += 1
        return out

    def source_mask(self, v: int, s: int) -> list[int]:
        """Local coordinates of e_v Pi e_s inside the block e_v Pi."""
        return [k for k, g in enumerate(self.block[v]) if self.basis[g].source == s]

    def check_relations(self) -> bool:
        """Every relation, prefixed by every basis path, vanishes."""
        q = self.quiver
        for g, el in enumerate(self.basis):
            total: dict[int, object] = {}
            for sign, first, second in q.relation(el.target):
                v = self.left_mul(second, self.left_mul(first, {g: 1}))
                for k, x in v.items():
                    total[k] = total.get(k, 0) + sign * x
            if any(total.values()):
                return False
        return True


def expected_dimension(ct: CartanType) -> int:
    h = ct.coxeter_number
    return ct.rank * h * (h + 1) // 6


_ALGEBRAS: dict[CartanType, PiAlgebra] = {}


def build_pi(ct: CartanType, max_dim: int | None = None) -> PiAlgebra:
    return PiAlgebra(ct, max_dim=max_dim)


def pi_algebra(ct: CartanType, max_dim: int | None = None) -> PiAlgebra:
    """Memoised build_pi."""
    alg = _ALGEBRAS.get(ct)
    if alg is None:
        alg = build_pi(ct, max_dim=max_dim)
        _ALGEBRAS[ct] = alg
    return alg
