"""Finite lattices given by their Hasse diagrams.

Elements are relabelled into a linear extension (smaller elements first), so
the meet of x and y is the largest index in the intersection of their
down-sets.  Down-sets and up-sets are Python ints used as bitsets.

A Hasse arrow is a pair ``(upper, lower)`` with ``upper`` covering ``lower``;
arrows are numbered in sorted order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

__all__ = [
    "NotALattice",
    "FiniteLattice",
    "Polygon",
    "Congruence",
    "ForcingPoset",
    "build_lattice",
]


class NotALattice(ValueError):
    pass


def _bits(x: int) -> Iterable[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Polygon:
    bottom: int
    top: int
    left: tuple[int, ...]   # bottom .. top
    right: tuple[int, ...]  # bottom .. top

    @property
    def shape(self) -> str:
        size = len(self.left) + len(self.right) - 2
        if size == 4:
            return "square"
        if size == 6:
            return "hexagon"
        return "other"

    @staticmethod
    def _chain_arrows(chain: Sequence[int]) -> list[tuple[int, int]]:
        return [(chain[k + 1], chain[k]) for k in range(len(chain) - 1)]

    def arrows(self) -> list[tuple[int, int]]:
        return self._chain_arrows(self.left) + self._chain_arrows(self.right)

    def side_arrows(self) -> list[tuple[int, int]]:
        return self._chain_arrows(self.left)[1:-1] + self._chain_arrows(self.right)[1:-1]


@dataclass(frozen=True)
class Congruence:
    """Partition of the elements; ``classes[x]`` is the smallest member of x's block."""

    classes: tuple[int, ...]

    def same(self, x: int, y: int) -> bool:
        return self.classes[x] == self.classes[y]

    def contracts(self, arrow: tuple[int, int]) -> bool:
        return self.same(*arrow)

    def __le__(self, other: "Congruence") -> bool:
        return all(other.classes[x] == other.classes[c] for x, c in enumerate(self.classes))


@dataclass
class ForcingPoset:
    """Partial order on join-irreducibles.  ``below[p]`` holds positions q with q <= p."""

    elements: list[int]
    below: list[int]

    def leq(self, a: int, b: int) -> bool:
        pa, pb = self.position[a], self.position[b]
        return bool(self.below[pb] >> pa & 1)

    @cached_property
    def position(self) -> dict[int, int]:
        return {x: k for k, x in enumerate(self.elements)}

    def relations(self) -> set[tuple[int, int]]:
        """All pairs (a, b) with a <= b and a != b."""
        out = set()
        for pb, b in enumerate(self.elements):
            for pa in _bits(self.below[pb]):
                if pa != pb:
                    out.add((self.elements[pa], b))
        return out

    def hasse(self) -> list[tuple[int, int]]:
        """Cover pairs (upper, lower)."""
        rel = self.relations()
        out = []
        for a, b in rel:
            if not any((a, c) in rel and (c, b) in rel for c in self.elements):
                out.append((b, a))
        return sorted(out)

    def maximal(self) -> list[int]:
        return sorted(b for b in self.elements if not any((b, c) in self.relations() for c in self.elements))

    def minimal(self) -> list[int]:
        rel = self.relations()
        return sorted(a for a in self.elements if not any((c, a) in rel for c in self.elements))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True


class FiniteLattice:
    def __init__(self, n: int, covers: Iterable[tuple[int, int]],
                 payload: Sequence[Hashable] | None = None, check: bool = True):
        covers = sorted(set((int(u), int(l)) for u, l in covers))
        # longest-path rank, then relabel in (rank, old index) order
        lower_of: list[list[int]] = [[] for _ in range(n)]
        upper_of: list[list[int]] = [[] for _ in range(n)]
        for u, l in covers:
            if u == l:
                raise NotALattice("loop in Hasse diagram")
            lower_of[u].append(l)
            upper_of[l].append(u)
        rank = [-1] * n
        indeg = [len(lower_of[x]) for x in range(n)]
        stack = [x for x in range(n) if indeg[x] == 0]
        order = []
        for x in stack:
            rank[x] = 0
        while stack:
            x = stack.pop()
            order.append(x)
            for u in upper_of[x]:
                rank[u] = max(rank[u], rank[x] + 1)
                indeg[u] -= 1
                if indeg[u] == 0:
                    stack.append(u)
        if len(order) != n:
            raise NotALattice("Hasse diagram has a cycle")
        perm = sorted(range(n), key=lambda x: (rank[x], x))
        new = {old: k for k, old in enumerate(perm)}
        self.n = n
        self.payload = [payload[old] for old in perm] if payload is not None else list(perm)
        self.rank = [rank[old] for old in perm]
        self.lower = [sorted(new[l] for l in lower_of[old]) for old in perm]
        self.upper = [sorted(new[u] for u in upper_of[old]) for old in perm]
        self.arrows: list[tuple[int, int]] = sorted((new[u], new[l]) for u, l in covers)
        self.arrow_index = {a: k for k, a in enumerate(self.arrows)}
        down = [0] * n
        for x in range(n):
            acc = 1 << x
            for l in self.lower[x]:
                acc |= down[l]
            down[x] = acc
        up = [0] * n
        for x in range(n - 1, -1, -1):
            acc = 1 << x
            for u in self.upper[x]:
                acc |= up[u]
            up[x] = acc
        self.down = down
        self.up = up
        self.full = (1 << n) - 1
        bottoms = [x for x in range(n) if not self.lower[x]]
        tops = [x for x in range(n) if not self.upper[x]]
        if len(bottoms) != 1 or len(tops) != 1:
            raise NotALattice("lattice needs a unique bottom and top")
        self.bottom, self.top = bottoms[0], tops[0]
        self.index = {p: k for k, p in enumerate(self.payload)}
        if check:
            self.validate()

    # basic order operations

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    def meet(self, x: int, y: int) -> int:
        common = self.down[x] & self.down[y]
        z = common.bit_length() - 1
        if z < 0 or self.down[z] != common:
            raise NotALattice(f"no meet for {x}, {y}")
        return z

    def join(self, x: int, y: int) -> int:
        common = self.up[x] & self.up[y]
        z = (common & -common).bit_length() - 1
        if z < 0 or self.up[z] != common:
            raise NotALattice(f"no join for {x}, {y}")
        return z

    def meet_set(self, xs: int | Iterable[int]) -> int:
        """Meet of a set of elements (given as bitset or iterable)."""
        it = _bits(xs) if isinstance(xs, int) else iter(xs)
        common = self.full
        for x in it:
            common &= self.down[x]
        return self._max_of_downset(common)

    def join_set(self, xs: int | Iterable[int]) -> int:
        it = _bits(xs) if isinstance(xs, int) else iter(xs)
        common = self.full
        for x in it:
            common &= self.up[x]
        return self._min_of_upset(common)

    def _max_of_downset(self, s: int) -> int:
        z = s.bit_length() - 1
        if z < 0 or self.down[z] != s:
            raise NotALattice("set has no meet")
        return z

    def _min_of_upset(self, s: int) -> int:
        z = (s & -s).bit_length() - 1
        if z < 0 or self.up[z] != s:
            raise NotALattice("set has no join")
        return z

    def validate(self) -> None:
        for x in range(self.n):
            for y in range(x + 1, self.n):
                self.meet(x, y)
                self.join(x, y)

    def interval(self, x: int, y: int) -> list[int]:
        return list(_bits(self.up[x] & self.down[y]))

    # irreducibles

    def join_irreducibles(self) -> list[int]:
        return [x for x in range(self.n) if len(self.lower[x]) == 1]

    def meet_irreducibles(self) -> list[int]:
        return [x for x in range(self.n) if len(self.upper[x]) == 1]

    def j_star(self, j: int) -> int:
        (l,) = self.lower[j]
        return l

    def m_star(self, m: int) -> int:
        (u,) = self.upper[m]
        return u

    def jlabel(self, arrow: tuple[int, int]) -> int:
        """Join of nothing: the meet of {z <= x : z not <= y} for arrow x -> y."""
        x, y = arrow
        return self.meet_set(self.down[x] & ~self.down[y])

    def mlabel(self, arrow: tuple[int, int]) -> int:
        x, y = arrow
        return self.join_set(self.up[y] & ~self.up[x])

    def arrow_labels(self) -> list[tuple[int, int]]:
        return [(self.jlabel(a), self.mlabel(a)) for a in self.arrows]

    def canonical_join_rep(self, x: int) -> list[int]:
        return sorted(self.jlabel((x, y)) for y in self.lower[x])

    def canonical_meet_rep(self, x: int) -> list[int]:
        return sorted(self.mlabel((y, x)) for y in self.upper[x])

    # congruences

    def con(self, a: int, b: int) -> Congruence:
        """Smallest congruence identifying a and b (closure oracle)."""
        uf = _UnionFind(self.n)
        work = []
        if uf.union(a, b):
            work.append((a, b))
        while work:
            x, y = work.pop()
            for c in range(self.n):
                for p, q in ((self.join(x, c), self.join(y, c)), (self.meet(x, c), self.meet(y, c))):
                    if uf.union(p, q):
                        work.append((p, q))
        return Congruence(tuple(uf.find(x) for x in range(self.n)))

    def contracted_arrows(self, cong: Congruence) -> list[int]:
        return [k for k, a in enumerate(self.arrows) if cong.contracts(a)]

    def forcing_poset_by_closure(self) -> ForcingPoset:
        js = self.join_irreducibles()
        cons = [self.con(j, self.j_star(j)) for j in js]
        below = []
        for pb, jb in enumerate(js):
            mask = 0
            for pa, ja in enumerate(js):
                if cons[pb].same(ja, self.j_star(ja)):
                    mask |= 1 << pa
            below.append(mask)
        return ForcingPoset(js, below)

    def is_semidistributive(self) -> bool:
        """Join and meet semidistributivity, grouped by the common join/meet value."""
        for x in range(self.n):
            groups: dict[int, int] = {}
            for y in range(self.n):
                v = self.join(x, y)
                groups[v] = groups.get(v, self.full) & self.down[y]
            for v, common in groups.items():
                if self.join(x, self._max_of_downset(common)) != v:
                    return False
            groups = {}
            for y in range(self.n):
                v = self.meet(x, y)
                groups[v] = groups.get(v, self.full) & self.up[y]
            for v, common in groups.items():
                if self.meet(x, self._min_of_upset(common)) != v:
                    return False
        return True

    def is_congruence_uniform(self) -> bool:
        """j -> con(j_*, j) and m -> con(m, m^*) both injective."""
        js = [self.con(j, self.j_star(j)).classes for j in self.join_irreducibles()]
        ms = [self.con(m, self.m_star(m)).classes for m in self.meet_irreducibles()]
        return len(set(js)) == len(js) and len(set(ms)) == len(ms)

    # polygons and forcing

    def _polygon(self, bottom: int, top: int) -> Polygon | None:
        inside = self.up[bottom] & self.down[top]
        members = list(_bits(inside))
        up_in = {x: [u for u in self.upper[x] if inside >> u & 1] for x in members}
        down_in = {x: [l for l in self.lower[x] if inside >> l & 1] for x in members}
        if len(up_in[bottom]) != 2 or len(down_in[top]) != 2:
            return None
        for x in members:
            if x in (bottom, top):
                continue
            if len(up_in[x]) != 1 or len(down_in[x]) != 1:
                return None
        chains = []
        for start in up_in[bottom]:
            chain = [bottom, start]
            while chain[-1] != top:
                chain.append(up_in[chain[-1]][0])
            chains.append(tuple(chain))
        if len(chains[0]) + len(chains[1]) - 2 != len(members):
            return None
        chains.sort()
        return Polygon(bottom, top, chains[0], chains[1])

    @cached_property
    def polygons(self) -> list[Polygon]:
        found: dict[tuple[int, int], Polygon] = {}
        for x in range(self.n):
            ups = self.upper[x]
            for a in range(len(ups)):
                for b in range(a + 1, len(ups)):
                    top = self.join(ups[a], ups[b])
                    p = self._polygon(x, top)
                    if p is not None:
                        found[(x, top)] = p
            downs = self.lower[x]
            for a in range(len(downs)):
                for b in range(a + 1, len(downs)):
                    bot = self.meet(downs[a], downs[b])
                    p = self._polygon(bot, x)
                    if p is not None:
                        found[(bot, x)] = p
        return [found[k] for k in sorted(found)]

    def check_polygonal(self) -> list[tuple[str, int, int, int]]:
        """Failures (kind, element, cover1, cover2); empty when polygonal."""
        bad = []
        for x in range(self.n):
            ups = self.upper[x]
            for a in range(len(ups)):
                for b in range(a + 1, len(ups)):
                    if self._polygon(x, self.join(ups[a], ups[b])) is None:
                        bad.append(("up", x, ups[a], ups[b]))
            downs = self.lower[x]
            for a in range(len(downs)):
                for b in range(a + 1, len(downs)):
                    if self._polygon(self.meet(downs[a], downs[b]), x) is None:
                        bad.append(("down", x, downs[a], downs[b]))
        return bad

    def _polygon_edges(self, full: bool) -> list[set[int]]:
        idx = self.arrow_index
        adj: list[set[int]] = [set() for _ in self.arrows]
        for p in self.polygons:
            la = Polygon._chain_arrows(p.left)
            ra = Polygon._chain_arrows(p.right)
            sides = [idx[a] for a in la[1:-1] + ra[1:-1]]
            for own, other in ((la, ra), (ra, la)):
                bot, top = idx[own[0]], idx[own[-1]]
                adj[bot].add(idx[other[-1]])
                adj[top].add(idx[other[0]])
                if full:
                    adj[bot].update(sides)
                    adj[top].update(sides)
        return adj

    @cached_property
    def fpoly(self) -> list[set[int]]:
        """Forcing quiver on arrow ids: successors of each arrow."""
        return self._polygon_edges(True)

    @cached_property
    def sfpoly(self) -> list[set[int]]:
        return self._polygon_edges(False)

    @staticmethod
    def _reach(adj: list[set[int]]) -> list[int]:
        out = []
        for s in range(len(adj)):
            seen = 1 << s
            stack = [s]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if not seen >> w & 1:
                        seen |= 1 << w
                        stack.append(w)
            out.append(seen)
        return out

    @cached_property
    def fpoly_reach(self) -> list[int]:
        return self._reach(self.fpoly)

    def strongly_connected_components(self, adj: list[set[int]] | None = None) -> list[list[int]]:
        reach = self.fpoly_reach if adj is None else self._reach(adj)
        comp: dict[int, list[int]] = {}
        seen = set()
        for a in range(len(reach)):
            if a in seen:
                continue
            block = [b for b in _bits(reach[a]) if reach[b] >> a & 1]
            seen.update(block)
            comp[a] = block
        return [comp[k] for k in sorted(comp)]

    def sfpoly_components(self) -> list[list[int]]:
        """Connected components of the symmetric forcing quiver."""
        uf = _UnionFind(len(self.arrows))
        for a, succ in enumerate(self.sfpoly):
            for b in succ:
                uf.union(a, b)
        groups: dict[int, list[int]] = {}
        for a in range(len(self.arrows)):
            groups.setdefault(uf.find(a), []).append(a)
        return [groups[k] for k in sorted(groups)]

    def congruence_from_arrows(self, arrow_ids: Iterable[int]) -> Congruence:
        uf = _UnionFind(self.n)
        for k in arrow_ids:
            uf.union(*self.arrows[k])
        return Congruence(tuple(uf.find(x) for x in range(self.n)))

    def forcing_poset(self) -> ForcingPoset:
        """Forcing order read off the polygon forcing quiver.

        Raises ``NotALattice`` when some strongly connected component does not
        contain exactly one arrow of the form j -> j_*.
        """
        js = self.join_irreducibles()
        jarrow = {j: self.arrow_index[(j, self.j_star(j))] for j in js}
        owner = {}
        for block in self.strongly_connected_components():
            hits = [j for j in js if jarrow[j] in block]
            if len(hits) != 1:
                raise NotALattice(f"component {block} contains {len(hits)} join-irreducible arrows")
            owner[block[0]] = hits[0]
        reach = self.fpoly_reach
        below = []
        for jb in js:
            mask = 0
            for pa, ja in enumerate(js):
                if reach[jarrow[jb]] >> jarrow[ja] & 1:
                    mask |= 1 << pa
            below.append(mask)
        return ForcingPoset(js, below)


def build_lattice(n: int, covers: Iterable[tuple[int, int]],
                  payload: Sequence[Hashable] | None = None, check: bool = True) -> FiniteLattice:
    return FiniteLattice(n, covers, payload, check)
