"""Array and string models of the indecomposable projectives and of J(w).

An array is a list of rows of cell symbols.  A symbol is a vertex label,
``-k`` (k >= 2) for the cells of vertex k in the right half of a type D
projective of type l != +-1, or FUSED for the cell carrying both vertices 1
and -1.  A fused position that only keeps one of its two sub-cells is written
with that sub-cell's vertex, 1 or -1.

Type D projectives P_l with l != +-1 carry two scalars (alpha, beta) on the
arrows around fused cells; any values with alpha + beta = 1 give a module
isomorphic to P_l.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from flint import fmpq_mat

from . import linalg as la
from .algebra import Quiver
from .modules import ModuleRep, UndecidedIsomorphism, hom, is_isomorphic, subquotient
from .weyl import CartanType, WeylElement, classify_jirr

__all__ = [
    "FUSED",
    "Cell",
    "CellGraph",
    "ArrayShape",
    "projective_array",
    "cell_graph",
    "jw_array",
    "array_module",
    "is_predecessor_closed",
    "format_array",
    "StringModule",
    "string_modules",
    "string_from_rows",
    "is_subfactor",
    "thin_submodules",
]

FUSED = "1/-1"

Symbol = int | str


@dataclass(frozen=True, order=True)
class Cell:
    row: int
    col: int
    part: str = ""   # "", "U" (upper sub-cell) or "L" (lower sub-cell)


@dataclass
class CellGraph:
    """Cells of a projective array with their vertices and weighted arrows."""

    ctype: CartanType
    ell: int
    symbols: list[list[Symbol]]
    vertex: dict[Cell, int]
    arrows: list[tuple[Cell, Cell, int]]  # (source, target, coefficient)
    fused_col: dict[int, int] = field(default_factory=dict)

    def cells(self) -> list[Cell]:
        return sorted(self.vertex)


def _fused_vertices(r: int) -> tuple[int, int]:
    up = 1 if r % 2 == 0 else -1
    return up, -up


def cell_graph(ct: CartanType, ell: int, alpha: int = 1, beta: int = 0) -> CellGraph:
    n = ct.rank
    vertex: dict[Cell, int] = {}
    arrows: list[tuple[Cell, Cell, int]] = []
    symbols: list[list[Symbol]] = []
    fused: dict[int, int] = {}
    if ct.family == "A":
        if not 1 <= ell <= n:
            raise ValueError(f"no vertex {ell} in {ct}")
        rows = n - ell + 1
        for r in range(rows):
            symbols.append([ell + r - c for c in range(ell)])
            for c in range(ell):
                vertex[Cell(r, c)] = ell + r - c
        for r in range(rows):
            for c in range(ell):
                if c + 1 < ell:
                    arrows.append((Cell(r, c), Cell(r, c + 1), 1))
                if r + 1 < rows:
                    arrows.append((Cell(r, c), Cell(r + 1, c), 1))
    elif ct.family == "D" and ell in (1, -1):
        rows = n - 1
        for r in range(rows):
            sign = ell * (-1) ** r
            syms: list[Symbol] = [r + 1 - c for c in range(r)] + [sign]
            symbols.append(syms)
            for c, s in enumerate(syms):
                vertex[Cell(r, c)] = s
        for r in range(rows):
            for c in range(r + 1):
                if c + 1 <= r:
                    arrows.append((Cell(r, c), Cell(r, c + 1), 1))
                if r + 1 < rows:
                    arrows.append((Cell(r, c), Cell(r + 1, c), 1))
    elif ct.family == "D" and 2 <= ell <= n - 1:
        rows = n - ell
        width = ell + n - 2
        for r in range(rows):
            f = ell + r - 1
            fused[r] = f
            syms = []
            for c in range(width):
                if c < f:
                    syms.append(ell + r - c)
                    vertex[Cell(r, c)] = ell + r - c
                elif c == f:
                    syms.append(FUSED)
                    up, low = _fused_vertices(r)
                    vertex[Cell(r, c, "U")] = up
                    vertex[Cell(r, c, "L")] = low
                else:
                    k = c - f + 1
                    syms.append(-k)
                    vertex[Cell(r, c)] = k
            symbols.append(syms)
        for r in range(rows):
            f = fused[r]
            for c in range(width):
                # horizontal
                if c + 1 < width:
                    if c + 1 < f:
                        arrows.append((Cell(r, c), Cell(r, c + 1), 1))
                    elif c + 1 == f:
                        arrows.append((Cell(r, c), Cell(r, f, "U"), 1))
                        arrows.append((Cell(r, c), Cell(r, f, "L"), 1))
                    elif c == f:
                        arrows.append((Cell(r, f, "U"), Cell(r, c + 1), 1))
                        arrows.append((Cell(r, f, "L"), Cell(r, c + 1), -1))
                    else:
                        arrows.append((Cell(r, c), Cell(r, c + 1), 1))
                # vertical
                if r + 1 < rows:
                    if c < f:
                        arrows.append((Cell(r, c), Cell(r + 1, c), 1))
                    elif c == f:
                        arrows.append((Cell(r, f, "U"), Cell(r + 1, c), alpha))
                        arrows.append((Cell(r, f, "L"), Cell(r + 1, c), beta))
                    elif c == f + 1:
                        arrows.append((Cell(r, c), Cell(r + 1, c, "U"), beta))
                        arrows.append((Cell(r, c), Cell(r + 1, c, "L"), -alpha))
                    else:
                        arrows.append((Cell(r, c), Cell(r + 1, c), 1))
    else:
        raise ValueError(f"no array model for vertex {ell} of {ct}")
    return CellGraph(ct, ell, symbols, vertex, arrows, fused)


@dataclass(frozen=True)
class ArrayShape:
    ctype: CartanType
    ell: int
    rows: tuple[tuple[Symbol, ...], ...]
    closure: tuple[int, int] | None = None

    def text_rows(self) -> list[str]:
        return [" ".join(str(s) for s in row) if row else "." for row in self.rows]

    def __str__(self) -> str:
        return " / ".join(self.text_rows())


def projective_array(ct: CartanType, ell: int) -> ArrayShape:
    g = cell_graph(ct, ell)
    return ArrayShape(ct, ell, tuple(tuple(r) for r in g.symbols))


def _row_run(start: int, stop: int) -> list[Symbol]:
    return list(range(start, stop - 1, -1))


def _c_row(m: int, j: int) -> list[Symbol]:
    if j > m:
        return []
    if j >= 2:
        return _row_run(m, j)
    head = _row_run(m, 2)
    if j in (1, -1):
        return head + [j]
    if j == -2:
        return head + [FUSED]
    return head + [FUSED] + [-k for k in range(2, -j)]


def jw_array(w: WeylElement) -> ArrayShape:
    """Array of J(w) for a join-irreducible w, inside the array of P_l."""
    info = classify_jirr(w)
    if info is None:
        raise ValueError(f"{w} is not join-irreducible")
    ct, ell = w.ctype, info.type
    n = ct.rank
    i = (None,) + w.window
    rows: list[list[Symbol]] = []
    if ct.family == "A":
        for r in range(n - ell + 1):
            m = ell + 1 + r
            rows.append(_row_run(ell + r, i[m]))
        return ArrayShape(ct, ell, tuple(tuple(x) for x in rows))
    if ell in (1, -1):
        for r in range(n - 1):
            m = r + 2
            sign = ell * (-1) ** r
            ip = max(i[m], (-1) ** m * ell)
            if ip >= 2:
                rows.append(_row_run(r + 1, ip))
            elif ip == sign:
                rows.append(_row_run(r + 1, 2) + [sign])
            else:
                raise ValueError(f"row {r} of {w} ends at {ip}, not at {sign}")
        return ArrayShape(ct, ell, tuple(tuple(x) for x in rows))
    for r in range(n - ell):
        m = ell + r
        rows.append(_c_row(m, i[m + 1]))
    shape = ArrayShape(ct, ell, tuple(tuple(x) for x in rows))
    tail = {abs(i[m]) for m in range(ell + 1, n + 1)}
    if {1, 2} <= tail:
        for ab in ((1, 0), (0, 1)):
            if is_predecessor_closed(shape, ab):
                return ArrayShape(ct, ell, shape.rows, ab)
        raise ValueError(f"array of {w} is not closed for (1,0) or (0,1)")
    return shape


def _shape_cells(shape: ArrayShape, graph: CellGraph) -> set[Cell]:
    out: set[Cell] = set()
    for r, row in enumerate(shape.rows):
        if r >= len(graph.symbols) or len(row) > len(graph.symbols[r]):
            raise ValueError(f"row {r} does not fit in the projective array")
        for c, s in enumerate(row):
            full = graph.symbols[r][c]
            if full == FUSED:
                if s == FUSED:
                    out.add(Cell(r, c, "U"))
                    out.add(Cell(r, c, "L"))
                elif s in (1, -1):
                    part = "U" if graph.vertex[Cell(r, c, "U")] == s else "L"
                    out.add(Cell(r, c, part))
                else:
                    raise ValueError(f"symbol {s} at a fused position")
            else:
                if s != full:
                    raise ValueError(f"symbol {s} at ({r},{c}) should be {full}")
                out.add(Cell(r, c))
    return out


def is_predecessor_closed(shape: ArrayShape, alpha_beta: tuple[int, int] = (1, 0)) -> bool:
    graph = cell_graph(shape.ctype, shape.ell, *alpha_beta)
    cells = _shape_cells(shape, graph)
    return all(src in cells for src, dst, c in graph.arrows if c and dst in cells)


def array_module(shape: ArrayShape, quiver: Quiver | None = None) -> ModuleRep:
    """The quotient of the array's projective spanned by the shape's cells."""
    ab = shape.closure or (1, 0)
    graph = cell_graph(shape.ctype, shape.ell, *ab)
    cells = _shape_cells(shape, graph)
    if not is_predecessor_closed(shape, ab):
        raise ValueError(f"shape {shape} is not predecessor-closed for {ab}")
    q = quiver or Quiver(shape.ctype)
    by_vertex: dict[int, list[Cell]] = {v: [] for v in q.vertices}
    for c in sorted(cells):
        by_vertex[graph.vertex[c]].append(c)
    pos = {c: k for v in by_vertex for k, c in enumerate(by_vertex[v])}
    dims = {v: len(cs) for v, cs in by_vertex.items()}
    maps = {a: fmpq_mat(dims[a.target], dims[a.source]) for a in q.arrows}
    for src, dst, coeff in graph.arrows:
        if coeff and src in cells and dst in cells:
            a = q.arrow(graph.vertex[src], graph.vertex[dst])
            maps[a][pos[dst], pos[src]] += coeff
    return ModuleRep(q, dims, maps)


def format_array(shape: ArrayShape) -> str:
    """Rows of the array, one per line; empty rows are shown as '.'."""
    out = "\n".join(shape.text_rows())
    if shape.closure is not None:
        out += f"\n({shape.closure[0]},{shape.closure[1]})-closed"
    return out


# strings in type A


@dataclass(frozen=True)
class StringModule:
    """Non-revisiting walk on the A_n diagram: an interval with one direction per edge.

    ``down[k]`` is True when the edge (lo+k, lo+k+1) is traversed by the
    arrow lo+k -> lo+k+1, so that vertex lo+k sits above lo+k+1.
    """

    n: int
    lo: int
    hi: int
    down: tuple[bool, ...]

    def rows(self) -> dict[int, int]:
        level = {self.lo: 0}
        for k, d in enumerate(self.down):
            v = self.lo + k
            level[v + 1] = level[v] + (1 if d else -1)
        base = min(level.values())
        return {v: h - base for v, h in level.items()}

    def display(self) -> str:
        rows = self.rows()
        out = []
        for h in range(max(rows.values()) + 1):
            out.append(" ".join(str(v) for v in sorted(rows) if rows[v] == h))
        return " / ".join(out)

    def module(self, quiver: Quiver | None = None) -> ModuleRep:
        q = quiver or Quiver(CartanType("A", self.n))
        dims = {v: 1 for v in range(self.lo, self.hi + 1)}
        maps = {}
        for k, d in enumerate(self.down):
            v = self.lo + k
            a = q.arrow(v, v + 1) if d else q.arrow(v + 1, v)
            maps[a] = fmpq_mat(1, 1, [1])
        return ModuleRep(q, dims, maps)


def string_modules(n: int) -> list[StringModule]:
    out = []
    for lo in range(1, n + 1):
        for hi in range(lo, n + 1):
            for down in itertools.product((True, False), repeat=hi - lo):
                out.append(StringModule(n, lo, hi, down))
    return out


def string_from_rows(n: int, rows: dict[int, int]) -> StringModule:
    """String module from the display row of each vertex (row 0 on top)."""
    vs = sorted(rows)
    if vs != list(range(vs[0], vs[-1] + 1)):
        raise ValueError("support is not an interval")
    down = []
    for v in vs[:-1]:
        diff = rows[v + 1] - rows[v]
        if abs(diff) != 1:
            raise ValueError("neighbouring vertices must sit in adjacent rows")
        down.append(diff == 1)
    return StringModule(n, vs[0], vs[-1], tuple(down))


# subfactors


def thin_submodules(M: ModuleRep) -> list[dict[int, fmpq_mat]]:
    """All submodules of a module whose vertex spaces have dimension <= 1."""
    if any(d > 1 for d in M.dims):
        raise ValueError("module is not thin")
    support = [v for v in M.vertices if M.dim_at(v)]
    edges = [(a.source, a.target) for a in M.quiver.arrows
             if M.dim_at(a.source) and M.dim_at(a.target) and not la.is_zero(M.maps[a])]
    out = []
    for bits in itertools.product((0, 1), repeat=len(support)):
        chosen = {v for v, b in zip(support, bits) if b}
        if all(t in chosen for s, t in edges if s in chosen):
            out.append({v: (la.identity(1) if v in chosen else fmpq_mat(0, M.dim_at(v)))
                        for v in M.vertices})
    return out


def _has_surjection(B: ModuleRep, A: ModuleRep, tries: int = 32) -> bool:
    hs = hom(B, A)
    if not hs:
        return False
    import random
    rng = random.Random(1)
    for h in hs:
        if h.is_surjective():
            return True
    for _ in range(tries):
        c = [rng.randint(-5, 5) for _ in hs]
        total = None
        for h, x in zip(hs, c):
            if x:
                total = h.scale(x) if total is None else total + h.scale(x)
        if total is not None and total.is_surjective():
            return True
    return False


def _has_injection(A: ModuleRep, B: ModuleRep, tries: int = 32) -> bool:
    hs = hom(A, B)
    if not hs:
        return False
    import random
    rng = random.Random(2)
    for h in hs:
        if h.is_injective():
            return True
    for _ in range(tries):
        c = [rng.randint(-5, 5) for _ in hs]
        total = None
        for h, x in zip(hs, c):
            if x:
                total = h.scale(x) if total is None else total + h.scale(x)
        if total is not None and total.is_injective():
            return True
    return False


def is_subfactor(A: ModuleRep, B: ModuleRep) -> bool:
    """True when A is isomorphic to U/V for submodules V <= U of B.

    Quotients and submodules of B are found through Hom.  For thin B the
    remaining cases are settled by listing every submodule; otherwise an
    undecided search raises UndecidedIsomorphism.
    """
    if any(a > b for a, b in zip(A.dims, B.dims)):
        return False
    if A.dim == 0:
        return True
    if _has_surjection(B, A) or _has_injection(A, B):
        return True
    if any(d > 1 for d in B.dims):
        raise UndecidedIsomorphism("subfactor search is only complete for thin modules")
    subs = thin_submodules(B)
    for U in subs:
        for V in subs:
            if not all(la.contains(U[v], V[v]) for v in B.vertices):
                continue
            dims = tuple(U[v].nrows() - V[v].nrows() for v in B.vertices)
            if dims != A.dims:
                continue
            if is_isomorphic(subquotient(B, U, V), A):
                return True
    return False
