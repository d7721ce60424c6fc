"""Two-sided ideals I(w) of Pi and the modules cut out by them.

I_i = Pi (1 - e_i) Pi and I(w) = I_{i_1} ... I_{i_k} for a reduced word.
For a left submodule N of Pi, the product I_i N keeps every vertex block
e_j N with j != i and replaces the block at i by the sum of a.N over the
arrows a ending at i; so one letter costs one small row reduction.

Ideals are stored per vertex block e_v Pi as echelon row bases in the
algebra's local coordinates.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from flint import fmpq_mat

from . import linalg as la
from .algebra import PiAlgebra, pi_algebra
from .modules import ModuleRep, regular_module, subquotient
from .weyl import CartanType, WeylElement, WeylGroup, weyl_group

__all__ = [
    "Ideal",
    "IdealTable",
    "NonReducedWord",
    "ideal_apply",
    "ideal_of",
    "ideal_table",
]

CACHE_ENV = "WEYLPI_CACHE_DIR"
CACHE_VERSION = 1


class NonReducedWord(ValueError):
    pass


@dataclass(frozen=True)
class Ideal:
    """A left submodule of Pi given by its vertex blocks."""

    blocks: tuple[fmpq_mat, ...]

    @property
    def dim(self) -> int:
        return sum(b.nrows() for b in self.blocks)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ideal) and all(
            a.nrows() == b.nrows() and a == b for a, b in zip(self.blocks, other.blocks))

    def __hash__(self) -> int:
        return hash(tuple(b.nrows() for b in self.blocks))

    def contains(self, other: "Ideal") -> bool:
        return all(la.contains(a, b) for a, b in zip(self.blocks, other.blocks))

    def block(self, alg: PiAlgebra, v: int) -> fmpq_mat:
        return self.blocks[alg.quiver.vpos[v]]

    def source_part(self, alg: PiAlgebra, s: int) -> dict[int, fmpq_mat]:
        """I e_s as echelon rows per vertex (rows are homogeneous in the source)."""
        out = {}
        for v in alg.quiver.vertices:
            blk = self.block(alg, v)
            mask = set(alg.source_mask(v, s))
            keep = []
            for r, p in enumerate(la.pivots(blk)):
                if p in mask:
                    keep.append(r)
            out[v] = la.select_rows(blk, keep)
        return out

    def to_json(self, alg: PiAlgebra) -> dict:
        vecs = []
        for v, blk in zip(alg.quiver.vertices, self.blocks):
            for row in la.rows_of(blk):
                entries = {}
                deg = None
                for k, x in enumerate(row):
                    if x:
                        g = alg.block[v][k]
                        entries[str(g)] = str(x)
                        deg = alg.basis[g].degree
                vecs.append({"degree": deg, "entries": entries})
        return {"dim_pi": alg.dim, "dim": self.dim, "vectors": vecs}

    @classmethod
    def from_json(cls, alg: PiAlgebra, data: dict) -> "Ideal":
        rows: dict[int, list[list]] = {v: [] for v in alg.quiver.vertices}
        for vec in data["vectors"]:
            ent = {int(g): x for g, x in vec["entries"].items()}
            v = alg.basis[next(iter(ent))].target
            row = [0] * len(alg.block[v])
            for g, x in ent.items():
                row[alg.local[g]] = la.from_fraction(x)
            rows[v].append(row)
        return cls(tuple(la.rowspace(la.from_rows(rows[v], len(alg.block[v])))
                         if rows[v] else fmpq_mat(0, len(alg.block[v]))
                         for v in alg.quiver.vertices))


def whole(alg: PiAlgebra) -> Ideal:
    return Ideal(tuple(la.identity(len(alg.block[v])) for v in alg.quiver.vertices))


def ideal_apply(alg: PiAlgebra, i: int, N: Ideal) -> Ideal:
    """I_i N for a left submodule N of Pi."""
    q = alg.quiver
    pos = q.vpos[i]
    parts = [N.blocks[q.vpos[a.source]] * alg.left_blocks[a] for a in q.in_arrows[i]]
    new = la.rowspace(la.vstack(parts, len(alg.block[i])))
    blocks = list(N.blocks)
    blocks[pos] = new
    return Ideal(tuple(blocks))


def ideal_of(alg: PiAlgebra, word: Sequence[int]) -> Ideal:
    """I_{i_1} ... I_{i_k} for the word (i_1, ..., i_k).

    Raises NonReducedWord when some factor fails to shrink the ideal, which
    happens exactly when the word is not reduced.
    """
    cur = whole(alg)
    for i in reversed(word):
        nxt = ideal_apply(alg, i, cur)
        if nxt.dim >= cur.dim:
            raise NonReducedWord(f"word {tuple(word)} is not reduced")
        cur = nxt
    return cur


class IdealTable:
    """Memoised I(w) for every element of a Weyl group.

    Filled in order of length using I(s_i u) = I_i I(u).
    """

    def __init__(self, ct: CartanType, alg: PiAlgebra | None = None, group: WeylGroup | None = None,
                 use_cache: bool = True):
        self.ctype = ct
        self.alg = alg or pi_algebra(ct)
        self.group = group or weyl_group(ct)
        self._ideals: list[Ideal | None] = [None] * len(self.group)
        self._layers: dict[tuple[int, int], ModuleRep] = {}
        if use_cache and not self._load():
            self._fill()
            self._save()
        elif not use_cache:
            self._fill()

    def _fill(self) -> None:
        g = self.group
        self._ideals[0] = whole(self.alg)
        for k in range(1, len(g)):
            w = g.elements[k]
            i = w.left_descents()[0]
            prev = self._ideals[g.left[k][i]]
            self._ideals[k] = ideal_apply(self.alg, i, prev)

    def _cache_path(self) -> Path | None:
        root = os.environ.get(CACHE_ENV)
        if not root:
            return None
        return Path(root) / f"ideals-{self.ctype}-v{CACHE_VERSION}.json"

    def _load(self) -> bool:
        path = self._cache_path()
        if path is None or not path.exists():
            return False
        data = json.loads(path.read_text())
        if data.get("version") != CACHE_VERSION or data.get("dim_pi") != self.alg.dim:
            return False
        by_window = {tuple(e["window"]): e["ideal"] for e in data["elements"]}
        for k, w in enumerate(self.group.elements):
            if w.window not in by_window:
                return False
            self._ideals[k] = Ideal.from_json(self.alg, by_window[w.window])
        return True

    def _save(self) -> None:
        path = self._cache_path()
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        data = {
            "version": CACHE_VERSION,
            "type": str(self.ctype),
            "dim_pi": self.alg.dim,
            "elements": [{"window": list(w.window), "ideal": self._ideals[k].to_json(self.alg)}
                         for k, w in enumerate(self.group.elements)],
        }
        path.write_text(json.dumps(data))

    def _k(self, w: WeylElement | int) -> int:
        return w if isinstance(w, int) else self.group.index[w]

    def ideal(self, w: WeylElement | int) -> Ideal:
        return self._ideals[self._k(w)]

    def check_word_independence(self) -> list[tuple[int, int]]:
        """Pairs (element, left descent) where I_i I(s_i w) differs from I(w).

        Every reduced word of w starts with some left descent, so an empty
        result shows by induction on length that I(w) does not depend on the
        reduced word.
        """
        bad = []
        for k in range(1, len(self.group)):
            w = self.group.elements[k]
            for i in w.left_descents():
                u = self.group.left[k][i]
                if ideal_apply(self.alg, i, self._ideals[u]) != self._ideals[k]:
                    bad.append((k, i))
        return bad

    def layer(self, upper: WeylElement | int, lower: WeylElement | int) -> ModuleRep:
        """I(lower) e_i / I(upper) e_i for the Hasse arrow upper = lower s_i -> lower."""
        ku, kl = self._k(upper), self._k(lower)
        key = (ku, kl)
        m = self._layers.get(key)
        if m is not None:
            return m
        g = self.group
        i = None
        for s in g.simple_indices:
            if g.right[kl][s] == ku:
                i = s
        if i is None or g.lengths[ku] != g.lengths[kl] + 1:
            raise ValueError("not a Hasse arrow")
        V = self._ideals[kl].source_part(self.alg, i)
        U = self._ideals[ku].source_part(self.alg, i)
        m = subquotient(regular_module(self.alg), V, U)
        self._layers[key] = m
        return m

    def jmap(self, j: WeylElement | int) -> ModuleRep:
        """(Pi / I(j)) e_i for a join-irreducible j with j_* = j s_i."""
        k = self._k(j)
        w = self.group.elements[k]
        (i,) = w.right_descents()
        upper = {v: la.identity(len(self.alg.block[v])) for v in self.alg.quiver.vertices}
        P = {v: la.select_rows(upper[v], self.alg.source_mask(v, i)) for v in upper}
        U = self._ideals[k].source_part(self.alg, i)
        return subquotient(regular_module(self.alg), P, U)

    def mmap(self, m: WeylElement | int) -> ModuleRep:
        """I(m) e_i for a meet-irreducible m with m^* = m s_i."""
        k = self._k(m)
        w = self.group.elements[k]
        asc = [s for s in self.group.simple_indices if not w.has_right_descent(s)]
        (i,) = asc
        V = self._ideals[k].source_part(self.alg, i)
        return subquotient(regular_module(self.alg), V)

    def ideal_module(self, w: WeylElement | int) -> ModuleRep:
        """I(w) as a left module."""
        k = self._k(w)
        upper = dict(zip(self.alg.quiver.vertices, self._ideals[k].blocks))
        return subquotient(regular_module(self.alg), upper)


_TABLES: dict[CartanType, IdealTable] = {}


def ideal_table(ct: CartanType) -> IdealTable:
    t = _TABLES.get(ct)
    if t is None:
        t = IdealTable(ct)
        _TABLES[ct] = t
    return t
