"""Weyl groups of type A and D acting on signed windows.

Type A_n elements are permutations of 1..n+1 written as windows
``[w(1), ..., w(n+1)]``; type D_n elements are signed windows of length n
with an even number of negative entries.  Products compose as maps,
``(uv)(i) = u(v(i))``, and right multiplication by a simple reflection acts on
positions.  For D_n the simple reflections are indexed by -1, 1, ..., n-1, where
``s_{-1} = [-2, -1, 3, ..., n]``.

>>> w = WeylElement(CartanType("A", 3), (3, 1, 2, 4))
>>> w.length, w.right_descents()
(2, (2,))
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import TYPE_CHECKING, Iterator, Sequence

if TYPE_CHECKING:
    from .lattice import FiniteLattice

__all__ = [
    "CartanType",
    "WeylElement",
    "WeylGroup",
    "JirrType",
    "multiply",
    "length",
    "lower_covers",
    "upper_covers",
    "classify_jirr",
    "jirr_reduced_word",
    "count_jirr",
    "jirr_count_formula",
    "weyl_group",
    "weak_order",
]


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        if fam == "A" and self.rank >= 1:
            return
        if fam == "D" and self.rank >= 4:
            return
        if fam == "E" and self.rank == 6:
            return
        raise ValueError(f"unsupported Cartan type {self.family}{self.rank}")

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> "CartanType":
        text = text.strip()
        if rank is None:
            return cls(text[0], int(text[1:]))
        return cls(text, int(rank))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def simple_indices(self) -> tuple[int, ...]:
        n = self.rank
        if self.family == "D":
            return (-1,) + tuple(range(1, n))
        return tuple(range(1, n + 1))

    @property
    def window_size(self) -> int:
        if self.family == "A":
            return self.rank + 1
        if self.family == "D":
            return self.rank
        raise NotImplementedError("windows are only defined for types A and D")

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Dynkin edges (u, v); the x-arrow of the doubled quiver runs u -> v."""
        n = self.rank
        if self.family == "A":
            return tuple((i, i + 1) for i in range(1, n))
        if self.family == "D":
            return ((1, 2), (-1, 2)) + tuple((i, i + 1) for i in range(2, n - 1))
        return ((1, 3), (3, 4), (4, 5), (5, 6), (2, 4))

    @property
    def coxeter_number(self) -> int:
        if self.family == "A":
            return self.rank + 1
        if self.family == "D":
            return 2 * self.rank - 2
        return 12

    @property
    def order(self) -> int:
        n = self.rank
        if self.family == "A":
            out = 1
            for k in range(2, n + 2):
                out *= k
            return out
        if self.family == "D":
            out = 2 ** (n - 1)
            for k in range(2, n + 1):
                out *= k
            return out
        return 51840

    @property
    def longest_length(self) -> int:
        n = self.rank
        if self.family == "A":
            return n * (n + 1) // 2
        if self.family == "D":
            return n * (n - 1)
        return 36

    def _check_windows(self) -> None:
        if self.family not in ("A", "D"):
            raise NotImplementedError("Weyl group computations need type A or D")


def _validate_window(ct: CartanType, window: tuple[int, ...]) -> None:
    ct._check_windows()
    k = ct.window_size
    if len(window) != k:
        raise ValueError(f"window {list(window)} has length {len(window)}, expected {k}")
    if ct.family == "A":
        if sorted(window) != list(range(1, k + 1)):
            raise ValueError(f"{list(window)} is not a permutation of 1..{k}")
        return
    if sorted(abs(x) for x in window) != list(range(1, k + 1)):
        raise ValueError(f"{list(window)} is not a signed permutation of 1..{k}")
    if sum(1 for x in window if x < 0) % 2:
        raise ValueError(f"{list(window)} has an odd number of negative entries")


@dataclass(frozen=True)
class WeylElement:
    ctype: CartanType
    window: tuple[int, ...]
    _checked: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "window", tuple(int(x) for x in self.window))
        if self._checked:
            _validate_window(self.ctype, self.window)

    @classmethod
    def _raw(cls, ct: CartanType, window: tuple[int, ...]) -> "WeylElement":
        return cls(ct, window, False)

    @classmethod
    def identity(cls, ct: CartanType) -> "WeylElement":
        return cls._raw(ct, tuple(range(1, ct.window_size + 1)))

    @classmethod
    def simple(cls, ct: CartanType, i: int) -> "WeylElement":
        return cls.identity(ct).right_mul(i)

    @classmethod
    def longest(cls, ct: CartanType) -> "WeylElement":
        k = ct.window_size
        if ct.family == "A":
            return cls._raw(ct, tuple(range(k, 0, -1)))
        if k % 2 == 0:
            return cls._raw(ct, tuple(-i for i in range(1, k + 1)))
        return cls._raw(ct, (1,) + tuple(-i for i in range(2, k + 1)))

    @classmethod
    def from_word(cls, ct: CartanType, word: Sequence[int]) -> "WeylElement":
        w = cls.identity(ct)
        for i in word:
            w = w.right_mul(i)
        return w

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self.window) + "]"

    def __call__(self, i: int) -> int:
        if i < 0:
            return -self.window[-i - 1]
        return self.window[i - 1]

    def _check_index(self, i: int) -> None:
        if i not in self.ctype.simple_indices:
            raise ValueError(f"{i} is not a simple index of {self.ctype}")

    def right_mul(self, i: int) -> "WeylElement":
        """w s_i (acts on positions)."""
        self._check_index(i)
        w = list(self.window)
        if i == -1:
            w[0], w[1] = -w[1], -w[0]
        else:
            w[i - 1], w[i] = w[i], w[i - 1]
        return WeylElement._raw(self.ctype, tuple(w))

    def left_mul(self, i: int) -> "WeylElement":
        """s_i w (acts on values)."""
        self._check_index(i)
        if i == -1:
            table = {1: -2, 2: -1, -1: 2, -2: 1}
        else:
            table = {i: i + 1, i + 1: i, -i: -i - 1, -i - 1: -i}
        return WeylElement._raw(self.ctype, tuple(table.get(x, x) for x in self.window))

    def has_right_descent(self, i: int) -> bool:
        w = self.window
        if i == -1:
            return -w[0] > w[1]
        return w[i - 1] > w[i]

    def has_left_descent(self, i: int) -> bool:
        return self.inverse().has_right_descent(i)

    def right_descents(self) -> tuple[int, ...]:
        return tuple(i for i in self.ctype.simple_indices if self.has_right_descent(i))

    def left_descents(self) -> tuple[int, ...]:
        return self.inverse().right_descents()

    def inverse(self) -> "WeylElement":
        k = len(self.window)
        out = [0] * k
        for pos, val in enumerate(self.window, start=1):
            if val > 0:
                out[val - 1] = pos
            else:
                out[-val - 1] = -pos
        return WeylElement._raw(self.ctype, tuple(out))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return multiply(self, other)

    @cached_property
    def length(self) -> int:
        w = self.window
        k = len(w)
        inv = sum(1 for a in range(k) for b in range(a + 1, k) if w[a] > w[b])
        if self.ctype.family == "A":
            return inv
        return inv + sum(1 for a in range(k) for b in range(a + 1, k) if -w[a] > w[b])

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word, peeling the smallest right descent at each step."""
        word: list[int] = []
        w = self
        while True:
            d = w.right_descents()
            if not d:
                break
            word.append(d[0])
            w = w.right_mul(d[0])
        return tuple(reversed(word))

    def reduced_words(self) -> Iterator[tuple[int, ...]]:
        """Every reduced word (may be very many)."""
        d = self.right_descents()
        if not d:
            yield ()
            return
        for i in d:
            for word in self.right_mul(i).reduced_words():
                yield word + (i,)

    def lower_covers(self) -> list[tuple[int, "WeylElement"]]:
        return lower_covers(self)

    def upper_covers(self) -> list[tuple[int, "WeylElement"]]:
        return upper_covers(self)


def multiply(u: WeylElement, v: WeylElement) -> WeylElement:
    if u.ctype != v.ctype:
        raise ValueError("elements of different Weyl groups")
    return WeylElement._raw(u.ctype, tuple(u(x) for x in v.window))


def length(w: WeylElement) -> int:
    return w.length


def lower_covers(w: WeylElement) -> list[tuple[int, WeylElement]]:
    """Pairs (i, w s_i) with w s_i < w, in increasing index order."""
    return [(i, w.right_mul(i)) for i in w.ctype.simple_indices if w.has_right_descent(i)]


def upper_covers(w: WeylElement) -> list[tuple[int, WeylElement]]:
    return [(i, w.right_mul(i)) for i in w.ctype.simple_indices if not w.has_right_descent(i)]


@dataclass(frozen=True)
class JirrType:
    """Join-irreducible element together with its type (the unique descent)."""

    element: WeylElement
    type: int


def classify_jirr(w: WeylElement) -> JirrType | None:
    d = w.right_descents()
    if len(d) != 1:
        return None
    return JirrType(w, d[0])


def _run(a: int, b: int) -> list[int]:
    """s_a s_{a+1} ... s_b (empty when a > b)."""
    return list(range(a, b + 1))


def jirr_reduced_word(w: WeylElement) -> tuple[int, ...]:
    """Structured reduced word of a join-irreducible element.

    The word is assembled block by block from the window and then checked by
    evaluation; a failed check raises ``AssertionError``.
    """
    info = classify_jirr(w)
    if info is None:
        raise ValueError(f"{w} is not join-irreducible")
    ell = info.type
    i = (None,) + w.window  # 1-based
    blocks: list[list[int]] = []
    ct = w.ctype
    if ct.family == "A":
        n = ct.rank
        for m in range(n + 1, ell, -1):
            blocks.append(_run(i[m], m - 1))
    elif ell in (1, -1):
        n = ct.rank
        for m in range(n, 1, -1):
            if i[m] >= 2:
                blocks.append(_run(i[m], m - 1))
            else:
                blocks.append([(-1) ** m * ell] + _run(2, m - 1))
    else:
        n = ct.rank
        for m in range(n, ell, -1):
            j = i[m] + sum(1 for mp in range(m, n + 1) if abs(i[mp]) <= abs(i[m]))
            if j > 0:
                blocks.append(_run(i[m], m - 1))
            elif j == 0:
                eps = (-1) ** sum(1 for mp in range(m, n + 1) if i[mp] < 0)
                blocks.append([eps] + _run(2, m - 1))
            elif j == -1:
                blocks.append([-1, 1] + _run(2, m - 1))
            else:
                blocks.append(list(range(-j, 1, -1)) + [-1, 1] + _run(2, m - 1))
    word = tuple(s for b in blocks for s in b)
    check = WeylElement.from_word(ct, word)
    assert check == w and len(word) == w.length, (
        f"structured word {word} does not reduce to {w}"
    )
    return word


def jirr_count_formula(ct: CartanType, ell: int | None = None) -> int:
    n = ct.rank
    if ct.family == "A":
        if ell is None:
            return 2 ** (n + 1) - n - 2
        return comb(n + 1, ell) - 1
    if ct.family == "D":
        if ell is None:
            return 3 ** n - n * 2 ** (n - 1) - n - 1
        if ell in (1, -1):
            return 2 ** (n - 1) - 1
        return 2 ** (n - ell) * comb(n, ell) - 1
    raise NotImplementedError


def count_jirr(ct: CartanType) -> dict[str, object]:
    """Enumerated join-irreducible counts next to the closed forms."""
    g = weyl_group(ct)
    per: dict[int, int] = {i: 0 for i in ct.simple_indices}
    for w in g.elements:
        info = classify_jirr(w)
        if info is not None:
            per[info.type] += 1
    total = sum(per.values())
    return {
        "type": str(ct),
        "total": total,
        "closed_form": jirr_count_formula(ct),
        "per_type": per,
        "per_type_closed_form": {i: jirr_count_formula(ct, i) for i in ct.simple_indices},
    }


class WeylGroup:
    """All elements of a finite Weyl group, indexed by (length, window)."""

    def __init__(self, ct: CartanType, max_size: int | None = None):
        ct._check_windows()
        if max_size is not None and ct.order > max_size:
            raise MemoryError(f"|W({ct})| = {ct.order} exceeds the limit {max_size}")
        self.ctype = ct
        seen = {WeylElement.identity(ct)}
        queue = deque(seen)
        while queue:
            w = queue.popleft()
            for _, u in upper_covers(w):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        self.elements: list[WeylElement] = sorted(seen, key=lambda w: (w.length, w.window))
        self.index: dict[WeylElement, int] = {w: k for k, w in enumerate(self.elements)}
        self.simple_indices = ct.simple_indices
        self.right = [
            {i: self.index[w.right_mul(i)] for i in self.simple_indices} for w in self.elements
        ]
        self.left = [
            {i: self.index[w.left_mul(i)] for i in self.simple_indices} for w in self.elements
        ]
        self.lengths = [w.length for w in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[WeylElement]:
        return iter(self.elements)

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    @property
    def longest(self) -> WeylElement:
        return self.elements[-1]

    def element(self, window: Sequence[int]) -> WeylElement:
        return WeylElement(self.ctype, tuple(window))

    def covers(self) -> list[tuple[int, int, int]]:
        """Hasse arrows (upper, lower, i) of the right weak order, sorted."""
        out = []
        for k, w in enumerate(self.elements):
            for i in self.simple_indices:
                if w.has_right_descent(i):
                    out.append((k, self.right[k][i], i))
        out.sort()
        return out

    def join_irreducibles(self) -> list[JirrType]:
        out = []
        for w in self.elements:
            info = classify_jirr(w)
            if info is not None:
                out.append(info)
        return out

    def meet_irreducibles(self) -> list[JirrType]:
        out = []
        for w in self.elements:
            asc = [i for i in self.simple_indices if not w.has_right_descent(i)]
            if len(asc) == 1:
                out.append(JirrType(w, asc[0]))
        return out

    @cached_property
    def reduced_word_counts(self) -> list[int]:
        counts = [0] * len(self.elements)
        counts[0] = 1
        for k in range(1, len(self.elements)):
            w = self.elements[k]
            counts[k] = sum(counts[self.right[k][i]] for i in w.right_descents())
        return counts

    def sample_reduced_words(self, w: WeylElement, count: int, seed: int = 0) -> list[tuple[int, ...]]:
        """Up to ``count`` distinct reduced words of w, all of them when fewer exist."""
        k = self.index[w]
        total = self.reduced_word_counts[k]
        if total <= count:
            return sorted(w.reduced_words())
        rng = random.Random(seed)
        counts = self.reduced_word_counts
        found: set[tuple[int, ...]] = set()
        while len(found) < count:
            word: list[int] = []
            cur = k
            while cur != 0:
                el = self.elements[cur]
                desc = el.right_descents()
                weights = [counts[self.right[cur][i]] for i in desc]
                i = rng.choices(desc, weights=weights)[0]
                word.append(i)
                cur = self.right[cur][i]
            found.add(tuple(reversed(word)))
        return sorted(found)


_GROUPS: dict[CartanType, WeylGroup] = {}


def weyl_group(ct: CartanType, max_size: int | None = None) -> WeylGroup:
    g = _GROUPS.get(ct)
    if g is None:
        g = WeylGroup(ct, max_size=max_size)
        _GROUPS[ct] = g
    return g


_LATTICES: dict[CartanType, "FiniteLattice"] = {}


def weak_order(ct: CartanType, max_size: int | None = None):
    """Right weak order as a FiniteLattice whose payload is the elements."""
    from .lattice import build_lattice

    lat = _LATTICES.get(ct)
    if lat is None:
        g = weyl_group(ct, max_size=max_size)
        lat = build_lattice(len(g), [(u, l) for u, l, _ in g.covers()],
                            payload=g.elements, check=len(g) <= 1000)
        _LATTICES[ct] = lat
    return lat
