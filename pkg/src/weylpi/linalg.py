"""Exact rational linear algebra on top of python-flint.

Vectors are rows.  A subspace is stored as the matrix of its reduced row
echelon basis (zero rows dropped), which makes equality of subspaces a plain
comparison of matrices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from flint import fmpq, fmpq_mat

__all__ = [
    "Mat",
    "zeros",
    "identity",
    "from_rows",
    "vstack",
    "hstack",
    "rows_of",
    "select_columns",
    "select_rows",
    "rowspace",
    "pivots",
    "rank",
    "nullspace",
    "contains",
    "intersect",
    "complement_rows",
    "Coordinates",
    "is_zero",
    "to_fraction",
    "from_fraction",
]

Mat = fmpq_mat


def zeros(r: int, c: int) -> fmpq_mat:
    return fmpq_mat(r, c)


def identity(n: int) -> fmpq_mat:
    m = fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def from_rows(rows: Sequence[Sequence], ncols: int | None = None) -> fmpq_mat:
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    flat = [x for row in rows for x in row]
    return fmpq_mat(len(rows), ncols, flat)


def vstack(mats: Iterable[fmpq_mat], ncols: int) -> fmpq_mat:
    entries: list = []
    r = 0
    for m in mats:
        if m.nrows() == 0:
            continue
        entries.extend(m.entries())
        r += m.nrows()
    return fmpq_mat(r, ncols, entries)


def hstack(mats: Sequence[fmpq_mat], nrows: int) -> fmpq_mat:
    widths = [m.ncols() for m in mats]
    out = fmpq_mat(nrows, sum(widths))
    off = 0
    for m, w in zip(mats, widths):
        for i in range(nrows):
            for j in range(w):
                x = m[i, j]
                if x:
                    out[i, off + j] = x
        off += w
    return out


def rows_of(m: fmpq_mat) -> list[list[fmpq]]:
    c = m.ncols()
    e = m.entries()
    return [e[i * c:(i + 1) * c] for i in range(m.nrows())]


def select_columns(m: fmpq_mat, cols: Sequence[int]) -> fmpq_mat:
    out = fmpq_mat(m.nrows(), len(cols))
    for i in range(m.nrows()):
        for k, j in enumerate(cols):
            x = m[i, j]
            if x:
                out[i, k] = x
    return out


def select_rows(m: fmpq_mat, rows: Sequence[int]) -> fmpq_mat:
    c = m.ncols()
    e = m.entries()
    flat: list = []
    for i in rows:
        flat.extend(e[i * c:(i + 1) * c])
    return fmpq_mat(len(rows), c, flat)


def rowspace(m: fmpq_mat) -> fmpq_mat:
    """Reduced echelon basis of the row space of ``m``."""
    if m.nrows() == 0:
        return m
    r, k = m.rref()
    c = m.ncols()
    return fmpq_mat(k, c, r.entries()[: k * c])


def pivots(echelon: fmpq_mat) -> list[int]:
    """Leading columns of an echelon matrix without zero rows."""
    c = echelon.ncols()
    e = echelon.entries()
    out = []
    for i in range(echelon.nrows()):
        row = e[i * c:(i + 1) * c]
        for j, x in enumerate(row):
            if x:
                out.append(j)
                break
    return out


def rank(m: fmpq_mat) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def nullspace(m: fmpq_mat) -> fmpq_mat:
    """Rows spanning {x : m x^T = 0}."""
    n = m.ncols()
    if m.nrows() == 0:
        return identity(n)
    r, k = m.rref()
    piv = pivots(fmpq_mat(k, n, r.entries()[: k * n]))
    pset = set(piv)
    free = [j for j in range(n) if j not in pset]
    out = fmpq_mat(len(free), n)
    for t, f in enumerate(free):
        out[t, f] = 1
        for i, p in enumerate(piv):
            x = r[i, f]
            if x:
                out[t, p] = -x
    return out


def is_zero(m: fmpq_mat) -> bool:
    return not any(m.entries())


def contains(space: fmpq_mat, vectors: fmpq_mat) -> bool:
    """True if every row of ``vectors`` lies in the row space ``space``."""
    if vectors.nrows() == 0:
        return True
    n = space.ncols()
    return rank(vstack([space, vectors], n)) == rank(space)


def intersect(a: fmpq_mat, b: fmpq_mat) -> fmpq_mat:
    n = a.ncols()
    if a.nrows() == 0 or b.nrows() == 0:
        return fmpq_mat(0, n)
    # x a = y b  <=>  [x, -y] [a; b] = 0
    stacked = vstack([a, -b], n)
    ker = nullspace(stacked.transpose())
    if ker.nrows() == 0:
        return fmpq_mat(0, n)
    coeff = select_columns(ker, list(range(a.nrows())))
    return rowspace(coeff * a)


def complement_rows(big: fmpq_mat, small: fmpq_mat) -> fmpq_mat:
    """Rows of ``rowspace(big)`` whose pivots are not pivots of ``small``.

    Both arguments must be echelon bases with ``small`` inside ``big``; the
    result together with ``small`` is a basis of ``big``.
    """
    sp = set(pivots(small))
    keep = [i for i, p in enumerate(pivots(big)) if p not in sp]
    return select_rows(big, keep)


class Coordinates:
    """Coordinates with respect to a fixed list of independent rows."""

    def __init__(self, basis: fmpq_mat):
        self.basis = basis
        self.k = basis.nrows()
        if self.k == 0:
            self.cols: list[int] = []
            self.inv = fmpq_mat(0, 0)
            return
        piv = pivots(rowspace(basis))
        if len(piv) != self.k:
            raise ValueError("basis rows are dependent")
        self.cols = piv
        self.inv = select_columns(basis, piv).inv()

    def __call__(self, vectors: fmpq_mat) -> fmpq_mat:
        """Coefficient rows c with c * basis = vectors (vectors assumed in span)."""
        if self.k == 0:
            return fmpq_mat(vectors.nrows(), 0)
        return select_columns(vectors, self.cols) * self.inv


def to_fraction(x: fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def from_fraction(x) -> fmpq:
    f = Fraction(x)
    return fmpq(f.numerator, f.denominator)
