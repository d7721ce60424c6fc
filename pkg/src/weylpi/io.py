"""Stable text, JSON, CSV and DOT renderings of lattices, posets, arrays and reports.

Output is sorted by element index so that repeated runs give identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Mapping, Sequence

from .combinatorics import FUSED, ArrayShape
from .lattice import FiniteLattice, ForcingPoset

__all__ = [
    "dumps_json",
    "lattice_to_dot",
    "lattice_to_json",
    "lattice_to_text",
    "poset_to_dot",
    "poset_to_json",
    "poset_to_text",
    "arrays_to_csv",
    "arrays_to_json",
    "arrays_to_text",
    "window_name",
]


def dumps_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


def window_name(w) -> str:
    """Compact name of a Weyl element: its window, comma separated."""
    return "[" + ",".join(str(x) for x in w.window) + "]"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def lattice_to_dot(L: FiniteLattice, names: Sequence[str],
                   labels: Mapping[tuple[int, int], str] | None = None, title: str = "weak") -> str:
    """Hasse quiver with arrows from the larger to the smaller element."""
    out = [f"digraph {_quote(title)} {{", "  rankdir=BT;"]
    for x in range(L.n):
        out.append(f"  n{x} [label={_quote(names[x])}];")
    for u, l in L.arrows:
        attr = f" [label={_quote(labels[(u, l)])}]" if labels else ""
        out.append(f"  n{u} -> n{l}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"


def lattice_to_json(L: FiniteLattice, names: Sequence[str],
                    labels: Mapping[tuple[int, int], str] | None = None) -> dict:
    arrows = []
    for u, l in L.arrows:
        item = {"upper": u, "lower": l}
        if labels:
            item["label"] = labels[(u, l)]
        arrows.append(item)
    return {
        "nodes": [{"id": x, "name": names[x], "rank": L.rank[x]} for x in range(L.n)],
        "arrows": arrows,
    }


def lattice_to_text(L: FiniteLattice, names: Sequence[str],
                    labels: Mapping[tuple[int, int], str] | None = None) -> str:
    out = []
    for u, l in L.arrows:
        line = f"{names[u]} -> {names[l]}"
        if labels:
            line += f"  {labels[(u, l)]}"
        out.append(line)
    return "\n".join(out) + "\n"


def poset_to_dot(P: ForcingPoset, names: Mapping[int, str], title: str = "forcing") -> str:
    """Hasse quiver of the poset, arrows from larger to smaller."""
    out = [f"digraph {_quote(title)} {{", "  rankdir=BT;"]
    for x in P.elements:
        out.append(f"  n{x} [label={_quote(names[x])}];")
    for u, l in P.hasse():
        out.append(f"  n{u} -> n{l};")
    out.append("}")
    return "\n".join(out) + "\n"


def poset_to_json(P: ForcingPoset, names: Mapping[int, str]) -> dict:
    return {
        "nodes": [{"id": x, "name": names[x]} for x in P.elements],
        "hasse": [{"upper": u, "lower": l} for u, l in P.hasse()],
        "relations": [{"lower": a, "upper": b} for a, b in sorted(P.relations())],
    }


def poset_to_text(P: ForcingPoset, names: Mapping[int, str]) -> str:
    return "".join(f"{names[u]} > {names[l]}\n" for u, l in P.hasse())


def _symbol(s) -> str:
    return "1/-1" if s == FUSED else str(s)


def arrays_to_csv(items: Iterable[tuple[str, ArrayShape]]) -> str:
    """One line per cell: element, column type, closure, row, column, symbol."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["element", "type", "closure", "row", "col", "symbol"])
    for name, shape in items:
        closure = "" if shape.closure is None else f"({shape.closure[0]},{shape.closure[1]})"
        for r, row in enumerate(shape.rows):
            for c, s in enumerate(row):
                w.writerow([name, shape.ell, closure, r, c, _symbol(s)])
    return buf.getvalue()


def arrays_to_json(items: Iterable[tuple[str, ArrayShape]]) -> list[dict]:
    out = []
    for name, shape in items:
        out.append({
            "element": name,
            "type": shape.ell,
            "closure": list(shape.closure) if shape.closure else None,
            "rows": [[_symbol(s) for s in row] for row in shape.rows],
        })
    return out


def _box(shape: ArrayShape) -> list[str]:
    rows = [[_symbol(s) for s in row] for row in shape.rows]
    width = max((len(x) for row in rows for x in row), default=1)
    ncols = max((len(row) for row in rows), default=0)
    rule = "+" + "+".join("-" * (width + 2) for _ in range(max(ncols, 1))) + "+"
    out = [rule]
    for row in rows:
        cells = [x.rjust(width) for x in row] + [" " * width] * (ncols - len(row))
        out.append("| " + " | ".join(cells) + " |" if cells else "| " + " " * width + " |")
        out.append(rule)
    return out


def arrays_to_text(items: Iterable[tuple[str, ArrayShape]]) -> str:
    """Each array as a box of cells under a header line."""
    out = []
    for name, shape in items:
        head = f"J({name})  type {shape.ell}"
        if shape.closure is not None:
            head += f"  ({shape.closure[0]},{shape.closure[1]})-closed"
        out.append(head)
        out.extend(_box(shape))
        out.append("")
    return "\n".join(out)
