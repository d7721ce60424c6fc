"""Command line front end.

Exit codes: 0 success, 1 a verification check failed (the report is still
written), 2 bad usage, 3 the requested type is beyond the size guards.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import io as wio
from .algebra import expected_dimension
from .weyl import CartanType, weak_order

log = logging.getLogger("weylpi")

MAX_GROUP = 50000
MAX_PI = 500

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


class GuardError(Exception):
    pass


def _ctype(args) -> CartanType:
    family = args.type or args.type_pos
    rank = args.rank if args.rank is not None else args.rank_pos
    if family is None:
        raise UsageError("a Cartan type and rank are required, e.g. 'A 3' or --type A --rank 3")
    try:
        if rank is None:
            if len(family) < 2:
                raise UsageError("missing rank")
            return CartanType.parse(family)
        return CartanType(family, int(rank))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _guard(ct: CartanType, algebra: bool) -> None:
    if ct.order > MAX_GROUP:
        raise GuardError(f"|W({ct})| = {ct.order} exceeds {MAX_GROUP}")
    if algebra and expected_dimension(ct) > MAX_PI:
        raise GuardError(f"dim Pi({ct}) = {expected_dimension(ct)} exceeds {MAX_PI}")
    if ct.family == "E":
        raise UsageError("weak order computations support types A and D only")


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _names(L) -> list[str]:
    return [wio.window_name(w) for w in L.payload]


def _arrow_labels(L, kind: str | None) -> dict | None:
    if not kind or kind == "none":
        return None
    names = _names(L)
    if kind == "jirr":
        return {a: names[L.jlabel(a)] for a in L.arrows}
    if kind == "mirr":
        return {a: names[L.mlabel(a)] for a in L.arrows}
    if kind == "layer":
        from .layers import layer_catalog
        from .modules import loewy_label

        cat = layer_catalog(L.payload[0].ctype)
        by_j = {j: loewy_label(M) for j, M in zip(cat.jirrs, cat.layers)}
        return {a: by_j[L.jlabel(a)] for a in L.arrows}
    raise UsageError(f"unknown label kind {kind}")


def cmd_lattice(args) -> int:
    ct = _ctype(args)
    _guard(ct, algebra=args.labels == "layer")
    L = weak_order(ct)
    names = _names(L)
    labels = _arrow_labels(L, args.labels)
    fmt = args.format or "dot"
    if fmt == "dot":
        _emit(args, wio.lattice_to_dot(L, names, labels, title=f"weak order {ct}"))
    elif fmt == "json":
        _emit(args, wio.dumps_json(wio.lattice_to_json(L, names, labels)))
    elif fmt == "text":
        _emit(args, wio.lattice_to_text(L, names, labels))
    else:
        raise UsageError(f"lattice does not support format {fmt}")
    return EXIT_OK


def cmd_forcing(args) -> int:
    ct = _ctype(args)
    use_layers = args.labels == "layer" or args.doubleton
    _guard(ct, algebra=use_layers)
    L = weak_order(ct)
    if args.doubleton:
        from .layers import layer_catalog

        P = layer_catalog(ct).doubleton_order()
    else:
        P = L.forcing_poset()
    if args.labels == "layer":
        from .layers import layer_catalog
        from .modules import loewy_label

        cat = layer_catalog(ct)
        names = {j: loewy_label(M) for j, M in zip(cat.jirrs, cat.layers)}
    else:
        names = {j: wio.window_name(L.payload[j]) for j in P.elements}
    fmt = args.format or "dot"
    if fmt == "dot":
        _emit(args, wio.poset_to_dot(P, names, title=f"forcing order {ct}"))
    elif fmt == "json":
        _emit(args, wio.dumps_json(wio.poset_to_json(P, names)))
    elif fmt == "text":
        _emit(args, wio.poset_to_text(P, names))
    else:
        raise UsageError(f"forcing does not support format {fmt}")
    return EXIT_OK


def cmd_arrays(args) -> int:
    ct = _ctype(args)
    if ct.family not in ("A", "D"):
        raise UsageError("arrays exist for types A and D only")
    _guard(ct, algebra=False)
    from .combinatorics import jw_array
    from .weyl import weyl_group

    items = [(wio.window_name(info.element), jw_array(info.element))
             for info in weyl_group(ct).join_irreducibles()]
    fmt = args.format or "text"
    if fmt == "text":
        _emit(args, wio.arrays_to_text(items))
    elif fmt == "csv":
        _emit(args, wio.arrays_to_csv(items))
    elif fmt == "json":
        _emit(args, wio.dumps_json(wio.arrays_to_json(items)))
    else:
        raise UsageError(f"arrays does not support format {fmt}")
    return EXIT_OK


def cmd_verify(args) -> int:
    ct = _ctype(args)
    _guard(ct, algebra=True)
    from .layers import layer_catalog
    from .verify import SUITES, run_suite

    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite}; choose from {', '.join(sorted(SUITES))}")
    if args.threads > 1:
        # build shared tables once so worker threads only read them
        cat = layer_catalog(ct)
        cat.layers
        from .verify import verify_arrays, verify_subfactor_counterexample

        checks = [f for f in SUITES[args.suite]
                  if not (f is verify_subfactor_counterexample and ct != CartanType("D", 4))
                  and not (f is verify_arrays and ct.family not in ("A", "D"))]
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(lambda f: f(ct), checks))
    else:
        results = run_suite(ct, args.suite)
    report = {"type": ct.family, "rank": ct.rank, "suite": args.suite,
              "results": [r.to_json() for r in results]}
    _emit(args, wio.dumps_json(report))
    for r in results:
        log.info("%s %s %s %.0f ms", ct, r.check, r.status, r.elapsed_ms)
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def _parse_window(text: str) -> tuple[int, ...]:
    text = text.strip().strip("[]")
    if "," in text or " " in text.strip():
        return tuple(int(x) for x in text.replace(",", " ").split())
    return tuple(int(c) for c in text)


def cmd_module(args) -> int:
    ct = _ctype(args)
    _guard(ct, algebra=True)
    from .ideals import ideal_table
    from .modules import projective

    table = ideal_table(ct)
    g = table.group
    if args.what == "projective":
        if args.vertex is None:
            raise UsageError("--vertex is required for projective modules")
        M = projective(table.alg, args.vertex)
    else:
        if args.element is None:
            raise UsageError("--element is required")
        try:
            w = g.element(_parse_window(args.element))
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad element {args.element}: {exc}") from exc
        if args.what == "layer":
            desc = w.right_descents()
            if len(desc) != 1:
                raise UsageError("layer needs a join-irreducible element")
            M = table.layer(w, w.right_mul(desc[0]))
        elif args.what == "jmap":
            if len(w.right_descents()) != 1:
                raise UsageError("jmap needs a join-irreducible element")
            M = table.jmap(w)
        elif args.what == "mmap":
            if len(w.right_descents()) != len(ct.simple_indices) - 1:
                raise UsageError("mmap needs a meet-irreducible element")
            M = table.mmap(w)
        else:
            M = table.ideal_module(w)
    fmt = args.format or "json"
    if fmt == "json":
        _emit(args, wio.dumps_json(M.to_json()))
    elif fmt == "text":
        from .modules import loewy_label

        _emit(args, f"dims {dict(zip(M.vertices, M.dims))}\nloewy {loewy_label(M)}\n")
    else:
        raise UsageError(f"module does not support format {fmt}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("type_pos", nargs="?", metavar="TYPE", help="Cartan family A or D")
    common.add_argument("rank_pos", nargs="?", type=int, metavar="RANK")
    common.add_argument("--type", dest="type", help="Cartan family (alternative to TYPE)")
    common.add_argument("--rank", type=int, help="rank (alternative to RANK)")
    common.add_argument("--format", choices=["dot", "json", "csv", "text"])
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for isomorphism tests")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="weylpi", description="Weak order and preprojective algebra layers")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("lattice", parents=[common], help="Hasse quiver of weak order")
    s.add_argument("--labels", choices=["none", "jirr", "mirr", "layer"], default="none")
    s.set_defaults(func=cmd_lattice)
    s = sub.add_parser("forcing", parents=[common], help="forcing order on join-irreducibles")
    s.add_argument("--labels", choices=["none", "jirr", "layer"], default="jirr")
    s.add_argument("--doubleton", action="store_true", help="compute the doubleton extension order instead")
    s.set_defaults(func=cmd_forcing)
    s = sub.add_parser("arrays", parents=[common], help="array models of J(w)")
    s.set_defaults(func=cmd_arrays)
    s = sub.add_parser("verify", parents=[common], help="run verification checks")
    s.add_argument("--suite", default="all")
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("module", parents=[common], help="print a module as JSON")
    s.add_argument("--what", choices=["layer", "jmap", "mmap", "ideal", "projective"], default="layer")
    s.add_argument("--element", help="window such as 2134 or -2,-1,3,4")
    s.add_argument("--vertex", type=int)
    s.set_defaults(func=cmd_module)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    from .modules import set_iso_seed

    set_iso_seed(args.seed)
    if args.threads < 1:
        print("weylpi: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"weylpi: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardError as exc:
        print(f"weylpi: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
