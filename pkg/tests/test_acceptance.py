"""Acceptance criteria 1-14, one PASS/FAIL line each in the terminal summary."""

from __future__ import annotations

import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

from weylpi import weyl as weyl_mod
from weylpi.combinatorics import array_module, jw_array, string_from_rows
from weylpi.ideals import ideal_table
from weylpi.layers import StoneReductionError, layer_catalog, reduce_stone_to_simple
from weylpi.modules import end_dim, euler_form, ext1_dim, hom_dim, is_isomorphic, loewy_label
from weylpi.verify import (ideal_containment_mismatches, verify_anti_isomorphism, verify_arrays,
                           verify_forcing_iso, verify_forcing_oracle, verify_labelling,
                           verify_layer_brick_stone, verify_mizuno, verify_polygon_config,
                           verify_subfactor_counterexample, verify_tors_generation)
from weylpi.weyl import CartanType, WeylElement, count_jirr, weak_order

DATA = Path(__file__).parent / "data"
A2, A3, A4, A5 = (CartanType("A", n) for n in (2, 3, 4, 5))
D4, D5 = CartanType("D", 4), CartanType("D", 5)


def _ok(result):
    assert result.ok, result.to_json()
    return result


# 1


def test_criterion_01_join_irreducible_counts(criterion):
    with criterion(1) as info:
        weyl_mod._GROUPS.clear()
        t = time.perf_counter()
        expected = {A2: 4, A3: 11, A4: 26, A5: 57, D4: 44, D5: 157}
        counts = {ct: count_jirr(ct) for ct in expected}
        elapsed = time.perf_counter() - t
        for ct, total in expected.items():
            assert counts[ct]["total"] == counts[ct]["closed_form"] == total
            assert counts[ct]["per_type"] == counts[ct]["per_type_closed_form"]
        assert counts[A3]["per_type"] == {1: 3, 2: 5, 3: 3}
        assert counts[D4]["per_type"] == {-1: 7, 1: 7, 2: 23, 3: 7}
        # the per-type windows are the ones in the listed D4 arrays
        listing = json.loads((DATA / "d4_jirr_arrays.json").read_text())
        for key, entries in listing.items():
            if key.startswith("type"):
                for win in entries:
                    w = WeylElement(D4, tuple(int(x) for x in win.split(",")))
                    assert w.right_descents() == (int(key.split()[1]),)
        assert elapsed < 1.0
        info["detail"] = f"{elapsed:.2f} s"


# 2


def test_criterion_02_ideal_independent_of_reduced_word(criterion):
    with criterion(2) as info:
        t = time.perf_counter()
        words = {}
        for ct in (A2, A3):
            r = _ok(verify_mizuno(ct, all_words=True))
            words[str(ct)] = r.details["words"]
        for ct in (A4, D4):
            r = _ok(verify_mizuno(ct, samples=200, all_words=False))
            words[str(ct)] = r.details["words"]
        elapsed = time.perf_counter() - t
        assert elapsed < 120
        info["detail"] = f"words {words}, {elapsed:.1f} s"


# 3


@pytest.mark.xfail(strict=True, reason="ideal containment is weaker than weak order in A3; "
                                        "the order is recovered through Fac, see criterion 3 [Fac]")
def test_criterion_03_order_equals_ideal_containment_a3_literal(criterion):
    with criterion(3, "A3 containment, literal") as info:
        bad = ideal_containment_mismatches(A3)
        info["detail"] = f"{len(bad)} ordered pairs with I(v) >= I(w) but v not <= w"
        assert not bad


def test_criterion_03_order_equals_fac_inclusion_a3(criterion):
    with criterion(3, "A3 Fac I(v) >= Fac I(w), all pairs") as info:
        r = _ok(verify_anti_isomorphism(A3, all_pairs=True))
        # v <= w still forces I(v) >= I(w); the check above fails on the converse only
        info["detail"] = f"{r.details['pairs']} ordered pairs"


def test_criterion_03_cover_pairs_d4(criterion):
    with criterion(3, "D4 cover pairs") as info:
        r = _ok(verify_anti_isomorphism(D4, all_pairs=False))
        info["detail"] = f"{r.details['pairs']} covers, containment and Fac"


# 4


def _parse_rows(label):
    rows = {}
    for r, row in enumerate(label.split(";")):
        for tok in row.split("&"):
            if tok:
                rows[int(tok)] = r
    return rows


def test_criterion_04_layer_label_goldens(criterion):
    with criterion(4) as info:
        t2 = ideal_table(A2)
        w = lambda *word: WeylElement.from_word(A2, word)  # noqa: E731
        golden = {(w(2), w()): "2", (w(2, 1), w(2)): "1/2", (w(2, 1, 2), w(2, 1)): "1",
                  (w(1), w()): "1", (w(1, 2), w(1)): "2/1", (w(1, 2, 1), w(1, 2)): "2"}
        assert len(weak_order(A2).arrows) == len(golden)
        for (up, low), label in golden.items():
            assert loewy_label(t2.layer(up, low)) == label
        data = json.loads((DATA / "a3_layer_labels.json").read_text())
        t3 = ideal_table(A3)
        node = {k: WeylElement(A3, tuple(int(c) for c in v)) for k, v in data["nodes"].items()}
        for p, q, label in data["arrows"]:
            expected = string_from_rows(3, _parse_rows(label)).module(t3.alg.quiver)
            assert is_isomorphic(t3.layer(node[q], node[p]), expected), (p, q, label)
        info["detail"] = f"A2 6 arrows, A3 {len(data['arrows'])} arrows"


# 5


def test_criterion_05_layers_are_bricks_and_stones(criterion):
    with criterion(5) as info:
        seen = {}
        for ct in (A2, A3, A4, D4):
            r = _ok(verify_layer_brick_stone(ct))
            seen[str(ct)] = r.details["layers"]
            if ct.family == "A":
                assert r.details["strings"] == r.details["layers"]
        info["detail"] = f"layers {seen}"


# 6


def test_criterion_06_arrow_layer_is_label_layer(criterion):
    with criterion(6) as info:
        t = time.perf_counter()
        _ok(verify_labelling(A3))
        r = _ok(verify_labelling(D4))
        elapsed = time.perf_counter() - t
        assert elapsed < 300
        info["detail"] = f"D4 {r.details['arrows']} arrows, {elapsed:.1f} s"


# 7


def test_criterion_07_forcing_order_is_doubleton_order(criterion):
    with criterion(7) as info:
        rel = {}
        for ct in (A2, A3, D4):
            r = _ok(verify_forcing_iso(ct))
            rel[str(ct)] = r.details["relations"]
        cat = layer_catalog(A3)
        P = cat.doubleton_order()
        assert P.hasse() == weak_order(A3).forcing_poset().hasse()
        assert len(P.elements) == 11
        maximal = [cat.layer(j) for j in P.maximal()]
        minimal = [cat.layer(j) for j in P.minimal()]
        assert sorted(loewy_label(M) for M in maximal) == ["1", "2", "3"]
        assert len(minimal) == 4
        assert all(M.dims == (1, 1, 1) for M in minimal)
        info["detail"] = f"relations {rel}, A3 Hasse {len(P.hasse())} arrows"


# 8


def test_criterion_08_d4_subfactor_counterexample(criterion):
    with criterion(8) as info:
        r = _ok(verify_subfactor_counterexample(D4))
        assert r.details["subfactor"] and not r.details["comparable"]
        info["detail"] = f"{r.details['small']} vs {r.details['big']}"


# 9


def test_criterion_09_arrays(criterion):
    with criterion(9) as info:
        total = 0
        for ct in (A2, A3, A4, D4):
            r = _ok(verify_arrays(ct))
            total += r.details["jirr"]
        worked = [
            (A5, (3, 5, 1, 2, 4, 6), "2 1 / 3 2 / 4 / .", None),
            (CartanType("D", 6), (5, -3, -1, 2, 4, 6), "1 / 2 -1 / 3 2 / 4 / .", None),
            (CartanType("D", 6), (-3, 4, -5, 1, 2, 6), "2 1/-1 -2 -3 -4 / 3 2 1 / 4 3 2 / .", (0, 1)),
            (CartanType("D", 6), (3, 4, -5, -2, 1, 6), "2 1/-1 -2 -3 -4 / 3 2 1/-1 / 4 3 2 1 / .", (1, 0)),
        ]
        for ct, window, text, closure in worked:
            shape = jw_array(WeylElement(ct, window))
            assert str(shape) == text
            assert shape.closure == closure
        # the A5 example is also checked against the algebra
        t5 = ideal_table(A5)
        w = WeylElement(A5, (3, 5, 1, 2, 4, 6))
        assert is_isomorphic(array_module(jw_array(w), t5.alg.quiver), t5.jmap(w))
        info["detail"] = f"{total} join-irreducibles, 4 worked arrays"


# 10


def test_criterion_10_torsion_class_generated_by_incoming_layers(criterion):
    with criterion(10) as info:
        for ct in (A3, D4):
            r = _ok(verify_tors_generation(ct))
            assert r.details["elements"] == ct.order
        info["detail"] = "A3 24 and D4 192 elements"


# 11


def test_criterion_11_polygon_labels(criterion):
    with criterion(11) as info:
        shapes = {}
        for ct in (A3, D4):
            r = _ok(verify_polygon_config(ct))
            shapes[str(ct)] = r.details
        assert shapes["A3"] == {"square": 6, "hexagon": 8}
        assert shapes["D4"] == {"square": 144, "hexagon": 96}
        info["detail"] = str(shapes)


# 12


def test_criterion_12_closure_and_polygon_forcing_agree(criterion):
    with criterion(12) as info:
        rel = {}
        for ct in (A2, A3):
            r = _ok(verify_forcing_oracle(ct))
            rel[str(ct)] = r.details["relations"]
        info["detail"] = f"relations {rel}"


# 13


def test_criterion_13_property_suite(criterion):
    with criterion(13) as info:
        layers = steps = 0
        for ct in (A2, A3, D4):
            cat = layer_catalog(ct)
            for M in cat.layers:
                assert ext1_dim(M, M) == 2 * end_dim(M) - euler_form(M)
                try:
                    seq, S = reduce_stone_to_simple(M, ct.longest_length)
                except StoneReductionError as exc:
                    raise AssertionError(str(exc)) from exc
                assert S.dim == 1
                steps = max(steps, len(seq))
                layers += 1
            for d in cat.doubletons:
                X, Y = cat.layer(d.x), cat.layer(d.y)
                assert hom_dim(X, Y) == 0 and hom_dim(Y, X) == 0
        info["detail"] = f"{layers} layers, longest reduction {steps} steps"


# 14


def _cold_verify(ct):
    t = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "weylpi.cli", "verify", ct.family, str(ct.rank)],
                          capture_output=True, text=True, check=False)
    elapsed = time.perf_counter() - t
    report = json.loads(proc.stdout)
    return proc.returncode, report, elapsed


def test_criterion_14_default_suite_runtime(criterion):
    with criterion(14, "A2, A3, D4") as info:
        total = 0.0
        for ct in (A2, A3, D4):
            rc, report, elapsed = _cold_verify(ct)
            assert rc == 0, [r for r in report["results"] if r["status"] != "pass"]
            total += elapsed
        assert total < 600
        info["detail"] = f"{total:.1f} s in fresh processes"


@pytest.mark.a4
def test_criterion_14_a4_suite_runtime(criterion):
    with criterion(14, "A4 opt-in") as info:
        rc, report, elapsed = _cold_verify(A4)
        assert rc == 0, [r for r in report["results"] if r["status"] != "pass"]
        assert elapsed < 1800
        info["detail"] = f"{elapsed:.1f} s"
