from __future__ import annotations

import pytest

from weylpi.verify import (SUITES, ideal_containment_mismatches, run_suite, verify_anti_isomorphism,
                           verify_bijections, verify_duality, verify_stone_reduction)
from weylpi.weyl import CartanType

A2, A3 = CartanType("A", 2), CartanType("A", 3)


def test_full_suite_passes_for_a2():
    results = run_suite(A2)
    assert [r.check for r in results] == [f(A2).check for f in SUITES["all"]
                                          if f.__name__ != "verify_subfactor_counterexample"]
    assert all(r.status == "pass" for r in results)


@pytest.mark.parametrize("check", [verify_bijections, verify_duality, verify_stone_reduction])
def test_layer_checks_pass_for_a3(check):
    r = check(A3)
    assert r.ok, r.to_json()


def test_containment_mismatches_are_counted_against_order():
    assert len(ideal_containment_mismatches(A2)) == 2
    assert len(ideal_containment_mismatches(A3)) == 62
    r = verify_anti_isomorphism(A3)
    assert r.details["containment_without_order"] == 62


def test_stone_reduction_details_report_bound():
    r = verify_stone_reduction(A3)
    assert r.details == {"layers": 11, "longest": 3, "bound": 6}
