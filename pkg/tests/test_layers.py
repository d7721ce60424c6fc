from __future__ import annotations

import pytest

from weylpi.layers import (StoneReductionError, ideal_quotient, layer_catalog, reduce_stone_to_simple,
                           right_quotient_dual)
from weylpi.modules import (dual, ext1_dim, extensions, hom_dim, is_brick, is_isomorphic, is_stone,
                            loewy_label)
from weylpi.verify import counterexample_modules
from weylpi.combinatorics import is_subfactor
from weylpi.weyl import CartanType, weyl_group

A2, A3, D4 = CartanType("A", 2), CartanType("A", 3), CartanType("D", 4)


@pytest.mark.parametrize("ct,count", [(A2, 4), (A3, 11), (D4, 44)])
def test_layers_are_pairwise_distinct_bricks_and_stones(ct, count):
    cat = layer_catalog(ct)
    assert len(cat.layers) == count
    for M in cat.layers:
        assert is_brick(M) and is_stone(M)
    for j, M in zip(cat.jirrs, cat.layers):
        assert cat.identify(M) == j


def test_a2_layers_are_simples_and_two_uniserials():
    labels = sorted(loewy_label(M) for M in layer_catalog(A2).layers)
    assert labels == ["1", "1/2", "2", "2/1"]


@pytest.mark.parametrize("ct,doubletons,relations", [(A2, 1, 4), (A3, 6, 28), (D4, 51, 322)])
def test_doubleton_counts_and_order_size(ct, doubletons, relations):
    cat = layer_catalog(ct)
    assert len(cat.doubletons) == doubletons
    assert len(cat.doubleton_order().relations()) == relations


def test_doubleton_extensions_are_the_recorded_layers():
    cat = layer_catalog(A3)
    for d in cat.doubletons:
        X, Y = cat.layer(d.x), cat.layer(d.y)
        assert ext1_dim(X, Y) == ext1_dim(Y, X) == 1
        assert hom_dim(X, Y) == hom_dim(Y, X) == 0
        (E,) = extensions(Y, X)
        assert is_isomorphic(E, cat.layer(d.xy))
        (F,) = extensions(X, Y)
        assert is_isomorphic(F, cat.layer(d.yx))


def test_a2_doubleton_is_the_two_simples():
    cat = layer_catalog(A2)
    (d,) = cat.doubletons
    assert {loewy_label(cat.layer(d.x)), loewy_label(cat.layer(d.y))} == {"1", "2"}
    assert {loewy_label(cat.layer(d.xy)), loewy_label(cat.layer(d.yx))} == {"1/2", "2/1"}


@pytest.mark.parametrize("ct,longest", [(A2, 1), (A3, 3), (D4, 8)])
def test_stone_reduction_reaches_a_simple(ct, longest):
    cat = layer_catalog(ct)
    steps = []
    for M in cat.layers:
        seq, S = reduce_stone_to_simple(M)
        assert S.dim == 1
        steps.append(len(seq))
    assert max(steps) == longest <= ct.longest_length


def test_stone_reduction_respects_step_budget():
    cat = layer_catalog(D4)
    big = max(cat.layers, key=lambda M: M.dim)
    with pytest.raises(StoneReductionError):
        reduce_stone_to_simple(big, max_steps=1)


def test_right_dual_of_quotient_is_quotient_of_shifted_ideals():
    cat = layer_catalog(A3)
    L = cat.lattice
    w0 = weyl_group(A3).longest
    for u, l in L.arrows:
        up, low = L.payload[u], L.payload[l]
        right = right_quotient_dual(cat.table, low, up)
        assert is_isomorphic(right, ideal_quotient(cat.table, up.inverse() * w0, low.inverse() * w0))
        twisted = dual(cat.arrow_layer((u, l)))
        assert is_isomorphic(twisted, ideal_quotient(cat.table, up * w0, low * w0))


def test_ideal_quotient_needs_containment():
    cat = layer_catalog(A3)
    g = cat.table.group
    with pytest.raises(ValueError):
        right_quotient_dual(cat.table, g.longest, g.identity)


def test_d4_counterexample_modules_are_layers_in_subfactor_relation():
    cat = layer_catalog(D4)
    small, big = counterexample_modules()
    a, b = cat.identify(small), cat.identify(big)
    assert a is not None and b is not None
    assert list(cat.element(a).window) == [1, 2, -4, -3]
    assert list(cat.element(b).window) == [-1, 4, -3, 2]
    assert is_subfactor(small, big)
    D = cat.doubleton_order()
    assert not D.leq(a, b) and not D.leq(b, a)
