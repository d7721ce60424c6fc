"""Small worked examples: products, labels, ideals and layers in ranks 2 and 3."""

from __future__ import annotations

from weylpi.algebra import pi_algebra
from weylpi.combinatorics import array_module, jw_array
from weylpi.ideals import ideal_apply, ideal_table, whole
from weylpi.layers import layer_catalog, reduce_stone_to_simple
from weylpi.lattice import build_lattice
from weylpi.modules import (end_dim, in_fac, is_brick, is_indecomposable, is_isomorphic,
                            is_tau_minus_rigid, loewy_label, projective, simple)
from weylpi.weyl import CartanType, WeylElement, jirr_reduced_word, multiply, weak_order

A2, A3, D4 = CartanType("A", 2), CartanType("A", 3), CartanType("D", 4)


def _idx(L, window):
    return L.index[WeylElement(L.payload[0].ctype, window)]


def _s(ct, i):
    return WeylElement.simple(ct, i)


def test_products_of_simple_reflections():
    assert multiply(_s(A3, 1), _s(A3, 2)).window == (2, 3, 1, 4)
    assert multiply(_s(D4, -1), _s(D4, 2)).window == (-2, 3, -1, 4)
    assert multiply(_s(D4, 2), _s(D4, -1)).window == (-3, -1, 2, 4)


def test_lengths_and_covers_of_small_elements():
    assert WeylElement(A2, (3, 1, 2)).length == 2
    w0 = WeylElement(A3, (4, 3, 2, 1))
    assert w0.length == 6
    assert sorted(i for i, _ in w0.lower_covers()) == [1, 2, 3]


def test_structured_words_of_listed_join_irreducibles():
    assert jirr_reduced_word(WeylElement(A3, (2, 3, 1, 4))) == (1, 2)
    assert jirr_reduced_word(WeylElement(D4, (-2, -1, 3, 4))) == (-1,)
    assert jirr_reduced_word(WeylElement(D4, (-1, 2, 3, -4))) == (3, 2, -1, 1, 2, 3)
    assert WeylElement(CartanType("A", 5), (3, 5, 1, 2, 4, 6)).right_descents() == (2,)


def test_a2_lattice_shape_and_irreducibles():
    L = weak_order(A2)
    assert L.n == 6 and len(L.arrows) == 6
    assert L.join(_idx(L, (2, 1, 3)), _idx(L, (1, 3, 2))) == _idx(L, (3, 2, 1))
    assert len(L.join_irreducibles()) == len(L.meet_irreducibles()) == 4
    assert [p.shape for p in L.polygons] == ["hexagon"]
    assert len(weak_order(A3).join_irreducibles()) == 11


def test_a2_congruence_of_top_arrow_contracts_opposite_bottom_arrow():
    L = weak_order(A2)
    c = L.con(_idx(L, (3, 2, 1)), _idx(L, (3, 1, 2)))
    assert c.same(_idx(L, (2, 1, 3)), _idx(L, (1, 2, 3)))
    assert not c.same(_idx(L, (1, 3, 2)), _idx(L, (1, 2, 3)))
    assert L.jlabel((_idx(L, (3, 2, 1)), _idx(L, (3, 1, 2)))) == _idx(L, (2, 1, 3))


def test_square_congruence_identifies_opposite_side():
    # Boolean square 0 < a, b < 1
    L = build_lattice(4, [(1, 0), (2, 0), (3, 1), (3, 2)])
    c = L.con(3, 1)
    assert c.same(2, 0) and not c.same(1, 0)


def test_hexagon_forcing_arrows():
    L = weak_order(A2)
    idx = L.arrow_index
    bottom = {L.arrows[k] for k in range(6)}
    sym = {(a, b) for a in range(6) for b in L.sfpoly[a]}
    # symmetric part pairs each top arrow with the opposite bottom arrow only
    assert len(sym) == 4 and all((b, a) in sym for a, b in sym)
    full = {(a, b) for a in range(6) for b in L.fpoly[a]}
    assert len(full - sym) == 8
    assert bottom == set(L.arrows) and len(idx) == 6


def test_a2_forcing_order_puts_length_two_jirrs_below_both_atoms():
    L = weak_order(A2)
    P = L.forcing_poset()
    atoms = {_idx(L, (2, 1, 3)), _idx(L, (1, 3, 2))}
    tall = {_idx(L, (2, 3, 1)), _idx(L, (3, 1, 2))}
    assert P.relations() == {(t, a) for t in tall for a in atoms}
    assert set(L.canonical_join_rep(L.top)) == atoms


def test_a2_algebra_ideals():
    alg = pi_algebra(A2)
    assert alg.dim == 4
    assert loewy_label(projective(alg, 1)) == "1/2"
    assert projective(alg, 2).dims == (1, 1)
    I1 = ideal_apply(alg, 1, whole(alg))
    assert I1.dim == 3
    assert ideal_apply(alg, 1, I1) == I1
    t = ideal_table(A2)
    w0 = t.group.longest
    assert t.ideal(w0).dim == 0
    assert t.ideal(_s(A2, 1)).dim == 3


def test_a2_layers_on_labelled_arrows():
    t = ideal_table(A2)
    S1 = simple(t.alg.quiver, 1)
    assert is_isomorphic(t.layer(WeylElement(A2, (3, 2, 1)), WeylElement(A2, (3, 1, 2))), S1)
    assert is_isomorphic(t.layer(WeylElement(A2, (2, 1, 3)), WeylElement(A2, (1, 2, 3))), S1)
    assert loewy_label(t.layer(WeylElement(A2, (3, 1, 2)), WeylElement(A2, (1, 3, 2)))) == "1/2"


def test_small_module_facts():
    alg = pi_algebra(A2)
    P1 = projective(alg, 1)
    assert end_dim(P1) == 1 and is_brick(P1)
    assert alg.quiver.euler_form((1, 1), (1, 1)) == 2
    for M in layer_catalog(A2).layers:
        assert is_tau_minus_rigid(M)


def test_jmap_examples():
    t = ideal_table(A3)
    assert is_isomorphic(t.jmap(WeylElement(A3, (2, 1, 3, 4))), simple(t.alg.quiver, 1))
    w = WeylElement(CartanType("A", 5), (3, 5, 1, 2, 4, 6))
    M = array_module(jw_array(w))
    assert M.dims == (1, 2, 1, 1, 0)
    assert ideal_table(CartanType("A", 5)).jmap(w).dims == (1, 2, 1, 1, 0)


def test_d6_array_module_for_the_one_zero_closed_element():
    w = WeylElement(CartanType("D", 6), (3, 4, -5, -2, 1, 6))
    M = array_module(jw_array(w))
    assert M.satisfies_relations()
    assert M.top_dims() == {-1: 0, 1: 0, 2: 1, 3: 0, 4: 0, 5: 0}
    assert M.dim == 14
    assert is_indecomposable(M)
    # the (0,1)-closed partner lacks the fused half in row 1 and the last cell of row 2
    other = array_module(jw_array(WeylElement(CartanType("D", 6), (-3, 4, -5, 1, 2, 6))))
    diff = {v: M.dim_at(v) - other.dim_at(v) for v in M.vertices}
    assert diff == {-1: 1, 1: 1, 2: 0, 3: 0, 4: 0, 5: 0}


def test_stone_reduction_of_two_dimensional_a2_layer():
    t = ideal_table(A2)
    M = t.layer(WeylElement(A2, (3, 1, 2)), WeylElement(A2, (1, 3, 2)))
    seq, S = reduce_stone_to_simple(M)
    assert seq == [1]
    assert is_isomorphic(S, simple(t.alg.quiver, 2))


def test_a3_arrows_out_of_top_carry_the_simples():
    cat = layer_catalog(A3)
    L = cat.lattice
    labels = sorted(loewy_label(cat.arrow_layer((L.top, l))) for l in L.lower[L.top])
    assert labels == ["1", "2", "3"]


def test_a3_simple_two_covers_all_two_dimensional_strings():
    cat = layer_catalog(A3)
    P = cat.doubleton_order()
    (s2,) = [j for j in cat.jirrs if loewy_label(cat.layer(j)) == "2"]
    below = [l for u, l in P.hasse() if u == s2]
    assert sorted(loewy_label(cat.layer(j)) for j in below) == ["1/2", "2/1", "2/3", "3/2"]


def test_a2_torsion_class_of_s1():
    t = ideal_table(A2)
    L = weak_order(A2)
    mods = [t.ideal_module(w) for w in L.payload]
    s1 = _idx(L, (2, 1, 3))
    # the only arrow into s1 from above carries the layer 2/1
    (u,) = L.upper[s1]
    layer = t.layer(L.payload[u], L.payload[s1])
    assert loewy_label(layer) == "2/1"
    assert [v for v in range(L.n) if in_fac(layer, mods[v])] == [v for v in range(L.n) if L.leq(v, s1)]
    # S1 labels the arrow into 312, so it lies in Fac I(v) exactly for v <= 312
    S1 = simple(t.alg.quiver, 1)
    top = _idx(L, (3, 1, 2))
    assert [v for v in range(L.n) if in_fac(S1, mods[v])] == [v for v in range(L.n) if L.leq(v, top)]


def test_a2_hexagon_labels():
    cat = layer_catalog(A2)
    (p,) = cat.lattice.polygons
    # bottom X, middle E with 0 -> X -> E -> Y -> 0, top Y
    left = [loewy_label(cat.arrow_layer(a)) for a in p._chain_arrows(p.left)]
    right = [loewy_label(cat.arrow_layer(a)) for a in p._chain_arrows(p.right)]
    assert {tuple(left), tuple(right)} == {("1", "2/1", "2"), ("2", "1/2", "1")}
