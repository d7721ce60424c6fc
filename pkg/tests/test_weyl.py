from __future__ import annotations

from collections import deque
from itertools import permutations, product

import pytest
from hypothesis import given, settings, strategies as st

from weylpi.weyl import (CartanType, WeylElement, classify_jirr, count_jirr, jirr_count_formula,
                         jirr_reduced_word, multiply, weyl_group)


def _inversions(ct, window):
    """Length from the inversion count of the window (types A and D)."""
    k = len(window)
    n = sum(1 for a in range(k) for b in range(a + 1, k) if window[a] > window[b])
    if ct.family == "D":
        n += sum(1 for a in range(k) for b in range(a + 1, k) if window[a] + window[b] < 0)
    return n


def _all_windows(ct):
    k = ct.window_size
    for perm in permutations(range(1, k + 1)):
        if ct.family == "A":
            yield perm
            continue
        for signs in product((1, -1), repeat=k):
            if signs.count(-1) % 2 == 0:
                yield tuple(s * x for s, x in zip(signs, perm))


def _bfs_lengths(ct):
    start = WeylElement.identity(ct)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in ct.simple_indices:
            u = w.right_mul(i)
            if u not in dist:
                dist[u] = dist[w] + 1
                queue.append(u)
    return dist


@pytest.mark.parametrize("ct,order", [(CartanType("A", 2), 6), (CartanType("A", 3), 24),
                                      (CartanType("A", 4), 120), (CartanType("D", 4), 192),
                                      (CartanType("D", 5), 1920)])
def test_group_order_matches_enumeration(ct, order):
    assert ct.order == order
    assert len(weyl_group(ct)) == order
    assert {w.window for w in weyl_group(ct)} == set(_all_windows(ct))


@pytest.mark.parametrize("ct", [CartanType("A", 3), CartanType("D", 4)])
def test_length_agrees_with_cayley_graph_distance(ct):
    dist = _bfs_lengths(ct)
    for w, d in dist.items():
        assert w.length == d == _inversions(ct, w.window)
    assert max(dist.values()) == ct.longest_length
    assert weyl_group(ct).longest == WeylElement.longest(ct)


def test_simple_reflections_in_type_d_swap_and_negate():
    ct = CartanType("D", 4)
    assert WeylElement.simple(ct, -1).window == (-2, -1, 3, 4)
    assert WeylElement.simple(ct, 1).window == (2, 1, 3, 4)
    assert WeylElement.simple(ct, 3).window == (1, 2, 4, 3)


def test_windows_with_odd_sign_count_are_rejected():
    with pytest.raises(ValueError):
        WeylElement(CartanType("D", 4), (-1, 2, 3, 4))
    with pytest.raises(ValueError):
        WeylElement(CartanType("A", 2), (1, 1, 2))


def test_unsupported_cartan_types_raise():
    for fam, n in (("D", 3), ("E", 7), ("B", 3), ("A", 0)):
        with pytest.raises(ValueError):
            CartanType(fam, n)
    assert CartanType.parse("d5") == CartanType("D", 5)


def test_multiply_is_composition_of_functions():
    ct = CartanType("D", 4)
    g = weyl_group(ct)
    els = g.elements[::7]
    for u in els:
        for v in els:
            uv = multiply(u, v)
            for i in range(1, 5):
                assert uv(i) == u(v(i))


def test_right_and_left_multiplication_match_words():
    ct = CartanType("A", 3)
    w = WeylElement.from_word(ct, (1, 2, 3, 1))
    assert w == WeylElement.simple(ct, 1) * WeylElement.simple(ct, 2) * WeylElement.simple(ct, 3) \
        * WeylElement.simple(ct, 1)
    assert w.left_mul(2) == WeylElement.simple(ct, 2) * w


@pytest.mark.parametrize("ct,total", [(CartanType("A", 2), 4), (CartanType("A", 3), 11),
                                      (CartanType("A", 4), 26), (CartanType("A", 5), 57),
                                      (CartanType("D", 4), 44), (CartanType("D", 5), 157)])
def test_join_irreducible_counts_match_closed_forms(ct, total):
    c = count_jirr(ct)
    assert c["total"] == c["closed_form"] == total
    assert c["per_type"] == c["per_type_closed_form"]


def test_per_type_splits_for_small_cases():
    assert count_jirr(CartanType("A", 3))["per_type"] == {1: 3, 2: 5, 3: 3}
    assert count_jirr(CartanType("D", 4))["per_type"] == {-1: 7, 1: 7, 2: 23, 3: 7}
    assert jirr_count_formula(CartanType("D", 5), 2) == 2 ** 3 * 10 - 1


@pytest.mark.parametrize("ct", [CartanType("A", 4), CartanType("D", 4), CartanType("D", 5)])
def test_structured_reduced_words_reduce_to_the_element(ct):
    for info in weyl_group(ct).join_irreducibles():
        word = jirr_reduced_word(info.element)
        assert len(word) == info.element.length
        assert WeylElement.from_word(ct, word) == info.element


def test_structured_word_rejects_non_join_irreducibles():
    with pytest.raises(ValueError):
        jirr_reduced_word(WeylElement.longest(CartanType("A", 3)))


def test_meet_irreducibles_are_join_irreducibles_times_longest():
    ct = CartanType("D", 4)
    g = weyl_group(ct)
    w0 = g.longest
    js = {info.element for info in g.join_irreducibles()}
    ms = {info.element for info in g.meet_irreducibles()}
    assert {j * w0 for j in js} == ms


def test_reduced_word_counts_for_longest_element_of_a3():
    g = weyl_group(CartanType("A", 3))
    assert g.reduced_word_counts[-1] == 16
    assert len(set(g.longest.reduced_words())) == 16


def test_sampled_reduced_words_are_distinct_and_reduced():
    ct = CartanType("D", 4)
    g = weyl_group(ct)
    words = g.sample_reduced_words(g.longest, 50, seed=3)
    assert len(set(words)) == 50
    for w in words:
        assert WeylElement.from_word(ct, w) == g.longest
    assert words == g.sample_reduced_words(g.longest, 50, seed=3)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from((-1, 1, 2, 3, 4)), max_size=14))
def test_words_in_d5_have_inverse_and_descent_consistency(word):
    ct = CartanType("D", 5)
    w = WeylElement.from_word(ct, word)
    assert (w * w.inverse()) == WeylElement.identity(ct)
    assert w.length == _inversions(ct, w.window)
    for i in ct.simple_indices:
        assert w.has_right_descent(i) == (w.right_mul(i).length < w.length)
        assert w.has_left_descent(i) == w.inverse().has_right_descent(i)
    info = classify_jirr(w)
    assert (info is not None) == (len(w.right_descents()) == 1)
