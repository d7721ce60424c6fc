from __future__ import annotations

import pytest

from weylpi.algebra import Quiver, expected_dimension, pi_algebra
from weylpi.weyl import CartanType

_TYPES = [CartanType("A", 1), CartanType("A", 2), CartanType("A", 3), CartanType("A", 4),
          CartanType("D", 4), CartanType("D", 5), CartanType("E", 6)]


@pytest.mark.parametrize("ct,dim", [(CartanType("A", 2), 4), (CartanType("A", 3), 10),
                                    (CartanType("A", 4), 20), (CartanType("D", 4), 28),
                                    (CartanType("D", 5), 60), (CartanType("E", 6), 156)])
def test_dimension_matches_closed_form(ct, dim):
    alg = pi_algebra(ct)
    assert alg.dim == expected_dimension(ct) == dim


@pytest.mark.parametrize("ct", _TYPES)
def test_relations_vanish_on_every_basis_path(ct):
    assert pi_algebra(ct).check_relations()


@pytest.mark.parametrize("ct", _TYPES)
def test_loewy_length_is_coxeter_number_minus_one(ct):
    alg = pi_algebra(ct)
    expected = max(ct.coxeter_number - 1, 1)
    assert alg.loewy_length == expected
    assert sum(alg.dim_by_degree()) == alg.dim


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_type_a_cartan_matrix_is_min_formula(n):
    alg = pi_algebra(CartanType("A", n))
    for i in range(1, n + 1):
        dims = alg.projective_dims(i)
        for j in range(1, n + 1):
            assert dims[j] == min(i, j, n + 1 - i, n + 1 - j)


def test_grading_is_palindromic_in_small_types():
    for ct in _TYPES:
        d = pi_algebra(ct).dim_by_degree()
        assert d == d[::-1]


def test_quiver_is_doubled_dynkin_graph():
    q = Quiver(CartanType("D", 4))
    assert q.vertices == (-1, 1, 2, 3)
    assert len(q.arrows) == 6
    assert {(a.source, a.target) for a in q.arrows} == {(-1, 2), (2, -1), (1, 2), (2, 1), (2, 3), (3, 2)}
    for a in q.arrows:
        assert a.star.star == a
        assert (a.star.source, a.star.target) == (a.target, a.source)


def test_euler_form_is_symmetrised_cartan_form():
    q = Quiver(CartanType("A", 3))
    assert q.euler_form((1, 0, 0), (1, 0, 0)) == 2
    assert q.euler_form((1, 0, 0), (0, 1, 0)) == -1
    assert q.euler_form((1, 1, 1), (1, 1, 1)) == 2
    assert q.euler_form((0, 1, 0), (1, 0, 1)) == -2


def test_multiplication_is_associative_on_basis():
    alg = pi_algebra(CartanType("A", 3))
    basis = range(alg.dim)
    for a in basis:
        for b in basis:
            ab = alg.multiply({a: 1}, {b: 1})
            for c in basis:
                left = alg.multiply(ab, {c: 1})
                right = alg.multiply({a: 1}, alg.multiply({b: 1}, {c: 1}))
                assert {k: v for k, v in left.items() if v} == {k: v for k, v in right.items() if v}
