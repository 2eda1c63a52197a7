"""Exact integer linear algebra: normal forms, quotients, Birkhoff peeling."""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from gorcones.intlinalg import (
    AbelianGroupData,
    DoublyStochasticMatrix,
    birkhoff_decompose,
    coordinates_in_basis,
    det_rational,
    diagonal_of,
    lattice_span_basis,
    mat_mul,
    quotient_group,
    saturate,
    smith_normal_form,
)
from support import random_doubly_stochastic, random_unimodular

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-30, 30), min_size=n, max_size=n),
            min_size=m, max_size=m)))


@given(matrices)
def test_smith_form_reconstructs_and_divides(a):
    s, u, v = smith_normal_form(a)
    assert s == mat_mul(mat_mul(u, a), v)
    assert abs(det_rational(u)) == 1
    assert abs(det_rational(v)) == 1
    diag = diagonal_of(s)
    assert all(d > 0 for d in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    # off-diagonal entries are all zero
    for i, row in enumerate(s):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0


@given(matrices, st.integers(0, 2**32 - 1))
def test_quotient_ignores_choice_of_relation_generators(rels, seed):
    n = len(rels[0])
    base = quotient_group(n, rels)
    rng = random.Random(seed)
    mixed = mat_mul(random_unimodular(rng, len(rels)), rels)
    assert quotient_group(n, mixed) == base
    assert all(t >= 2 for t in base.torsion)


def test_quotient_group_examples():
    assert quotient_group(2, [[2, 0]]) == AbelianGroupData(1, (2,))
    assert quotient_group(2, [[1, 0], [0, 1]]) == AbelianGroupData(0, ())
    assert quotient_group(3, [[1, 1, 0]]) == AbelianGroupData(2, ())
    assert str(quotient_group(3, [[2, 0, 0], [0, 3, 0]])) == "Z x Z/6"


@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_birkhoff_decomposition_reconstructs_exactly(n, seed):
    rng = random.Random(seed)
    rows, line_sum = random_doubly_stochastic(rng, n)
    pieces = birkhoff_decompose(rows)
    assert all(w > 0 for w, _ in pieces)
    assert sum(w for w, _ in pieces) == line_sum
    assert len(pieces) <= n * n - n + 1
    rebuilt = [[Fraction(0)] * n for _ in range(n)]
    for w, perm in pieces:
        assert sorted(perm) == list(range(n))
        for i, j in enumerate(perm):
            rebuilt[i][j] += w
    assert rebuilt == [list(r) for r in rows]


def test_birkhoff_rejects_unbalanced_matrix():
    try:
        DoublyStochasticMatrix.from_rows([[Fraction(1), Fraction(0)],
                                          [Fraction(1), Fraction(0)]])
    except ValueError:
        return
    raise AssertionError("unbalanced line sums must be rejected")


def _same_lattice(rows_a, rows_b):
    def inside(rows, basis):
        for row in rows:
            coords = coordinates_in_basis(row, basis)
            if coords is None or any(c.denominator != 1 for c in coords):
                return False
        return True

    if not rows_a or not rows_b:
        return not rows_a and not rows_b
    return inside(rows_a, rows_b) and inside(rows_b, rows_a)


@given(matrices)
@settings(max_examples=60)
def test_saturation_is_idempotent(rows):
    once = saturate(rows)
    twice = saturate(once)
    assert _same_lattice(once, twice)
    # the saturation contains the original lattice
    span = lattice_span_basis(rows)
    assert all(
        coordinates_in_basis(row, once) is not None and
        all(c.denominator == 1
            for c in coordinates_in_basis(row, once))
        for row in span)
