"""Degree elements, reflexive pairs, degree slices, Cayley construction."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gorcones.convex import (
    GeometryError,
    PolyhedralCone,
    RationalPolytope,
    lattice_points,
)
from gorcones.corpus import EXAMPLE_NAMES, load_example
from gorcones.gorenstein import (
    cayley_cone,
    degree_slice_points,
    gorenstein_degree,
    interior_slice_points,
    k1_points,
    kdual1_points,
    reflexive_pair,
)
from gorcones.intlinalg import vadd, vdot
from support import random_nef_deltas

SMALL = ("cube3d", "square_elliptic", "p2mirror_elliptic", "mukai_222_cp5")


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_degree_slices_pair_to_one(name):
    pair = load_example(name).pair
    assert all(vdot(x, pair.deg_dual) == 1 for x in k1_points(pair))
    assert all(vdot(pair.deg, y) == 1 for y in kdual1_points(pair))


@pytest.mark.parametrize("name", SMALL)
def test_interior_points_are_shifted_slices(name):
    pair = load_example(name).pair
    k = pair.index
    for level in range(k, k + 3):
        shifted = sorted(vadd(pair.deg_dual, p) for p in
                         degree_slice_points(pair, "K_dual", level - k))
        assert sorted(interior_slice_points(pair, "K_dual", level)) == shifted


@pytest.mark.parametrize("name", SMALL)
def test_reflexive_pair_swaps_cleanly(name):
    pair = load_example(name).pair
    other = reflexive_pair(pair.K_dual.cone)
    assert other is not None
    assert other.index == pair.index
    assert sorted(other.K.cone.generators) == \
        sorted(pair.K_dual.cone.generators)
    assert other.deg == pair.deg_dual
    assert other.deg_dual == pair.deg


def test_gorenstein_degree_absent_without_common_level():
    cone = PolyhedralCone.from_generators([(2, -1), (2, 1)], 2)
    assert gorenstein_degree(cone) is None


def test_gorenstein_cone_with_nonreflexive_dual_is_rejected():
    # cone over twice the standard triangle: Gorenstein, dual is not
    cone = PolyhedralCone.from_generators(
        [(1, 2, 0), (1, 0, 2), (1, -2, -2)], 3)
    assert gorenstein_degree(cone) == (1, 0, 0)
    assert reflexive_pair(cone) is None


def test_cayley_rejects_non_nef_input():
    with pytest.raises(GeometryError):
        cayley_cone([])
    with pytest.raises(GeometryError):
        # mismatched ambient lattices
        cayley_cone([[(0, 0), (1, 0)], [(0, 0, 0), (0, 1, 0)]])


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40)
def test_cayley_level_one_points_are_tagged_polytope_points(seed):
    rng = random.Random(seed)
    deltas, n, k = random_nef_deltas(rng)
    pair = cayley_cone(deltas)
    assert pair.index == k
    assert pair.ambient_rank == n + k
    expected = set()
    for j, delta in enumerate(deltas):
        tag = tuple(1 if i == j else 0 for i in range(k))
        poly = RationalPolytope.from_points(delta)
        for m in lattice_points(poly):
            expected.add(tag + tuple(m))
    assert set(kdual1_points(pair)) == expected


def test_degree_slice_level_zero_is_the_origin():
    pair = load_example("cube3d").pair
    assert list(degree_slice_points(pair, "K", 0)) == \
        [(0,) * pair.ambient_rank]
