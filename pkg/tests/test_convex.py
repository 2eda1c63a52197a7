"""Cones, polytopes, duality involutions, and the lattice-point oracle."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gorcones.convex import (
    GeometryError,
    PolyhedralCone,
    RationalPolytope,
    dual_cone,
    lattice_points,
    lattice_points_bruteforce,
    minkowski_sum,
    polar_dual,
    polytope_equal,
    polytope_from_int_points,
)
from gorcones.corpus import load_example
from gorcones.quotients import theta_polytope, t_polytope
from support import random_origin_polytope, random_unimodular

seeds = st.integers(0, 2**32 - 1)


@given(st.integers(2, 4), seeds)
def test_cone_duality_is_an_involution(n, seed):
    rng = random.Random(seed)
    cone = PolyhedralCone.from_generators(random_unimodular(rng, n), n)
    double = dual_cone(dual_cone(cone))
    assert sorted(double.generators) == sorted(cone.generators)


@given(st.integers(2, 4), seeds)
def test_cone_duality_drops_redundant_generators(n, seed):
    rng = random.Random(seed)
    rays = random_unimodular(rng, n)
    coeffs = [rng.randint(0, 2) for _ in rays]
    inside = tuple(sum(c * row[i] for c, row in zip(coeffs, rays))
                   for i in range(n))
    plain = PolyhedralCone.from_generators(rays, n)
    padded = PolyhedralCone.from_generators(list(rays) + [inside], n)
    assert sorted(dual_cone(padded).generators) == \
        sorted(dual_cone(plain).generators)


@given(st.integers(2, 3), seeds)
def test_polar_duality_is_an_involution(n, seed):
    rng = random.Random(seed)
    p = random_origin_polytope(rng, n)
    assert polytope_equal(polar_dual(polar_dual(p)), p)


def test_polar_dual_requires_interior_origin():
    shifted = polytope_from_int_points([(1, 0), (2, 0), (1, 1), (2, 1)])
    with pytest.raises(GeometryError):
        polar_dual(shifted)
    # origin on the boundary is just as bad
    edge = polytope_from_int_points([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(GeometryError):
        polar_dual(edge)


@given(st.integers(2, 3), seeds)
@settings(max_examples=60)
def test_lattice_points_match_bruteforce_oracle(n, seed):
    rng = random.Random(seed)
    pts = [tuple(rng.randint(-3, 3) for _ in range(n))
           for _ in range(rng.randint(1, 6))]
    p = RationalPolytope.from_points(pts)
    assert sorted(lattice_points(p)) == sorted(lattice_points_bruteforce(p))


@pytest.mark.parametrize("name", ["square_elliptic", "p2mirror_elliptic",
                                  "mukai_222_cp5"])
def test_lattice_points_match_bruteforce_on_quotient_polytopes(name):
    record = load_example(name)
    _, dec = record.decompositions[0]
    for poly in (theta_polytope(record.pair, dec),
                 t_polytope(record.pair, dec)):
        assert sorted(lattice_points(poly)) == \
            sorted(lattice_points_bruteforce(poly))


@given(st.integers(2, 3), seeds)
@settings(max_examples=60)
def test_minkowski_vertices_come_from_pairwise_sums(n, seed):
    rng = random.Random(seed)
    p = random_origin_polytope(rng, n)
    q = random_origin_polytope(rng, n)
    total = minkowski_sum(p, q)
    pairwise = {tuple(a + b for a, b in zip(u, v))
                for u in p.vertices for v in q.vertices}
    assert set(total.vertices) <= pairwise
    assert all(total.contains(s) for s in pairwise)


def test_degenerate_polytopes_enumerate_correctly():
    segment = polytope_from_int_points([(0, 0, 1), (0, 0, 4)])
    assert sorted(lattice_points(segment)) == \
        [(0, 0, 1), (0, 0, 2), (0, 0, 3), (0, 0, 4)]
    point = polytope_from_int_points([(2, -1)])
    assert list(lattice_points(point)) == [(2, -1)]
