"""Regular fans on the dual slice, centrality search, and flip walks."""

import random

import pytest

from gorcones.corpus import load_example
from gorcones.fans import (
    Circuit,
    SimplicialFan,
    central_fan_search,
    certify_no_central_fan,
    circuit_mu,
    configuration_volume,
    find_central_fan,
    interpolate_fans,
    reference_triangulation,
    regular_triangulation,
    verify_fan,
)
from gorcones.gorenstein import degree_slice_points
from gorcones.intlinalg import project_with, rational_rank
from gorcones.quotients import quotient_data
from support import random_nef_pair_with_dec


def _slice_points(pair):
    return tuple(degree_slice_points(pair, "K_dual", 1))


@pytest.mark.parametrize("name", ["square_elliptic", "p2mirror_elliptic",
                                  "mukai_222_cp5", "enriques_222"])
def test_random_lifts_give_verified_fans(name):
    pair = load_example(name).pair
    points = _slice_points(pair)
    rng = random.Random(hash(name) & 0xFFFF)
    reference = configuration_volume(points)
    for _ in range(8):
        fan = regular_triangulation(points,
                                    [rng.randint(-9, 9) for _ in points])
        report = verify_fan(fan, pair)
        assert report.ok, report
        assert report.level_volume == report.reference_volume == reference


def test_reference_triangulation_verifies():
    pair = load_example("square_elliptic").pair
    fan = reference_triangulation(_slice_points(pair))
    assert verify_fan(fan, pair).ok


def test_incomplete_fan_is_rejected():
    pair = load_example("square_elliptic").pair
    points = _slice_points(pair)
    full = reference_triangulation(points)
    partial = SimplicialFan(points, full.maximal_cones[:1])
    report = verify_fan(partial, pair)
    assert not report.ok
    assert report.failure is not None


@pytest.mark.parametrize("name,label", [("square_elliptic", "r1z"),
                                        ("enriques_222", "r2")])
def test_central_fans_are_found_verified_and_central(name, label):
    record = load_example(name)
    pair = record.pair
    dec = dict(record.decompositions)[label]
    fan = find_central_fan(pair, dec)
    assert fan is not None
    assert verify_fan(fan, pair).ok
    points = list(fan.point_config)
    marked = {points.index(v) for v in dec.s} | \
             {points.index(v) for v in dec.t}
    for cone in fan.maximal_cones:
        assert marked <= set(cone)


def test_r_zero_central_fan_splits_into_tags_plus_base_simplex():
    rng = random.Random(11)
    pair, dec = random_nef_pair_with_dec(rng)
    fan = find_central_fan(pair, dec)
    assert fan is not None
    points = list(fan.point_config)
    t_indices = {points.index(v) for v in dec.t}
    quotient = quotient_data(pair, dec)
    seen_bases = set()
    for cone in fan.maximal_cones:
        assert t_indices <= set(cone)
        base = tuple(i for i in cone if i not in t_indices)
        seen_bases.add(base)
        projected = [project_with(quotient.projection, points[i])
                     for i in base]
        assert rational_rank(projected) == len(projected)
    assert len(seen_bases) == len(fan.maximal_cones)


def test_no_central_fan_certificate_and_budget():
    record = load_example("p2mirror_elliptic")
    pair = record.pair
    dec = record.decompositions[0][1]
    result = certify_no_central_fan(pair, dec)
    assert result.status == "none"
    assert result.fan is None
    assert result.nodes <= result.budget

    starved = certify_no_central_fan(pair, dec, budget=0)
    assert starved.status == "inconclusive"

    found = central_fan_search(pair, dict(record.decompositions)["r0"])
    assert found.status == "found"
    assert verify_fan(found.fan, pair).ok


def test_interpolation_crosses_a_collinear_wall_in_one_event():
    # the center of the square slice sits between two boundary points, so two
    # walls share one degenerate relation and must flip together
    pair = load_example("square_elliptic").pair
    points = _slice_points(pair)
    fan_a = regular_triangulation(points, [6, -2, 3, 8, -6])
    fan_b = regular_triangulation(points, [9, -2, -9, -3, 4])
    circuits = interpolate_fans(fan_a, fan_b, pair)
    assert len(circuits) == 1
    circuit = circuits[0]
    assert circuit_mu(circuit, pair) == 0
    support = {i for i, _ in circuit.positive + circuit.negative}
    weights = dict(circuit.positive + circuit.negative)
    assert len(support) == 3
    assert sorted(weights.values()) == [-2, 1, 1]


def test_interpolation_between_equal_fans_is_empty():
    pair = load_example("square_elliptic").pair
    points = _slice_points(pair)
    fan = regular_triangulation(points, [3, 1, 4, 1, 5])
    assert interpolate_fans(fan, fan, pair) == []


def test_circuit_mu_is_homogeneous():
    pair = load_example("square_elliptic").pair
    points = _slice_points(pair)
    fan_a = regular_triangulation(points, [6, -2, 3, 8, -6])
    fan_b = regular_triangulation(points, [9, -2, -9, -3, 4])
    base = interpolate_fans(fan_a, fan_b, pair)[0]
    doubled = Circuit(base.point_config,
                      tuple((i, 2 * w) for i, w in base.positive),
                      tuple((i, 2 * w) for i, w in base.negative))
    assert circuit_mu(doubled, pair) == 0
