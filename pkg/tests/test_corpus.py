"""The built-in example table and its re-derivation on load."""

import dataclasses
from math import comb

import pytest

from gorcones.corpus import (
    EXAMPLE_NAMES,
    RecordMismatch,
    bidegree_example,
    load_example,
    verify_example,
)
from gorcones.gorenstein import k1_points, kdual1_points


def test_every_name_loads_and_reverifies():
    for name in EXAMPLE_NAMES:
        record = load_example(name)
        assert record.name == name
        assert record.pair.index >= 1
        assert record.recipe
        assert record.notes


def test_unknown_name_is_reported_with_the_known_ones():
    with pytest.raises(KeyError, match="cube3d"):
        load_example("no_such_example")


def test_decomposition_lookup_by_index_and_label():
    record = load_example("square_elliptic")
    by_index = record.decomposition(1)
    by_label = record.decomposition(record.decomposition_labels[1])
    assert by_index is by_label
    with pytest.raises(KeyError):
        record.decomposition("nope")
    with pytest.raises(KeyError):
        record.decomposition(99)


def test_tampered_expectations_fail_verification():
    record = load_example("cube3d")
    broken = dataclasses.replace(
        record, expected={**record.expected, "index": 99})
    with pytest.raises(RecordMismatch, match="index"):
        verify_example(broken)


def test_stated_counts_match_direct_enumeration():
    record = load_example("calabrese_thomas")
    assert record.expected["kdual1_count"] == 9
    assert len(kdual1_points(record.pair)) == 9
    assert record.expected["k1_count"] == len(k1_points(record.pair))

    ci = load_example("ci2222_cp7")
    assert ci.expected["kdual1_count"] == 12
    assert ci.expected["k_ray_count"] == 32
    assert ci.expected["k1_count"] == 144


@pytest.mark.parametrize("n", [4, 5])
def test_bidegree_family_counts_scale_with_the_parameter(n):
    record = bidegree_example(n)
    assert record.pair.ambient_rank == n + 2
    assert record.expected["k1_count"] == 3 * comb(2 * n + 1, n)
    assert record.expected["kdual1_count"] == n + 4
    assert len(k1_points(record.pair)) == record.expected["k1_count"]


def test_bidegree_alias_matches_the_smallest_member():
    alias = load_example("bidegree_2_n1")
    direct = bidegree_example(3)
    assert alias.pair.ambient_rank == direct.pair.ambient_rank
    assert sorted(alias.pair.K.cone.generators) == \
        sorted(direct.pair.K.cone.generators)
