"""Decompositions of the dual degree and the induced point partitions."""

import random

import pytest

from gorcones.corpus import EXAMPLE_NAMES, load_example
from gorcones.decomposition import (
    Decomposition,
    enumerate_decompositions,
    partition_points,
    quadratic_part_supports,
)
from gorcones.gorenstein import k1_points, kdual1_points
from gorcones.intlinalg import vadd, vdot
from support import random_nef_pair_with_dec

SMALL = ("cube3d", "square_elliptic", "p2mirror_elliptic", "mukai_222_cp5",
         "enriques_222")


def _half_sum_plus_t(dec):
    total = [0] * dec.pair.ambient_rank
    for v in dec.s:
        total = [a + b for a, b in zip(total, v)]
    doubled_t = [0] * dec.pair.ambient_rank
    for v in dec.t:
        doubled_t = vadd(doubled_t, vadd(v, v))
    return tuple((a + b) // 2 for a, b in zip(total, doubled_t)), \
        all((a + b) % 2 == 0 for a, b in zip(total, doubled_t))


@pytest.mark.parametrize("name", SMALL)
def test_every_enumerated_decomposition_resums_to_the_dual_degree(name):
    pair = load_example(name).pair
    found_any = False
    for r in range(pair.index + 1):
        for dec in enumerate_decompositions(pair, r):
            found_any = True
            total, even = _half_sum_plus_t(dec)
            assert even and total == pair.deg_dual
            assert dec.r == r
            assert len(dec.s) == 2 * r
            assert len(dec.t) == pair.index - r
    assert found_any


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_recorded_decompositions_resum_and_live_on_the_slice(name):
    record = load_example(name)
    level_one = set(kdual1_points(record.pair))
    for _, dec in record.decompositions:
        total, even = _half_sum_plus_t(dec)
        assert even and total == record.pair.deg_dual
        assert set(dec.s) <= level_one and set(dec.t) <= level_one


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_partition_cells_cover_the_slice_once(name):
    record = load_example(name)
    points = set(k1_points(record.pair))
    for _, dec in record.decompositions:
        parts = partition_points(record.pair, dec)
        seen = []
        for _, cell in parts.cells():
            seen.extend(cell)
        assert len(seen) == len(set(seen))
        assert set(seen) == points
        # symmetric storage shares the same object across the diagonal
        for i in range(len(parts.T)):
            for j in range(len(parts.T)):
                assert parts.T[i][j] == parts.T[j][i]


@pytest.mark.parametrize("name", SMALL)
def test_partition_cells_match_their_pairing_rules(name):
    record = load_example(name)
    for _, dec in record.decompositions:
        parts = partition_points(record.pair, dec)
        for j, cell in enumerate(parts.A):
            assert all(vdot(x, dec.t[j]) == 1 for x in cell)
        for i in range(len(parts.T)):
            for j in range(i, len(parts.T)):
                for x in parts.T[i][j]:
                    if i == j:
                        assert vdot(x, dec.s[i]) == 2
                    else:
                        assert vdot(x, dec.s[i]) == 1
                        assert vdot(x, dec.s[j]) == 1


def test_r_zero_partition_has_nonempty_cells():
    rng = random.Random(7)
    for _ in range(10):
        pair, dec = random_nef_pair_with_dec(rng)
        parts = partition_points(pair, dec)
        assert parts.T == ()
        assert all(cell for cell in parts.A)


def test_quadratic_part_supports_rekeys_the_partition():
    record = load_example("enriques_222")
    labels = dict(record.decompositions)
    pair = record.pair

    linear, quadratic = quadratic_part_supports(pair, labels["r3"])
    assert linear == ()
    assert any(cell for row in quadratic for cell in row)

    linear, quadratic = quadratic_part_supports(pair, labels["r0"])
    assert quadratic == ()
    assert len(linear) == pair.index

    # mixed decomposition: both parts carry points and nothing is lost
    mixed = labels["r2"]
    linear, quadratic = quadratic_part_supports(pair, mixed)
    flat = [x for cell in linear for x in cell]
    flat += [x for i, row in enumerate(quadratic)
             for j, cell in enumerate(row) if i <= j for x in cell]
    assert flat and sorted(flat) == sorted(k1_points(pair))
    assert any(cell for cell in linear)
    assert any(cell for row in quadratic for cell in row)


def test_census_counts_match_the_records():
    for name in SMALL:
        record = load_example(name)
        stated = record.expected.get("census")
        if stated is None:
            continue
        derived = tuple(len(enumerate_decompositions(record.pair, r))
                        for r in range(record.pair.index + 1))
        assert derived == stated


def test_decomposition_rejects_bad_data():
    record = load_example("square_elliptic")
    pair = record.pair
    dec = dict(record.decompositions)["r1z"]
    with pytest.raises(ValueError):
        Decomposition(pair, (dec.s[0], dec.s[0]), dec.t)  # dependent s pair
    with pytest.raises(ValueError):
        Decomposition(pair, (dec.s[0],), dec.t)  # odd half-weight part
    off_target = next(p for p in kdual1_points(pair) if p != pair.deg_dual)
    with pytest.raises(ValueError):
        Decomposition(pair, (), (off_target,))  # sum misses the dual degree
