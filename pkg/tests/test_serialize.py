"""Canonical JSON documents: round trips, validation, pointer messages."""

import pytest

from gorcones.corpus import EXAMPLE_NAMES, load_example
from gorcones.serialize import (
    InputError,
    cone_document,
    dumps,
    fraction_str,
    loads,
    pair_document,
    parse_cone,
    parse_pair,
    parse_points,
    points_document,
    validate_document,
)
from fractions import Fraction


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_pair_documents_round_trip_byte_identically(name):
    record = load_example(name)
    text = dumps(pair_document(record.pair, record.decompositions,
                               name=record.name))
    doc = loads(text)
    pair, decs = parse_pair(doc)
    assert dumps(pair_document(pair, decs, name=doc.get("name"))) == text


def test_cone_documents_round_trip_byte_identically():
    record = load_example("cube3d")
    doc = cone_document(record.pair.K.cone, record.pair.deg)
    text = dumps(doc)
    assert dumps(cone_document(parse_cone(loads(text)),
                               loads(text)["degree_element"])) == text


def test_points_documents_round_trip():
    doc = points_document(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    rank, pts = parse_points(loads(dumps(doc)))
    assert rank == 3
    assert dumps(points_document(rank, pts)) == dumps(doc)


def test_loads_reports_json_position():
    with pytest.raises(InputError, match="line 1"):
        loads('{"kind": "cone",')


def test_validation_points_at_the_failing_field():
    doc = loads(dumps(cone_document(
        load_example("cube3d").pair.K.cone, None)))
    doc["generators"][0][1] = "x"
    with pytest.raises(InputError, match=r"generators\[0\]\[1\]"):
        validate_document(doc, kinds=("cone",))


def test_validation_rejects_unknown_kind():
    with pytest.raises(InputError, match="kind"):
        validate_document({"schema_version": 1, "kind": "mystery"})


def test_validation_rejects_wrong_schema_version():
    doc = {"schema_version": 2, "kind": "points", "lattice_rank": 1,
           "points": [[1]]}
    with pytest.raises(InputError):
        validate_document(doc, kinds=("points",))


def test_parse_pair_rejects_tampered_duals():
    record = load_example("square_elliptic")
    doc = loads(dumps(pair_document(record.pair, record.decompositions)))
    doc["kdual_generators"][0] = [9, 9, 9]
    with pytest.raises(InputError):
        parse_pair(doc)


def test_parse_pair_rejects_invalid_decomposition():
    record = load_example("square_elliptic")
    doc = loads(dumps(pair_document(record.pair, record.decompositions)))
    doc["decompositions"][0]["t"] = [[1, 1, 1]]
    with pytest.raises(InputError, match=r"decompositions\[0\]"):
        parse_pair(doc)


def test_fraction_strings():
    assert fraction_str(Fraction(3, 4)) == "3/4"
    assert fraction_str(Fraction(-5, 1)) == "-5"
    assert fraction_str(7) == "7"
