"""JSON documents for cones, pairs, and computation results.

Every document is a flat JSON object with a `schema_version` and a `kind`.
Serialization is canonical (sorted keys, fixed separators), so any value
that survives a parse also survives a second dump byte for byte.  Rationals
travel as strings "p/q"; exponent vectors as integer arrays; symbolic
coefficients as their printed form.  Input documents are validated against
the schemas shipped with the package before anything is computed from them.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import jsonschema

from .convex import GeometryError, PolyhedralCone
from .decomposition import Decomposition
from .gorenstein import ReflexivePair, reflexive_pair

__all__ = [
    "SCHEMA_VERSION",
    "InputError",
    "dumps",
    "loads",
    "validate_document",
    "cone_document",
    "parse_cone",
    "pair_document",
    "parse_pair",
    "points_document",
    "parse_points",
    "parse_polytopes",
    "fraction_str",
    "laurent_terms",
    "group_entry",
]

SCHEMA_VERSION = 1

_INPUT_KINDS = ("cone", "pair", "points", "polytopes")


class InputError(ValueError):
    """Malformed input document; `pointer` locates the failing field."""

    def __init__(self, message, pointer="$"):
        super().__init__(message)
        self.pointer = pointer

    def __str__(self):
        return f"{self.pointer}: {super().__str__()}"


def dumps(doc) -> str:
    """Canonical one-line rendering, newline terminated."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"not valid JSON: {err.msg}",
                         f"line {err.lineno} column {err.colno}") from None


@lru_cache(maxsize=None)
def _schema(kind: str):
    path = resources.files("gorcones").joinpath(f"schemas/{kind}.json")
    return json.loads(path.read_text())


def validate_document(doc, kinds=_INPUT_KINDS):
    """Schema-check an input document and return its kind."""
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    kind = doc.get("kind")
    if kind not in kinds:
        raise InputError(f"kind must be one of {', '.join(kinds)}", "$.kind")
    validator = jsonschema.Draft202012Validator(_schema(kind))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise InputError(err.message, err.json_path)
    return kind


def _check_vectors(vectors, rank, pointer):
    for i, v in enumerate(vectors):
        if len(v) != rank:
            raise InputError(
                f"vector has {len(v)} entries, lattice_rank is {rank}",
                f"{pointer}[{i}]")


# ---------------------------------------------------------------------------
# scalar helpers


def fraction_str(value) -> str:
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def laurent_terms(poly) -> list:
    """Term list of a Laurent polynomial, sorted by exponent vector."""
    return [{"exponents": list(exp), "coeff": str(coeff)}
            for exp, coeff in sorted(poly.items())]


def group_entry(group) -> dict:
    return {"free_rank": group.free_rank, "torsion": list(group.torsion)}


def vertex_rows(polytope) -> list:
    """Vertices with exact entries; integers stay bare, fractions go "p/q"."""
    rows = []
    for v in polytope.vertices:
        rows.append([int(x) if Fraction(x).denominator == 1 else fraction_str(x)
                     for x in v])
    return rows


# ---------------------------------------------------------------------------
# cone documents


def cone_document(cone: PolyhedralCone, degree_element=None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "cone",
        "lattice_rank": cone.ambient_rank,
        "generators": sorted(list(g) for g in cone.generators),
    }
    if degree_element is not None:
        doc["degree_element"] = list(degree_element)
    return doc


def parse_cone(doc) -> PolyhedralCone:
    validate_document(doc, kinds=("cone",))
    rank = doc["lattice_rank"]
    _check_vectors(doc["generators"], rank, "$.generators")
    if "degree_element" in doc and len(doc["degree_element"]) != rank:
        raise InputError("degree element length differs from lattice_rank",
                         "$.degree_element")
    try:
        return PolyhedralCone.from_generators(
            [tuple(g) for g in doc["generators"]], rank)
    except GeometryError as err:
        raise InputError(str(err), "$.generators") from None


# ---------------------------------------------------------------------------
# pair documents


def pair_document(pair: ReflexivePair, decompositions=(), name=None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "pair",
        "lattice_rank": pair.ambient_rank,
        "index": pair.index,
        "k_generators": sorted(list(g) for g in pair.K.cone.generators),
        "kdual_generators": sorted(list(g) for g in pair.K_dual.cone.generators),
        "degree": list(pair.deg),
        "degree_dual": list(pair.deg_dual),
        "decompositions": [
            {"label": label,
             "s": [list(v) for v in dec.s],
             "t": [list(v) for v in dec.t]}
            for label, dec in decompositions
        ],
    }
    if name is not None:
        doc["name"] = name
    return doc


def parse_pair(doc):
    """Rebuild and re-validate a pair document.

    The pair is reconstructed from the primal generators alone; the stored
    duals and degrees must then agree, so a hand-edited document cannot
    smuggle in inconsistent data.  Returns (pair, [(label, Decomposition)]).
    """
    validate_document(doc, kinds=("pair",))
    rank = doc["lattice_rank"]
    _check_vectors(doc["k_generators"], rank, "$.k_generators")
    _check_vectors(doc["kdual_generators"], rank, "$.kdual_generators")
    try:
        cone = PolyhedralCone.from_generators(
            [tuple(g) for g in doc["k_generators"]], rank)
    except GeometryError as err:
        raise InputError(str(err), "$.k_generators") from None
    pair = reflexive_pair(cone)
    if pair is None:
        raise InputError("generators do not span a two-sided Gorenstein cone",
                         "$.k_generators")
    if sorted(list(g) for g in pair.K_dual.cone.generators) != doc["kdual_generators"]:
        raise InputError("stored dual generators disagree with the dual cone",
                         "$.kdual_generators")
    if list(pair.deg) != doc["degree"] or list(pair.deg_dual) != doc["degree_dual"]:
        raise InputError("stored degree elements disagree with the cone",
                         "$.degree")
    if pair.index != doc["index"]:
        raise InputError(f"stored index {doc['index']} disagrees with "
                         f"the degree pairing {pair.index}", "$.index")
    decompositions = []
    for i, entry in enumerate(doc["decompositions"]):
        _check_vectors(entry["s"], rank, f"$.decompositions[{i}].s")
        _check_vectors(entry["t"], rank, f"$.decompositions[{i}].t")
        try:
            dec = Decomposition(pair,
                                tuple(tuple(v) for v in entry["s"]),
                                tuple(tuple(v) for v in entry["t"]))
        except ValueError as err:
            raise InputError(str(err), f"$.decompositions[{i}]") from None
        decompositions.append((entry["label"], dec))
    return pair, decompositions


# ---------------------------------------------------------------------------
# point and polytope documents


def points_document(rank: int, points) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "points",
        "lattice_rank": rank,
        "points": sorted(list(p) for p in points),
    }


def parse_points(doc):
    validate_document(doc, kinds=("points",))
    _check_vectors(doc["points"], doc["lattice_rank"], "$.points")
    return doc["lattice_rank"], [tuple(p) for p in doc["points"]]


def parse_polytopes(doc):
    """Vertex lists for the Cayley construction."""
    validate_document(doc, kinds=("polytopes",))
    rank = doc["lattice_rank"]
    for j, poly in enumerate(doc["polytopes"]):
        _check_vectors(poly, rank, f"$.polytopes[{j}]")
    return rank, [[tuple(v) for v in poly] for poly in doc["polytopes"]]
