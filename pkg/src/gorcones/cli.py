"""Command line front end.

Subcommands read one JSON document from stdin (except `example`, which has
no input) and write one JSON document to stdout, so they compose with
pipes: `gorcones example cube3d | gorcones slice-points --side K --level 1
| gorcones count`.  Exit codes: 0 for success, 1 for a negative
mathematical verdict (not Gorenstein, no central fan, a failed
verification), 2 for malformed input, 3 when a search budget ran out
before anything was settled.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from .clifford import (
    assemble_sections,
    clifford_center,
    clifford_presentation,
    discriminant,
    flatness_heuristic,
    group_tower,
    multidegree,
    reconstruction_identity,
)
from .convex import GeometryError
from .corpus import EXAMPLE_NAMES, load_example
from .decomposition import enumerate_decompositions, partition_points
from .fans import central_fan_search, find_central_fan, interpolate_fans, regular_triangulation
from .gorenstein import CoefficientFunction, cayley_cone, degree_slice_points, reflexive_pair
from .intlinalg import vdot
from .laurent import Poly
from .quotients import quotient_data, theta_polytope, verify_section7
from .serialize import (
    SCHEMA_VERSION,
    InputError,
    cone_document,
    dumps,
    fraction_str,
    group_entry,
    laurent_terms,
    loads,
    pair_document,
    parse_cone,
    parse_pair,
    parse_points,
    parse_polytopes,
    points_document,
    vertex_rows,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

DEFAULT_BUDGET = 10 ** 6


# ---------------------------------------------------------------------------
# result documents


def _fan_document(fan) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "fan",
        "lattice_rank": len(fan.point_config[0]),
        "points": [list(p) for p in fan.point_config],
        "maximal_cones": sorted(sorted(c) for c in fan.maximal_cones),
    }


def _search_document(result) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "search",
        "status": result.status,
        "nodes": result.nodes,
        "budget": result.budget,
    }
    if result.fan is not None:
        doc["fan"] = _fan_document(result.fan)
    return doc


def _laurent_document(poly) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "laurent",
        "lattice_rank": poly.rank,
        "terms": laurent_terms(poly),
    }


def _group_field(group):
    return None if group is None else group_entry(group)


def _verdict_document(ok: bool, reason: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "verdict",
        "ok": ok,
        "reason": reason,
    }


# ---------------------------------------------------------------------------
# input plumbing


def _stdin_document():
    return loads(sys.stdin.read())


def _pick_decomposition(decompositions, key):
    """Decomposition chosen by --dec: list position or label."""
    if not decompositions:
        raise InputError("the document carries no decompositions",
                         "$.decompositions")
    try:
        index = int(key)
    except ValueError:
        for label, dec in decompositions:
            if label == key:
                return label, dec
        labels = ", ".join(label for label, _ in decompositions)
        raise InputError(f"no decomposition labeled {key!r}; have {labels}",
                         "$.decompositions") from None
    if not 0 <= index < len(decompositions):
        raise InputError(f"decomposition index {index} out of range "
                         f"0..{len(decompositions) - 1}", "$.decompositions")
    return decompositions[index]


def _pair_and_dec(args):
    pair, decompositions = parse_pair(_stdin_document())
    label, dec = _pick_decomposition(decompositions, args.dec)
    return pair, label, dec


def _symbolic_matrix(pair, dec):
    c = CoefficientFunction.symbolic(pair)
    parts = partition_points(pair, dec)
    f, matrix = assemble_sections(c, parts, dec)
    if not reconstruction_identity(f, matrix, c, pair):
        raise ArithmeticError("assembled sections failed to reconstruct "
                              "the total section")
    return matrix


# ---------------------------------------------------------------------------
# subcommands


def _cmd_dualize(args):
    cone = parse_cone(_stdin_document())
    pair = reflexive_pair(cone)
    if pair is not None:
        return EXIT_OK, cone_document(pair.K_dual.cone, pair.deg)
    from .convex import dual_cone
    return EXIT_OK, cone_document(dual_cone(cone))


def _cmd_gorenstein(args):
    cone = parse_cone(_stdin_document())
    pair = reflexive_pair(cone)
    if pair is None:
        return EXIT_NEGATIVE, _verdict_document(
            False, "the cone or its dual has no degree element")
    return EXIT_OK, pair_document(pair)


def _cmd_cayley(args):
    rank, polytopes = parse_polytopes(_stdin_document())
    try:
        pair = cayley_cone(polytopes, rank)
    except GeometryError as err:
        return EXIT_NEGATIVE, _verdict_document(False, str(err))
    return EXIT_OK, pair_document(pair)


def _cmd_slice_points(args):
    pair, _ = parse_pair(_stdin_document())
    points = degree_slice_points(pair, args.side, args.level)
    return EXIT_OK, points_document(pair.ambient_rank, points)


def _cmd_count(args):
    doc = _stdin_document()
    if not isinstance(doc, dict) or doc.get("kind") != "points":
        raise InputError("count expects a points document", "$.kind")
    _, points = parse_points(doc)
    return EXIT_OK, {"schema_version": SCHEMA_VERSION, "kind": "count",
                     "value": len(points)}


def _cmd_decompose(args):
    pair, _ = parse_pair(_stdin_document())
    radii = [args.r] if args.r is not None else range(pair.index + 1)
    found = []
    for r in radii:
        for i, dec in enumerate(enumerate_decompositions(pair, r)):
            found.append((f"r{r}.{i}", dec))
    return EXIT_OK, pair_document(pair, found)


def _cmd_central_fan(args):
    pair, label, dec = _pair_and_dec(args)
    fan = find_central_fan(pair, dec, args.budget)
    if fan is not None:
        return EXIT_OK, _fan_document(fan)
    result = central_fan_search(pair, dec, args.budget)
    code = EXIT_NEGATIVE if result.status == "none" else EXIT_BUDGET
    return code, _search_document(result)


def _cmd_certify_no_central_fan(args):
    pair, label, dec = _pair_and_dec(args)
    result = central_fan_search(pair, dec, args.budget)
    code = {"none": EXIT_NEGATIVE, "found": EXIT_OK,
            "inconclusive": EXIT_BUDGET}[result.status]
    return code, _search_document(result)


def _cmd_quotient(args):
    pair, label, dec = _pair_and_dec(args)
    data = quotient_data(pair, dec)
    return EXIT_OK, {
        "schema_version": SCHEMA_VERSION,
        "kind": "quotient",
        "n_bar": group_entry(data.n_bar),
        "n_bar_free_rank": data.n_bar_free_rank,
        "projection": [list(row) for row in data.projection],
        "m_bar_basis": [list(row) for row in data.m_bar_basis],
    }


def _cmd_verify_s7(args):
    pair, label, dec = _pair_and_dec(args)
    report = verify_section7(pair, dec)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "verification",
        "ok": report.ok,
        "slice_equals_sum": report.slice_equals_sum,
        "polar_dual_matches": report.polar_dual_matches,
        "double_slice_integral": report.double_slice_integral,
        "witness": report.witness,
        "theta_vertices": vertex_rows(report.theta),
        "t_vertices": vertex_rows(report.t),
        "s_vertices": vertex_rows(report.s),
    }
    return EXIT_OK if report.ok else EXIT_NEGATIVE, doc


def _cmd_matrix(args):
    pair, label, dec = _pair_and_dec(args)
    matrix = _symbolic_matrix(pair, dec)
    return EXIT_OK, {
        "schema_version": SCHEMA_VERSION,
        "kind": "matrix",
        "lattice_rank": pair.ambient_rank,
        "size": matrix.size,
        "entries": [[laurent_terms(matrix[i, j]) for j in range(matrix.size)]
                    for i in range(matrix.size)],
    }


def _cmd_discriminant(args):
    pair, label, dec = _pair_and_dec(args)
    matrix = _symbolic_matrix(pair, dec)
    return EXIT_OK, _laurent_document(discriminant(matrix, pair, dec))


def _cmd_multidegree(args):
    pair, label, dec = _pair_and_dec(args)
    matrix = _symbolic_matrix(pair, dec)
    g = discriminant(matrix, pair, dec)
    md = multidegree(g, theta_polytope(pair, dec))
    return EXIT_OK, {
        "schema_version": SCHEMA_VERSION,
        "kind": "multidegree",
        "rays": [list(ray) for ray in md.rays],
        "coefficients": list(md.coefficients),
        "groups": [list(block) for block in md.groups],
        "degrees": list(md.group_degrees),
    }


def _cmd_groups(args):
    pair, label, dec = _pair_and_dec(args)
    tower = group_tower(pair, dec)
    return EXIT_OK, {
        "schema_version": SCHEMA_VERSION,
        "kind": "groups",
        "g": group_entry(tower.g),
        "g_hat": group_entry(tower.g_hat),
        "h_meet_g_order": tower.h_meet_g_order,
        "g_bar": _group_field(tower.g_bar),
        "quotient_check": tower.quotient_check,
    }


def _cmd_center(args):
    pair, label, dec = _pair_and_dec(args)
    presentation = clifford_presentation(pair, dec)
    elements = clifford_center(presentation)
    return EXIT_OK, {
        "schema_version": SCHEMA_VERSION,
        "kind": "center",
        "r": presentation.r,
        "twist": None if presentation.twist is None else list(presentation.twist),
        "coefficients": list(presentation.coefficients),
        "elements": [{"h": e.h_power, "indices": list(e.indices),
                      "square": str(e.square)} for e in elements],
    }


def _cmd_flatness(args):
    pair, label, dec = _pair_and_dec(args)
    report = flatness_heuristic(pair, dec)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "flatness",
        "nonempty_quadratic_cells": report.nonempty_quadratic_cells,
        "base_dimension": report.base_dimension,
        "verdict": report.verdict,
    }
    code = EXIT_OK if report.verdict == "expected-flat" else EXIT_NEGATIVE
    return code, doc


def _cmd_flop_walk(args):
    pair, label, dec = _pair_and_dec(args)
    points = tuple(p for p in
                   degree_slice_points(pair, "K_dual", 1))
    rng = random.Random(args.seed)
    circuits = []
    for _ in range(args.walks):
        lift_a = [rng.randint(-9, 9) for _ in points]
        lift_b = [rng.randint(-9, 9) for _ in points]
        fan_a = regular_triangulation(points, lift_a)
        fan_b = regular_triangulation(points, lift_b)
        for circuit in interpolate_fans(fan_a, fan_b, pair):
            mu = sum(w for _, w in circuit.positive + circuit.negative)
            circuits.append({
                "positive": [[i, w] for i, w in circuit.positive],
                "negative": [[i, w] for i, w in circuit.negative],
                "mu": mu,
            })
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "walk",
        "walks": args.walks,
        "points": [list(p) for p in points],
        "circuits": circuits,
    }
    bad = any(c["mu"] != 0 for c in circuits)
    return (EXIT_NEGATIVE if bad else EXIT_OK), doc


def _cmd_example(args):
    record = load_example(args.name)
    return EXIT_OK, pair_document(record.pair, record.decompositions,
                                  name=record.name)


# ---------------------------------------------------------------------------
# text rendering


def _want_color():
    return sys.stdout.isatty() and not os.environ.get("NO_COLOR")


def _paint(text, good):
    if not _want_color():
        return text
    return f"\033[32m{text}\033[0m" if good else f"\033[31m{text}\033[0m"


def _rows(label, vectors, out):
    out.append(f"{label}:")
    for v in vectors:
        out.append("  " + " ".join(str(x) for x in v))


def _group_str(entry):
    if entry is None:
        return "-"
    parts = ["Z"] * entry["free_rank"] + [f"Z/{d}" for d in entry["torsion"]]
    return " x ".join(parts) if parts else "0"


def _terms_str(terms):
    if not terms:
        return "0"
    return "  ".join("x^(%s): %s" % (",".join(str(e) for e in t["exponents"]),
                                     t["coeff"]) for t in terms)


def render_text(doc) -> str:
    kind = doc.get("kind")
    out = []
    if kind == "count":
        return str(doc["value"])
    if kind == "points":
        for p in doc["points"]:
            out.append(" ".join(str(x) for x in p))
        return "\n".join(out) if out else "(no points)"
    if kind == "cone":
        out.append(f"lattice_rank: {doc['lattice_rank']}")
        if "degree_element" in doc:
            out.append("degree_element: "
                       + " ".join(str(x) for x in doc["degree_element"]))
        _rows("generators", doc["generators"], out)
    elif kind == "pair":
        if "name" in doc:
            out.append(f"name: {doc['name']}")
        out.append(f"lattice_rank: {doc['lattice_rank']}")
        out.append(f"index: {doc['index']}")
        out.append("degree: " + " ".join(str(x) for x in doc["degree"]))
        out.append("degree_dual: "
                   + " ".join(str(x) for x in doc["degree_dual"]))
        _rows("k_generators", doc["k_generators"], out)
        _rows("kdual_generators", doc["kdual_generators"], out)
        for entry in doc["decompositions"]:
            out.append(f"decomposition {entry['label']}: "
                       f"{len(entry['s'])} s, {len(entry['t'])} t")
            for tag in ("s", "t"):
                for v in entry[tag]:
                    out.append(f"  {tag} " + " ".join(str(x) for x in v))
    elif kind == "fan":
        _rows("points", doc["points"], out)
        _rows("maximal_cones", doc["maximal_cones"], out)
    elif kind == "search":
        good = doc["status"] == "found"
        out.append("status: " + _paint(doc["status"], good))
        out.append(f"nodes: {doc['nodes']}  budget: {doc['budget']}")
        if "fan" in doc:
            _rows("maximal_cones", doc["fan"]["maximal_cones"], out)
    elif kind == "verdict":
        out.append("ok: " + _paint("yes" if doc["ok"] else "no", doc["ok"]))
        out.append(f"reason: {doc['reason']}")
    elif kind == "verification":
        out.append("ok: " + _paint("yes" if doc["ok"] else "no", doc["ok"]))
        for key in ("slice_equals_sum", "polar_dual_matches",
                    "double_slice_integral"):
            out.append(f"{key}: {'yes' if doc[key] else 'no'}")
        if doc["witness"]:
            out.append(f"witness: {doc['witness']}")
    elif kind == "quotient":
        out.append(f"n_bar: {_group_str(doc['n_bar'])}")
        out.append(f"n_bar_free_rank: {doc['n_bar_free_rank']}")
        _rows("projection", doc["projection"], out)
        _rows("m_bar_basis", doc["m_bar_basis"], out)
    elif kind == "laurent":
        for term in doc["terms"]:
            out.append("x^(%s): %s"
                       % (",".join(str(e) for e in term["exponents"]),
                          term["coeff"]))
        if not out:
            out.append("0")
    elif kind == "matrix":
        out.append(f"size: {doc['size']}")
        for i, row in enumerate(doc["entries"]):
            for j, terms in enumerate(row):
                out.append(f"entry[{i}][{j}]: {_terms_str(terms)}")
    elif kind == "multidegree":
        _rows("rays", doc["rays"], out)
        out.append("coefficients: "
                   + " ".join(str(x) for x in doc["coefficients"]))
        out.append("groups: " + "  ".join(",".join(str(i) for i in block)
                                          for block in doc["groups"]))
        out.append("degrees: " + " ".join(str(x) for x in doc["degrees"]))
    elif kind == "groups":
        out.append(f"g: {_group_str(doc['g'])}")
        out.append(f"g_hat: {_group_str(doc['g_hat'])}")
        out.append(f"h_meet_g_order: {doc['h_meet_g_order']}")
        out.append(f"g_bar: {_group_str(doc['g_bar'])}")
        out.append(f"quotient_check: {'yes' if doc['quotient_check'] else 'no'}")
    elif kind == "center":
        out.append(f"r: {doc['r']}")
        out.append("twist: " + ("none" if doc["twist"] is None else
                                " ".join(str(x) for x in doc["twist"])))
        for e in doc["elements"]:
            word = "*".join(f"y{i + 1}" for i in e["indices"]) or "1"
            if e["h"]:
                word = "h*" + word if word != "1" else "h"
            out.append(f"central: {word}  square: {e['square']}")
    elif kind == "flatness":
        out.append(f"nonempty_quadratic_cells: {doc['nonempty_quadratic_cells']}")
        out.append(f"base_dimension: {doc['base_dimension']}")
        good = doc["verdict"] == "expected-flat"
        out.append("verdict: " + _paint(doc["verdict"], good))
    elif kind == "walk":
        out.append(f"walks: {doc['walks']}  circuits: {len(doc['circuits'])}")
        for c in doc["circuits"]:
            pos = " ".join(f"{i}:+{w}" for i, w in c["positive"])
            neg = " ".join(f"{i}:{w}" for i, w in c["negative"])
            out.append(f"circuit: {pos} | {neg}  mu={c['mu']}")
    else:
        for key in sorted(doc):
            if key in ("schema_version", "kind"):
                continue
            out.append(f"{key}: {doc[key]}")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gorcones",
        description="Exact computations on reflexive Gorenstein cone pairs; "
                    "JSON documents in, JSON or text out.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, fmt="json"):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("json", "text"), default=fmt,
                       help=f"output format (default {fmt})")
        p.set_defaults(func=func)
        return p

    def dec_flag(p):
        p.add_argument("--dec", required=True,
                       help="decomposition to use: list position or label")

    def budget_flag(p):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="search node budget (default %(default)s)")

    add("dualize", _cmd_dualize, "dual cone of a cone document")
    add("gorenstein", _cmd_gorenstein,
        "build the reflexive pair on a cone, or report failure")
    add("cayley", _cmd_cayley, "reflexive pair of a polytope list")

    p = add("slice-points", _cmd_slice_points,
            "lattice points of a degree slice")
    p.add_argument("--side", choices=("K", "K_dual"), required=True)
    p.add_argument("--level", type=int, default=1)

    add("count", _cmd_count, "number of points in a points document",
        fmt="text")

    p = add("decompose", _cmd_decompose,
            "enumerate decompositions of the dual degree")
    p.add_argument("--r", type=int, default=None,
                   help="restrict to 2r half-weight parts")

    p = add("central-fan", _cmd_central_fan,
            "find a fan whose maximal cones contain the decomposition")
    dec_flag(p)
    budget_flag(p)

    p = add("certify-no-central-fan", _cmd_certify_no_central_fan,
            "exhaustive search; exit 1 certifies non-existence")
    dec_flag(p)
    budget_flag(p)

    for name, func, help_ in (
        ("quotient", _cmd_quotient, "quotient lattice data"),
        ("verify-s7", _cmd_verify_s7, "slice reconstruction checks"),
        ("matrix", _cmd_matrix, "symbolic section matrix"),
        ("discriminant", _cmd_discriminant, "symbolic discriminant"),
        ("multidegree", _cmd_multidegree, "discriminant vanishing orders"),
        ("groups", _cmd_groups, "character group tower"),
        ("center", _cmd_center, "central monomials of the even algebra"),
        ("flatness", _cmd_flatness, "entry-count flatness heuristic"),
    ):
        p = add(name, func, help_)
        dec_flag(p)

    p = add("flop-walk", _cmd_flop_walk,
            "interpolate random regular fans and report circuits")
    dec_flag(p)
    p.add_argument("--walks", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)

    p = add("example", _cmd_example, "emit a built-in example as a pair document")
    p.add_argument("name", choices=EXAMPLE_NAMES)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, doc = args.func(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (GeometryError, ValueError, KeyError, ArithmeticError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        sys.stdout.write(dumps(doc))
    else:
        print(render_text(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
