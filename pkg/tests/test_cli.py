"""End-to-end checks of the command line front end.

Most cases drive main() in process with a patched stdin; the documented
shell pipelines also run as real subprocesses so the pipe contract and the
console entry point stay honest.
"""

import io
import json
import subprocess
import sys

import pytest

from gorcones.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, main
from gorcones.corpus import load_example
from gorcones.serialize import dumps, pair_document

SQUARE_CONE = [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]]


def cone_doc(rank, generators):
    return json.dumps({"schema_version": 1, "kind": "cone",
                       "lattice_rank": rank, "generators": generators})


def polytopes_doc(rank, polytopes):
    return json.dumps({"schema_version": 1, "kind": "polytopes",
                       "lattice_rank": rank, "polytopes": polytopes})


def example_text(name):
    record = load_example(name)
    return dumps(pair_document(record.pair, record.decompositions,
                               name=record.name))


@pytest.fixture
def cli(monkeypatch, capsys):
    def run(argv, stdin_text=""):
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin_text))
        code = main(argv)
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return run


# ---------------------------------------------------------------------------
# cone-level commands


def test_dualize_reports_the_polar_generators(cli):
    code, out, _ = cli(["dualize"], cone_doc(3, SQUARE_CONE))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["generators"] == [[1, -1, 0], [1, 0, -1], [1, 0, 1], [1, 1, 0]]
    assert doc["degree_element"] == [1, 0, 0]


def test_dualize_falls_back_to_the_plain_dual_cone(cli):
    code, out, _ = cli(["dualize"], cone_doc(2, [[2, -1], [2, 1]]))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["generators"] == [[1, -2], [1, 2]]
    assert "degree_element" not in doc


def test_gorenstein_accepts_the_square_cone(cli):
    code, out, _ = cli(["gorenstein"], cone_doc(3, SQUARE_CONE))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["kind"] == "pair"
    assert doc["index"] == 1


def test_gorenstein_rejects_a_cone_without_degree(cli):
    code, out, _ = cli(["gorenstein"], cone_doc(2, [[2, -1], [2, 1]]))
    doc = json.loads(out)
    assert code == EXIT_NEGATIVE
    assert doc["kind"] == "verdict" and doc["ok"] is False
    assert "degree element" in doc["reason"]


def test_cayley_builds_an_index_two_pair(cli):
    text = polytopes_doc(2, [[[-1, 0], [1, 0]], [[0, -1], [0, 1]]])
    code, out, _ = cli(["cayley"], text)
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["kind"] == "pair"
    assert doc["index"] == 2 and doc["lattice_rank"] == 4


def test_cayley_reports_a_failed_construction(cli):
    code, out, _ = cli(["cayley"], polytopes_doc(1, [[[0], [3]]]))
    doc = json.loads(out)
    assert code == EXIT_NEGATIVE
    assert doc["kind"] == "verdict" and doc["ok"] is False
    assert "not reflexive" in doc["reason"]


def test_slice_points_then_count_pipeline_in_process(cli):
    code, points, _ = cli(["slice-points", "--side", "K", "--level", "1"],
                          example_text("square_elliptic"))
    assert code == EXIT_OK
    code, out, _ = cli(["count"], points)
    assert code == EXIT_OK
    assert out == "9\n"


def test_count_rejects_non_point_documents(cli):
    code, _, err = cli(["count"], example_text("square_elliptic"))
    assert code == EXIT_INPUT
    assert "$.kind" in err


# ---------------------------------------------------------------------------
# decomposition-level commands


def test_decompose_labels_by_radius_and_position(cli):
    code, pair_text, _ = cli(["example", "square_elliptic"])
    assert code == EXIT_OK
    code, out, _ = cli(["decompose"], pair_text)
    assert code == EXIT_OK
    labels = [e["label"] for e in json.loads(out)["decompositions"]]
    assert labels == ["r0.0", "r1.0", "r1.1"]


def test_decompose_can_restrict_the_radius(cli):
    code, out, _ = cli(["decompose", "--r", "1"],
                       example_text("square_elliptic"))
    assert code == EXIT_OK
    labels = [e["label"] for e in json.loads(out)["decompositions"]]
    assert labels == ["r1.0", "r1.1"]


def test_central_fan_finds_a_fan_for_the_z_split(cli):
    code, out, _ = cli(["central-fan", "--dec", "r1z"],
                       example_text("square_elliptic"))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["kind"] == "fan"
    assert len(doc["maximal_cones"]) == 2


def test_certify_no_central_fan_settles_the_mirror_split(cli):
    code, out, _ = cli(["certify-no-central-fan", "--dec", "0"],
                       example_text("p2mirror_elliptic"))
    doc = json.loads(out)
    assert code == EXIT_NEGATIVE
    assert doc["status"] == "none"
    assert doc["nodes"] >= 1


def test_certify_budget_zero_is_inconclusive(cli):
    code, out, _ = cli(["certify-no-central-fan", "--dec", "0",
                        "--budget", "0"],
                       example_text("p2mirror_elliptic"))
    assert code == EXIT_BUDGET
    assert json.loads(out)["status"] == "inconclusive"


def test_quotient_reports_the_projected_lattice(cli):
    code, out, _ = cli(["quotient", "--dec", "r1z"],
                       example_text("square_elliptic"))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["n_bar"] == {"free_rank": 1, "torsion": []}
    assert doc["n_bar_free_rank"] == 1
    assert len(doc["projection"]) == 3
    assert all(len(row) == 1 for row in doc["projection"])
    assert len(doc["m_bar_basis"]) == 1


def test_verify_s7_passes_on_the_square(cli):
    code, out, _ = cli(["verify-s7", "--dec", "r1z"],
                       example_text("square_elliptic"))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["ok"] is True
    assert doc["slice_equals_sum"] and doc["polar_dual_matches"]
    assert doc["double_slice_integral"]


def test_matrix_is_two_by_two_for_the_z_split(cli):
    code, out, _ = cli(["matrix", "--dec", "r1z"],
                       example_text("square_elliptic"))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["size"] == 2
    assert len(doc["entries"]) == 2
    assert all(len(row) == 2 for row in doc["entries"])


def test_discriminant_spans_five_powers(cli):
    code, out, _ = cli(["discriminant", "--dec", "r1z"],
                       example_text("square_elliptic"))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["lattice_rank"] == 1
    assert [t["exponents"] for t in doc["terms"]] == [[-2], [-1], [0], [1], [2]]


def test_multidegree_groups_the_segment_rays(cli):
    code, out, _ = cli(["multidegree", "--dec", "r1z"],
                       example_text("square_elliptic"))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["rays"] == [[-1], [1]]
    assert doc["coefficients"] == [2, 2]
    assert doc["groups"] == [[0, 1]]
    assert doc["degrees"] == [4]


def test_groups_text_rendering(cli):
    code, out, _ = cli(["groups", "--dec", "r1z", "--format", "text"],
                       example_text("square_elliptic"))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert "g: Z x Z" in lines
    assert "g_hat: Z x Z x Z" in lines
    assert "h_meet_g_order: 2" in lines
    assert "quotient_check: yes" in lines


def test_center_lists_the_central_monomials(cli):
    code, out, _ = cli(["center", "--dec", "r1z"],
                       example_text("square_elliptic"))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["r"] == 1 and doc["twist"] is None
    assert len(doc["elements"]) == 2
    identity, volume = doc["elements"]
    assert identity == {"h": 0, "indices": [], "square": "1"}
    assert volume["indices"] == [0, 1]
    assert volume["square"] == "-c1*c2"


def test_flatness_verdicts_drive_the_exit_code(cli):
    code, out, _ = cli(["flatness", "--dec", "r1z"],
                       example_text("square_elliptic"))
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] == "expected-flat"
    code, out, _ = cli(["flatness", "--dec", "r1"],
                       example_text("bidegree_2_n1"))
    assert code == EXIT_NEGATIVE
    assert json.loads(out)["verdict"] == "expected-nonflat"


def test_flop_walk_reports_balanced_circuits(cli):
    code, out, _ = cli(["flop-walk", "--dec", "r0", "--walks", "2",
                        "--seed", "5"],
                       example_text("square_elliptic"))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["circuits"]
    assert all(c["mu"] == 0 for c in doc["circuits"])


# ---------------------------------------------------------------------------
# failure modes and rendering


def test_example_unknown_name_exits_two(cli):
    with pytest.raises(SystemExit) as exc:
        cli(["example", "no_such_example"])
    assert exc.value.code == 2


def test_malformed_json_exits_two(cli):
    code, _, err = cli(["dualize"], "{not json")
    assert code == EXIT_INPUT
    assert "line 1" in err


def test_schema_pointer_locates_the_bad_entry(cli):
    code, _, err = cli(["dualize"],
                       cone_doc(2, [[1, "x"], [0, 1]]))
    assert code == EXIT_INPUT
    assert "$.generators[0][1]" in err


def test_wrong_schema_version_is_rejected(cli):
    text = json.dumps({"schema_version": 99, "kind": "cone",
                       "lattice_rank": 2, "generators": [[1, 0], [0, 1]]})
    code, _, err = cli(["dualize"], text)
    assert code == EXIT_INPUT
    assert "$.schema_version" in err


def test_unknown_decomposition_label_exits_two(cli):
    code, _, err = cli(["groups", "--dec", "nope"],
                       example_text("square_elliptic"))
    assert code == EXIT_INPUT
    assert "$.decompositions" in err
    assert "r1z" in err


def test_text_output_has_no_color_codes_when_piped(cli):
    code, out, _ = cli(["certify-no-central-fan", "--dec", "0",
                        "--budget", "0", "--format", "text"],
                       example_text("p2mirror_elliptic"))
    assert code == EXIT_BUDGET
    assert "\x1b" not in out
    assert "status: inconclusive" in out


# ---------------------------------------------------------------------------
# real shell pipelines through the installed entry point


def shell(pipeline):
    return subprocess.run(pipeline, shell=True, capture_output=True,
                          text=True, timeout=300)


def test_shell_pipeline_counts_the_square_slice():
    result = shell("gorcones example cube3d"
                   " | gorcones slice-points --side K --level 1"
                   " | gorcones count")
    assert result.returncode == EXIT_OK, result.stderr
    assert result.stdout.strip() == "9"


def test_shell_pipeline_counts_the_rank_six_slice():
    # 92 is what the construction enumerates; the example's notes record
    # the headline count of 96 and track the difference.
    result = shell("gorcones example calabrese_thomas"
                   " | gorcones slice-points --side K --level 1"
                   " | gorcones count")
    assert result.returncode == EXIT_OK, result.stderr
    assert result.stdout.strip() == "92"


def test_shell_pipeline_certifies_the_mirror_split():
    result = shell("gorcones example p2mirror_elliptic"
                   " | gorcones certify-no-central-fan --dec 0")
    assert result.returncode == EXIT_NEGATIVE, result.stderr
    assert json.loads(result.stdout)["status"] == "none"
