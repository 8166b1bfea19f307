import json

import pytest

from moncoh.cli import RunFlags, main, run_command
from moncoh.document import parse_document

from test_document import sample_root, sample_text


def run(command: str, root: dict, **kwargs) -> tuple[int, str]:
    doc = parse_document(json.dumps(root))
    return run_command(command, doc, RunFlags(**kwargs))


def run_json(command: str, root: dict, **kwargs) -> tuple[int, dict]:
    code, text = run(command, root, fmt="json", **kwargs)
    return code, json.loads(text)


class TestValidate:
    def test_clean_document_passes(self):
        code, text = run("validate", sample_root())
        assert code == 0
        assert "validate: all 9 checks passed" in text

    def test_broken_table_fails_with_witness(self):
        root = {"monoids": [{
            "name": "M", "elements": ["e", "a", "b"], "identity": "e",
            "table": [["e", "a", "b"], ["a", "a", "e"], ["b", "b", "b"]]}]}
        code, text = run("validate", root)
        assert code == 1
        assert "associativity broken at (a,b,a)" in text

    def test_bad_declared_path_fails(self):
        root = sample_root()
        root["grids"][0]["path"] = {"moves": "DD"}
        code, text = run("validate", root)
        assert code == 1
        assert "grid pair: FAIL" in text

    def test_nonzero_composition_reported(self):
        root = composition_violation_root()
        code, text = run("validate", root)
        assert code == 1
        assert "compose to a nonzero homomorphism" in text

    def test_non_surjective_system_reported(self):
        root = {"set_systems": [{
            "name": "disjoint", "points": ["p", "q"],
            "sets": [{"name": "U0", "members": ["p"]},
                     {"name": "U1", "members": ["q"]}]}]}
        code, text = run("validate", root)
        assert code == 1
        assert "misses subcollections: {U0,U1}" in text

    def test_duplicate_descriptors_noted_not_failed(self):
        root = {"descriptor_lists": [{"name": "dup", "descriptors": [
            {"operations": [{"arity": 2}]},
            {"operations": [{"arity": 2}]}]}]}
        code, text = run("validate", root)
        assert code == 0
        assert "descriptor 1 repeats an earlier class" in text

    def test_json_shape(self):
        code, body = run_json("validate", sample_root())
        assert code == 0 and body["ok"] is True
        assert body["command"] == "validate"
        assert {r["section"] for r in body["results"]} == {
            "monoid", "coefficient system", "grid", "set system",
            "descriptor list"}


class TestLeech:
    def test_frozen_table_for_c2(self):
        code, body = run_json("leech", sample_root(), monoid="C2")
        assert code == 0
        by_label = {t["coefficients"]: t["groups"] for t in body["tables"]}
        assert by_label["c2Z"] == ["Z", "0", "Z/2", "0", "Z/2"]
        assert by_label["sign"] == ["0", "Z/2", "0", "Z/2", "0"]

    def test_frozen_table_for_c3(self):
        code, body = run_json("leech", sample_root(), monoid="C3")
        assert code == 0
        assert body["tables"] == [{"monoid": "C3", "coefficients": "c3Z",
                                   "groups": ["Z", "0", "Z/3", "0", "Z/3"]}]

    def test_uncovered_monoid_gets_default_constant(self):
        code, body = run_json("leech", sample_root(), monoid="S", p_max=2)
        assert code == 0
        assert body["tables"] == [{
            "monoid": "S", "coefficients": "constant Z (default)",
            "groups": ["Z", "0", "0"]}]

    def test_unknown_monoid_is_input_error(self):
        code, text = run("leech", sample_root(), monoid="nope")
        assert code == 2
        assert "unknown monoid" in text

    def test_no_monoids_is_input_error(self):
        code, _ = run("leech", {})
        assert code == 2

    def test_convention_field_present(self):
        _, body = run_json("leech", sample_root(), monoid="C3")
        assert "ker(d^n)" in body["convention"]["indexing"]
        assert "vertical" in body["convention"]["total_sign"]


def composition_violation_root() -> dict:
    return {
        "monoids": [
            {"name": "C3", "elements": ["e", "a", "b"], "identity": "e",
             "table": [["e", "a", "b"], ["a", "b", "e"], ["b", "e", "a"]]},
            {"name": "S", "elements": ["{}", "{x}"], "identity": "{}",
             "table": [["{}", "{x}"], ["{x}", "{x}"]]},
        ],
        "coefficients": [
            {"name": "cm", "monoid": "C3", "kind": "constant", "group": "Z/2"},
            {"name": "sm", "monoid": "S", "kind": "constant", "group": "Z/2"},
        ],
        "grids": [{
            "name": "bad",
            "floors": [{"monoid": "C3", "coeff": "cm"},
                       {"monoid": "S", "coeff": "sm"}],
            "vertical": {"maps": {"[0,1]": [[1, 0]]}},
            "path": {"moves": "RD"},
            "pmax": 3,
        }],
    }


class TestSquare:
    def test_sample_grid_positions(self):
        code, body = run_json("square", sample_root(), grid="pair")
        assert code == 0
        result = body["results"][0]
        assert result["moves"] == "D"
        groups = [p["group"] for p in result["positions"]]
        tags = [p["tag"] for p in result["positions"]]
        assert groups == ["Z", "Z", "0", "Z/3", "0"]
        assert tags == ["full_cochain_group", "kernel_group",
                        "floor_leech", "floor_leech", "floor_leech"]
        assert result["local_exactness"]["all_identified"] is True

    def test_text_report_mentions_positions(self):
        code, text = run("square", sample_root())
        assert code == 0
        assert "position 0: (floor 0, degree 0) tag full_cochain_group" in text
        assert "floor identifications: all match" in text

    def test_unknown_grid_is_input_error(self):
        code, text = run("square", sample_root(), grid="nope")
        assert code == 2 and "unknown grid" in text

    def test_no_grids_is_input_error(self):
        code, _ = run("square", {})
        assert code == 2

    def test_composition_violation_fails(self):
        code, text = run("square", composition_violation_root())
        assert code == 1
        assert "grid bad: FAIL" in text


class TestTotal:
    def test_zero_family_shifted_sum(self):
        code, body = run_json("total", sample_root(), grid="pair")
        assert code == 0
        assert body["results"][0]["total"] == ["Z", "Z", "Z/2", "Z/3"]
        assert body["results"][0]["commutes"] is True

    def test_non_commuting_square_fails(self):
        root = sample_root()
        root["grids"].append({
            "name": "skew",
            "floors": [{"monoid": "C2", "coeff": "c2Z"},
                       {"monoid": "S", "coeff": "sZ"}],
            "vertical": {"maps": {"[0,1]": [[1]]}},
            "path": {"moves": "D"},
            "pmax": 2,
        })
        root["coefficients"].append(
            {"name": "sZ", "monoid": "S", "kind": "constant", "group": "Z"})
        code, text = run("total", root, grid="skew")
        assert code == 1
        assert "square at (floor 0, degree 1) does not commute" in text

    def test_sign_named_in_report(self):
        _, text = run("total", sample_root(), grid="pair")
        assert "sign: total differential" in text


class TestFs:
    def test_sample_descriptor_list(self):
        code, body = run_json("fs", sample_root(), p_max=2)
        assert code == 0
        result = body["results"][0]
        assert result["classes"] == 2
        assert result["floor_sizes"] == [2, 4]
        assert result["moves"] == "DR"
        tags = [p["tag"] for p in result["positions"]]
        assert tags[0] == "full_cochain_group"

    def test_duplicate_class_fails(self):
        root = {"descriptor_lists": [{"name": "dup", "descriptors": [
            {"operations": [{"arity": 2}]},
            {"operations": [{"arity": 2}]}]}]}
        code, text = run("fs", root)
        assert code == 1
        assert "descriptor list dup: FAIL" in text

    def test_no_lists_is_input_error(self):
        code, _ = run("fs", {})
        assert code == 2


class TestH:
    def test_seven_point_system(self):
        code, body = run_json("h", sample_root(), p_max=1)
        assert code == 0
        result = body["results"][0]
        assert result["floor_sizes"] == [2, 4, 8]
        assert result["chain"]["representatives"] == ["a", "d", "g"]
        assert result["moves"] == "DRDR"

    def test_disjoint_system_fails_naming_missing(self):
        root = {"set_systems": [{
            "name": "disjoint", "points": ["p", "q"],
            "sets": [{"name": "U0", "members": ["p"]},
                     {"name": "U1", "members": ["q"]}]}]}
        code, body = run_json("h", root)
        assert code == 1
        assert body["results"][0]["missing"] == ["{U0,U1}"]

    def test_no_systems_is_input_error(self):
        code, _ = run("h", {})
        assert code == 2


class TestDeterminism:
    @pytest.mark.parametrize("fmt", ["text", "json"])
    def test_repeated_runs_byte_identical(self, fmt):
        first = run("square", sample_root(), fmt=fmt)
        second = run("square", sample_root(), fmt=fmt)
        assert first == second

    def test_unknown_command(self):
        code, _ = run("bogus", {})
        assert code == 2


class TestMain:
    def test_end_to_end(self, tmp_path, capsys):
        path = tmp_path / "doc.json"
        path.write_text(sample_text(), encoding="utf-8")
        code = main(["leech", "--input", str(path), "--monoid", "C3"])
        out = capsys.readouterr().out
        assert code == 0
        assert "H^2 = Z/3" in out

    def test_json_flag(self, tmp_path, capsys):
        path = tmp_path / "doc.json"
        path.write_text(sample_text(), encoding="utf-8")
        code = main(["total", "--input", str(path), "--format", "json",
                     "--grid", "pair"])
        body = json.loads(capsys.readouterr().out)
        assert code == 0
        assert body["results"][0]["total"] == ["Z", "Z", "Z/2", "Z/3"]

    def test_missing_file(self, tmp_path, capsys):
        code = main(["validate", "--input", str(tmp_path / "none.json")])
        assert code == 2
        assert "cannot read" in capsys.readouterr().err

    def test_rejected_document(self, tmp_path, capsys):
        path = tmp_path / "doc.json"
        path.write_text('{"bogus": 1}', encoding="utf-8")
        code = main(["validate", "--input", str(path)])
        assert code == 2
        assert "document rejected" in capsys.readouterr().out

    def test_negative_pmax(self, tmp_path, capsys):
        path = tmp_path / "doc.json"
        path.write_text(sample_text(), encoding="utf-8")
        code = main(["leech", "--input", str(path), "--pmax", "-1"])
        assert code == 2
        assert "nonnegative" in capsys.readouterr().err
