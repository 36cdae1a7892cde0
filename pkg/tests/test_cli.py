from __future__ import annotations

import json
import subprocess
import sys

import pytest

from weightmagic.cli import main, run


def run_json(argv):
    code, out = run(argv + ["--format", "json"])
    return code, json.loads(out)


class TestReduce:
    def test_human(self):
        code, out = run(["reduce", "--wa", "28,12,42;84"])
        assert code == 0
        assert "reduced:        6,14,21;42" in out
        assert "full form:      1,6,14,21;42" in out
        assert "calabi-yau:     yes" in out

    def test_json(self):
        code, document = run_json(["reduce", "--wa", "28,12,42;84"])
        assert code == 0
        assert document["reduced"] == "6,14,21;42"
        assert document["permutation"] == [1, 0, 2]
        assert document["scale"] == "1/2"
        assert document["virtual_weight"] == 1
        assert document["calabi_yau"] is True

    def test_invalid_system_exits_2(self, capsys):
        assert main(["reduce", "--wa", "0,0;4"]) == 2
        assert "error:" in capsys.readouterr().err


class TestCheck:
    def test_valid_square(self):
        code, out = run(["check", "--wa", "6,14,21;42", "--wb", "6,14,21;42",
                         "--matrix", "x^7, y^3, z^2"])
        assert code == 0
        assert "classification: primitive" in out
        assert "strong:         yes" in out

    def test_integer_matrix_form(self):
        code, out = run(["check", "--wa", "6,14,21;42", "--wb", "6,14,21;42",
                         "--matrix", "7,0,0;0,3,0;0,0,2"])
        assert code == 0
        assert "matrix:         x^7, y^3, z^2" in out

    def test_recovers_column_weights(self):
        code, out = run(["check", "--wa", "1,3,5;10",
                         "--matrix", "x^5z, xy^3, z^2"])
        assert code == 0
        assert "column weights: 4,10,13;30 (recovered)" in out

    def test_json_round_trips(self):
        code, document = run_json(["check", "--wa", "1,3,5;10",
                                   "--matrix", "x^5z, xy^3, z^2"])
        assert code == 0
        assert document["verified"] and document["wb_recovered"]
        matrix = ";".join(",".join(str(c) for c in row)
                          for row in document["matrix"])
        code2, echo = run_json(["check", "--wa", document["wa"],
                                "--wb", document["wb"], "--matrix", matrix])
        assert code2 == 0
        for key in ("determinant", "classification", "strong", "monomials"):
            assert echo[key] == document[key]

    def test_failed_relation_exits_1(self, capsys):
        assert main(["check", "--wa", "2,3;6", "--wb", "2,3;6",
                     "--matrix", "3,0;1,1"]) == 1
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "check failed: row 2 has a-weighted sum 5" in captured.err

    def test_failed_relation_json_document(self, capsys):
        assert main(["check", "--wa", "2,3;6", "--wb", "2,3;6",
                     "--matrix", "3,0;1,1", "--format", "json"]) == 1
        document = json.loads(capsys.readouterr().out)
        assert document["verified"] is False
        assert "row 2" in document["error"]

    def test_unparseable_matrix_exits_2(self, capsys):
        assert main(["check", "--wa", "1,1;2", "--matrix", "x^2, 5q"]) == 2
        assert "error:" in capsys.readouterr().err


class TestSearch:
    def test_human(self):
        code, out = run(["search", "--wa", "2,3;6",
                         "--filter", "primitive", "--strong"])
        assert code == 0
        assert "1 square(s) coupling 2,3;6 and 2,3;6" in out
        assert "  1. x^3, y^2   [primitive, strong]" in out

    def test_json_counts_all_squares(self):
        code, document = run_json(["search", "--wa", "1,1;2"])
        assert code == 0
        assert document["count"] == 2
        assert document["results"][0]["matrix"] == [[2, 0], [0, 2]]
        assert document["results"][0]["classification"] == "plain"
        assert document["results"][1]["classification"] == "almost_primitive"

    def test_explicit_column_weights(self):
        code, document = run_json(["search", "--wa", "1,3,5;10",
                                   "--wb", "4,10,13;30",
                                   "--filter", "almost", "--strong"])
        assert code == 0
        assert document["count"] == 1
        assert document["results"][0]["monomials"] == "x^5z, xy^3, z^2"
        assert document["filter"] == "almost_primitive"


class TestZeta:
    def test_human(self):
        code, out = run(["zeta", "--wa", "1,3,5;10",
                         "--matrix", "x^5z, xy^3, z^2"])
        assert code == 0
        assert "zeta: (1-t^2)(1-t^10)^2 / (1-t)" in out

    def test_saito_dual_flag(self):
        code, out = run(["zeta", "--wa", "1,3,5;10",
                         "--matrix", "x^5z, xy^3, z^2", "--saito-dual"])
        assert code == 0
        assert "saito dual: (1-t^10) / (1-t)^2(1-t^5)" in out

    def test_expand_flag(self):
        code, out = run(["zeta", "--wa", "6,14,21;42",
                         "--matrix", "x^7, y^3, z^2", "--expand", "14"])
        assert code == 0
        assert "series: [1, 1, 0, -1, -1, 0, 1, 0, -1, -1, 0, 1, 1, 0, 0]" \
            in out

    def test_json_factors(self):
        code, document = run_json(["zeta", "--wa", "1,3,5;10",
                                   "--matrix", "x^5z, xy^3, z^2"])
        assert code == 0
        assert document["zeta"]["factors"] == [[1, -1], [2, 1], [10, 2]]

    def test_non_reduced_weights_exit_2(self, capsys):
        assert main(["zeta", "--wa", "2,4;12", "--wb", "2,4;12",
                     "--matrix", "6,0;0,3"]) == 2
        assert "reduce first" in capsys.readouterr().err


class TestInvariants:
    def test_surface(self):
        code, out = run(["invariants", "--wa", "4,10,13;30",
                         "--wb", "1,3,5;10", "--matrix", "x^5y, y^3, xz^2"])
        assert code == 0
        for line in ("mu:  17", "mu0: 0", "rho: 5",
                     "zeta value at 1: 6", "discriminant: 6"):
            assert line in out

    def test_json(self):
        code, document = run_json(["invariants", "--wa", "4,10,13;30",
                                   "--wb", "1,3,5;10",
                                   "--matrix", "x^5y, y^3, xz^2"])
        assert code == 0
        assert (document["mu"], document["mu0"], document["rho"]) == (17, 0, 5)
        assert document["zeta_value_at_one"] == "6"
        assert document["discriminant"] == "6"

    def test_curve_has_no_picard_number(self):
        code, out = run(["invariants", "--wa", "2,3;6",
                         "--matrix", "x^3, y^2"])
        assert code == 0
        assert "rho: n/a" in out
        assert "zeta value at 1: 1" in out
        assert "discriminant" not in out


class TestPolar:
    def test_human(self):
        code, out = run(["polar", "--wa", "6,14,21;42"])
        assert code == 0
        assert "closed form matches: yes" in out

    def test_json(self):
        code, document = run_json(["polar", "--wa", "6,14,21;42"])
        assert code == 0
        assert document["polar_dual"][-1] == ["-6", "-14", "-21"]
        assert document["closed_form_matches"] is True

    def test_zero_virtual_weight_exits_2(self, capsys):
        assert main(["polar", "--wa", "1,2,3;6"]) == 2
        assert "virtual weight 0" in capsys.readouterr().err

    def test_origin_outside_exits_2(self, capsys):
        assert main(["polar", "--wa", "3,4,5;10"]) == 2
        assert "not in the interior" in capsys.readouterr().err


class TestCatalog:
    def test_list_human(self):
        code, out = run(["catalog", "list"])
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 120
        assert any("T2#1 no. 14 E_12" in line for line in lines)

    def test_list_json_with_early_format_flag(self):
        code, out = run(["catalog", "--format", "json", "list"])
        assert code == 0
        assert json.loads(out)["count"] == 120

    def test_show_by_name(self):
        code, document = run_json(["catalog", "show", "E_12"])
        assert code == 0
        assert document["count"] == 1
        record = document["entries"][0]
        assert record["weights"] == "6,14,21;42"
        assert record["verification"]["ok"] is True

    def test_show_by_index(self):
        code, document = run_json(["catalog", "show", "14"])
        assert code == 0
        assert document["count"] == 4

    def test_show_fuchsian_row_includes_expected_values(self):
        code, document = run_json(["catalog", "show", "Z_2,0"])
        assert code == 0
        fuchs = [r for r in document["entries"] if r["table"] == "Fuchs"]
        assert fuchs and fuchs[0]["expected"]["mu"] == 21

    def test_show_unknown_key_exits_2(self, capsys):
        assert main(["catalog", "show", "9999"]) == 2
        assert "no catalog entry matches 9999" in capsys.readouterr().err

    def test_verify_passes(self):
        code, document = run_json(["catalog", "verify"])
        assert code == 0
        assert document["passed"] is True
        assert len(document["criteria"]) == 10
        assert all(c["passed"] for c in document["criteria"])
        assert sum(t["entries"] for t in document["tables"].values()) == 120
        assert all(t["ok"] == t["entries"]
                   for t in document["tables"].values())

    def test_verify_from_tampered_path_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "catalog.json"
        bad.write_text('{"schema_version": 99, "entries": []}')
        assert main(["catalog", "--catalog-path", str(bad), "verify"]) == 2
        assert "schema version" in capsys.readouterr().err

    def test_missing_catalog_path_exits_2(self, tmp_path, capsys):
        assert main(["catalog", "--catalog-path",
                     str(tmp_path / "absent.json"), "verify"]) == 2
        assert "error:" in capsys.readouterr().err


class TestArgumentErrors:
    def test_missing_required_argument(self):
        with pytest.raises(SystemExit) as info:
            run(["check"])
        assert info.value.code == 2

    def test_unknown_verb(self):
        with pytest.raises(SystemExit) as info:
            run(["frobnicate"])
        assert info.value.code == 2

    def test_bad_filter_value(self):
        with pytest.raises(SystemExit) as info:
            run(["search", "--wa", "1,1;2", "--filter", "strict"])
        assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "weightmagic", "reduce", "--wa", "6,14,21;42"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "reduced:        6,14,21;42" in proc.stdout
