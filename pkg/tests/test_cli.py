"""
Tests for the command-line interface.
"""

from __future__ import annotations

import json

import pytest

from pointedposets.cli import build_parser, run
from pointedposets.settings import override_settings


class TestCommands:
    """One call per subcommand."""

    def test_charpoly(self, capsys):
        assert run(["charpoly", "--family", "A", "--n", "3"]) == 0
        out = capsys.readouterr().out
        assert "PASS  A(n=3)" in out
        assert "x^2-6x+9" in out

    def test_charpoly_negative_control(self, capsys):
        assert run(["charpoly", "--family", "B_prime", "--n", "2", "--self-test-negative"]) == 1
        assert "polynomial differs" in capsys.readouterr().out

    def test_charpoly_without_closed_form(self, capsys):
        assert run(["charpoly", "--family", "betaB", "--n", "1"]) == 0
        assert "no closed form" in capsys.readouterr().out

    def test_verify(self, capsys):
        assert run(["verify", "--family", "A", "--max-n", "3"]) == 0
        assert capsys.readouterr().out.startswith("theorems A (n <= 3): 9 passed, 0 failed")

    def test_verify_stops_early(self, capsys):
        code = run(
            ["verify", "--family", "all", "--max-n", "2", "--self-test-negative", "--max-failures", "1"]
        )
        assert code == 1
        assert "(stopped early)" in capsys.readouterr().out

    def test_counts_json(self, capsys):
        assert run(["counts", "--family", "A", "--n", "3", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        row = payload["rows"][0]
        assert payload["passed"] is True
        assert row["by_rank"] == ["1", "6", "3"]
        assert row["total"] == "10"

    def test_enumerate(self, capsys):
        assert run(["enumerate", "--family", "A_fixed", "--n", "3", "--i", "1"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "A_fixed(n=3, i=1): 6 elements"
        assert len(out) == 7

    def test_enumerate_csv(self, capsys):
        assert run(["enumerate", "--family", "A", "--n", "2", "--format", "csv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "element,rank,covers"
        assert len(lines) == 4

    def test_csv_ends_with_one_newline(self, tmp_path, capsys):
        assert run(["enumerate", "--family", "A", "--n", "2", "--format", "csv"]) == 0
        out = capsys.readouterr().out
        assert out.endswith("\n")
        assert not out.endswith("\n\n")
        target = tmp_path / "elements.csv"
        args = ["enumerate", "--family", "A", "--n", "2", "--format", "csv", "--out", str(target)]
        assert run(args) == 0
        assert target.read_text() == out

    def test_semimodularity(self, capsys):
        assert run(["semimodularity", "--family", "A", "--n", "3"]) == 1
        out = capsys.readouterr().out
        assert "FAIL  A(n=3) semimodular  witness" in out

    def test_homology(self, capsys):
        assert run(["homology", "--family", "A_fixed", "--n", "3", "--i", "1"]) == 0
        out = capsys.readouterr().out
        assert "PASS  A_fixed(n=3, i=1) Cohen-Macaulay" in out
        assert "rank 3, expected 3" in out

    def test_homology_single_interval(self, capsys):
        code = run(["homology", "--family", "A", "--n", "3", "--top", "{1*23}", "--format", "json"])
        assert code == 0
        row = json.loads(capsys.readouterr().out)["rows"][0]
        assert row["rank"] == "2"
        assert row["betti"] == {"-1": "0", "0": "3"}

    def test_hopf(self, capsys):
        assert run(["hopf", "--n", "4"]) == 0
        out = capsys.readouterr().out
        assert "1⊗a_3 + 4 a_2⊗a_2 + a_3⊗1" in out
        assert "PASS  μ_4  -16" in out

    def test_identities(self, capsys):
        assert run(["identities", "--lemma", "facteur", "--max-n", "3"]) == 0
        assert "PASS  facteur" in capsys.readouterr().out

    def test_identities_negative_control(self, capsys):
        args = ["identities", "--lemma", "usefulB", "--max-n", "3", "--self-test-negative"]
        assert run(args) == 1
        assert "FAIL  usefulB" in capsys.readouterr().out

    def test_coxeter(self, capsys):
        assert run(["coxeter", "--max-n", "2"]) == 0
        assert "A(n=2) h=2" in capsys.readouterr().out

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "report.txt"
        assert run(["charpoly", "--family", "A", "--n", "2", "--out", str(target)]) == 0
        assert capsys.readouterr().out == ""
        assert target.read_text().startswith("characteristic polynomial: 1 passed")


class TestUsageErrors:
    """Exit status 2 for bad input."""

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["charpoly", "--family", "A"],
            ["charpoly", "--family", "A", "--n", "0"],
            ["charpoly", "--family", "A_fixed", "--n", "3", "--i", "4"],
            ["homology", "--family", "A", "--n", "3", "--bottom", "{1*|2*|3*}"],
            ["hopf", "--n", "1"],
            ["identities", "--lemma", "facteur", "--max-n", "0"],
            ["verify", "--family", "C"],
        ],
    )
    def test_exit_two(self, argv, capsys):
        assert run(argv) == 2

    def test_error_message(self, capsys):
        run(["charpoly", "--family", "A", "--n", "0"])
        assert capsys.readouterr().err.startswith("error: ")

    @pytest.mark.parametrize(
        "argv",
        [
            ["counts", "--family", "A", "--n", "3"],
            ["enumerate", "--family", "A", "--n", "2"],
            ["semimodularity", "--family", "A", "--n", "3"],
            ["homology", "--family", "A_fixed", "--n", "3", "--i", "1"],
            ["hopf", "--n", "3"],
            ["coxeter", "--max-n", "2"],
        ],
        ids=lambda argv: argv[0],
    )
    def test_negative_control_unsupported(self, argv, capsys):
        assert run([*argv, "--self-test-negative"]) == 2
        assert "has no negative control" in capsys.readouterr().err

    def test_homology_above_bound(self, capsys):
        with override_settings(homology_a_max_n=2):
            assert run(["homology", "--family", "A_fixed", "--n", "3", "--i", "1"]) == 2
        assert "homology bound" in capsys.readouterr().err

    def test_element_cap(self, capsys):
        assert run(["enumerate", "--family", "A", "--n", "4", "--cap", "20"]) == 2
        assert "error: " in capsys.readouterr().err

    def test_help(self, capsys):
        assert run(["--help"]) == 0
        assert "pointedposets" in capsys.readouterr().out


def test_parser_commands():
    parser = build_parser()
    args = parser.parse_args(["hopf"])
    assert (args.n, args.coassociative_max_n) == (6, 5)
    args = parser.parse_args(["identities", "--lemma", "facteur", "--lemma", "usefulB"])
    assert args.lemma == ["facteur", "usefulB"]
