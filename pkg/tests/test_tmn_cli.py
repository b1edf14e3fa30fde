"""Tests for the tmn command-line script."""

import json

import pytest

from src.scripts.tmn import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, build_parser, main
from tests.test_group import SELF_INVERSE_LOOP


@pytest.fixture
def run(tmp_path, capsys, monkeypatch):
    """Run main() with a temporary config and return (code, stdout, stderr)."""
    monkeypatch.delenv("TMN_CONFIG", raising=False)
    monkeypatch.delenv("TMN_NODE_LIMIT", raising=False)
    monkeypatch.delenv("TMN_TIME_LIMIT", raising=False)
    config = tmp_path / "config.yaml"
    config.write_text(f'logging:\n  level: WARNING\n  file: ""\nreports:\n  dir: "{tmp_path / "reports"}"\n')

    def _run(*argv):
        code = main(["--config", str(config), *argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


def table_text(rows):
    lines = [f"order {len(rows)}"] + [" ".join(str(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


class TestParser:
    """Test argument parsing."""

    def test_requires_command(self):
        """A subcommand is mandatory."""
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_decide_arguments(self):
        """m and n are parsed as integers."""
        args = build_parser().parse_args(["decide", "S:3", "-m", "2", "-n", "3", "--budget", "100"])
        assert (args.command, args.spec, args.m, args.n, args.budget) == ("decide", "S:3", 2, 3, 100)

    def test_global_flags_after_subcommand(self):
        """--json, --verbose and --config work on either side of the subcommand."""
        args = build_parser().parse_args(["spectrum", "S:4", "--json", "-v", "--config", "alt.yaml"])
        assert args.json and args.verbose
        assert str(args.config) == "alt.yaml"

    def test_global_flags_default_when_absent(self):
        """Suppressed subcommand defaults leave the top-level values in place."""
        args = build_parser().parse_args(["--json", "info", "S:3"])
        assert args.json and not args.verbose
        assert args.config is None

    def test_usage_error_category(self, capsys):
        """Missing arguments print error:usage: and exit 2."""
        with pytest.raises(SystemExit) as exc:
            main(["decide", "S:3", "-m", "2"])
        assert exc.value.code == EXIT_INPUT
        assert "error:usage:" in capsys.readouterr().err

    def test_unknown_option_category(self, capsys):
        """Unknown options are usage errors too."""
        with pytest.raises(SystemExit) as exc:
            main(["info", "S:3", "--colour"])
        assert exc.value.code == EXIT_INPUT
        assert "error:usage: unrecognized arguments: --colour" in capsys.readouterr().err


class TestDecide:
    """Test the decide command."""

    def test_is_tmn(self, run):
        """S3 is a T(2,3)-group."""
        code, out, _ = run("decide", "S:3", "-m", "2", "-n", "3")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "IS_TMN"

    def test_not_tmn_json(self, run):
        """Q8 x S3 has a twelve-part obstruction; NOT_TMN still exits 0."""
        code, out, _ = run("--json", "decide", "Q:8*S:3", "-m", "12", "-n", "2")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["command"] == "decide"
        assert report["group"] == "Q:8*S:3"
        assert report["status"] == "NOT_TMN"
        assert len(report["certificate"]) == 12
        assert all(len(part) == 2 for part in report["certificate"])

    def test_json_after_subcommand(self, run):
        """The same decision with --json placed last."""
        code, out, _ = run("decide", "Q:8*S:3", "-m", "12", "-n", "2", "--json")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["status"] == "NOT_TMN"
        assert len(report["certificate"]) == 12

    def test_budget_exhausted(self, run):
        """A tiny node budget exits 3."""
        code, _, _ = run("decide", "Q:8*S:3", "-m", "12", "-n", "2", "--budget", "5")
        assert code == EXIT_BUDGET

    def test_bad_spec(self, run):
        """Unknown families are input errors."""
        code, _, err = run("decide", "X:3", "-m", "2", "-n", "1")
        assert code == EXIT_INPUT
        assert err.startswith("error:spec:")

    def test_bad_parameters(self, run):
        """m below 2 is rejected."""
        code, _, err = run("decide", "S:3", "-m", "1", "-n", "1")
        assert code == EXIT_INPUT
        assert "m must be at least 2" in err


class TestOtherCommands:
    """Test info, clique, oracle and spectrum."""

    def test_info_json(self, run):
        """Structure of S4."""
        code, out, _ = run("--json", "info", "S:4")
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["order"] == 24
        assert report["w"] == 10
        assert report["solvable"] and not report["nilpotent"]

    def test_clique_elementwise(self, run):
        """Both clique computations agree on D8."""
        code, out, _ = run("--json", "clique", "D:8", "--elementwise")
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["w"] == report["elementwise_w"] == 3

    def test_oracle(self, run):
        """The brute-force oracle answers small instances."""
        code, out, _ = run("oracle", "S:3", "-m", "2", "-n", "2")
        assert code == EXIT_OK
        assert out.startswith("NOT_TMN")

    def test_oracle_too_large(self, run):
        """Instances above the guard are input errors."""
        code, _, err = run("oracle", "A:5", "-m", "2", "-n", "2")
        assert code == EXIT_INPUT
        assert err.startswith("error:instance-too-large:")

    def test_spectrum_deterministic(self, run):
        """Two runs differ only in wall time."""
        first = json.loads(run("--json", "spectrum", "S:3")[1])
        second = json.loads(run("--json", "spectrum", "S:3")[1])
        first.pop("wall_time")
        second.pop("wall_time")
        assert first == second
        assert [(row["m"], row["N"]) for row in first["spectrum"]] == [(2, 2), (3, 1), (4, 1), (5, 0)]

    def test_spectrum_json_after_subcommand(self, run):
        """spectrum S:4 --json gives the S4 boundary rows."""
        code, out, _ = run("spectrum", "S:4", "--json")
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["w"] == 10
        assert [(row["m"], row["N"]) for row in report["spectrum"]][:4] == [(2, 10), (3, 6), (4, 4), (5, 4)]

    def test_spectrum_save(self, run, tmp_path):
        """--save writes a report under reports.dir."""
        code, out, _ = run("spectrum", "D:8", "--save")
        assert code == EXIT_OK
        assert (tmp_path / "reports" / "spectrum-D_8.json").exists()
        assert "saved to" in out

    def test_verify_paper_single_claim(self, run):
        """A single claim prints one line plus the summary."""
        code, out, _ = run("--json", "verify-paper", "--only", "S3.T(2,3)")
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["claims"][0]["status"] == "PASS"
        assert report["summary"]["PASS"] == 1

    def test_verify_paper_spectra(self, run):
        """The JSON report carries the spectrum rows computed for each group."""
        code, out, _ = run("verify-paper", "--only", "S4.spectrum", "--json")
        report = json.loads(out)
        assert code == EXIT_OK
        rows = report["spectra"]["S4"]
        assert all({"m", "N", "witness"} <= set(row) for row in rows)
        picked = [(row["m"], row["N"]) for row in rows if row["m"] in (2, 6, 10, 11)]
        assert picked == [(2, 10), (6, 2), (10, 2), (11, 0)]
        assert all(row["witness"] is not None for row in rows if row["N"] > 0)


class TestIngestAndExport:
    """Test file validation and Cayley export."""

    def test_valid_file(self, run, write_file, z3_cayley_text):
        """A valid table reports its order."""
        path = write_file("z3.txt", z3_cayley_text)
        code, out, _ = run("ingest", "--check", str(path))
        assert code == EXIT_OK
        assert "order 3" in out

    def test_latin_square_violation(self, run, write_file):
        """Repeated row entries are reported by category."""
        path = write_file("bad.txt", "order 3\n0 1 2\n1 1 0\n2 0 1\n")
        code, _, err = run("ingest", "--check", str(path))
        assert code == EXIT_INPUT
        assert err.startswith("error:latin-square:")

    def test_non_associative(self, run, write_file):
        """A loop that is not a group fails the full check."""
        path = write_file("loop.txt", table_text(SELF_INVERSE_LOOP))
        code, _, err = run("ingest", "--check", str(path))
        assert code == EXIT_INPUT
        assert err.startswith("error:associativity:")

    def test_parse_error(self, run, write_file):
        """Garbage header."""
        path = write_file("junk.txt", "hello\n")
        code, _, err = run("ingest", "--check", str(path))
        assert code == EXIT_INPUT
        assert err.startswith("error:parse:")

    def test_missing_file(self, run, tmp_path):
        """Unreadable paths are input errors."""
        code, _, err = run("ingest", "--check", str(tmp_path / "absent.txt"))
        assert code == EXIT_INPUT
        assert err.startswith("error:")

    def test_export_round_trip(self, run, tmp_path):
        """An exported table decides the same way as the original."""
        path = tmp_path / "s3.txt"
        assert run("export", "S:3", "-o", str(path))[0] == EXIT_OK
        assert run("ingest", "--check", str(path))[0] == EXIT_OK
        code, out, _ = run("decide", f"cayley:{path}", "-m", "2", "-n", "2")
        assert code == EXIT_OK
        assert out.startswith("NOT_TMN")
