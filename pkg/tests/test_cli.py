import json

import pytest
from click.testing import CliRunner

from rmzeta.cli import main
from rmzeta.reports import RECIPROCITY_CSV_HEADER


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


class TestCf:
    def test_golden(self, runner):
        result = invoke(runner, "cf", "golden")
        assert result.exit_code == 0
        assert "period=[1]" in result.output
        assert "matrix A: [[2, 1], [1, 1]]" in result.output
        assert "trace(A): 3" in result.output

    def test_sqrt2(self, runner):
        result = invoke(runner, "cf", "sqrt:2")
        assert result.exit_code == 0
        assert "preperiod=[1] period=[2]" in result.output

    def test_perfect_square_usage_error(self, runner):
        result = invoke(runner, "cf", "sqrt:4")
        assert result.exit_code == 2

    def test_json_output(self, runner):
        result = invoke(runner, "cf", "golden", "--output", "json")
        body = json.loads(result.output)
        assert body["continued_fraction"]["period"] == [1]


class TestK0:
    def test_trivial(self, runner):
        result = invoke(runner, "k0", "[[2]]")
        assert result.exit_code == 0
        assert "K0 = 0 (trivial)" in result.output

    def test_infinite_order_exit_code(self, runner):
        result = invoke(runner, "k0", "[[1]]", "--order")
        assert result.exit_code == 3
        assert "ℤ" in result.output

    def test_infinite_without_order_flag_is_fine(self, runner):
        result = invoke(runner, "k0", "[[1]]")
        assert result.exit_code == 0

    def test_canonical_form_needs_trusted(self, runner):
        result = invoke(runner, "k0", "[[7,3],[-1,0]]")
        assert result.exit_code == 2
        result = invoke(runner, "k0", "[[7,3],[-1,0]]", "--trusted")
        assert result.exit_code == 0
        assert "ℤ/3" in result.output

    def test_non_json_matrix_rejected(self, runner):
        result = invoke(runner, "k0", "nonsense")
        assert result.exit_code == 2


class TestCount:
    def test_with_theta(self, runner):
        result = invoke(runner, "count", "cm:-4", "5", "2", "--theta", "golden")
        assert result.exit_code == 0
        assert "n=1: count=4 bruteforce=4" in result.output
        assert "n=2: count=32 bruteforce=32" in result.output
        assert "K0.matches=false" in result.output

    def test_bad_prime_reduced(self, runner):
        result = invoke(runner, "count", "cm:-4", "2")
        assert result.exit_code == 0
        assert "unsupported" in result.output

    def test_composite_rejected(self, runner):
        result = invoke(runner, "count", "cm:-4", "10")
        assert result.exit_code == 2

    def test_csv_output(self, runner):
        result = invoke(runner, "count", "cm:-4", "5", "2", "--theta", "golden", "--output", "csv")
        lines = result.output.splitlines()
        assert lines[0] == "n,count_recursion,count_bruteforce,k0_order,k0_matches_count"
        assert lines[1] == "1,4,4,117,false"


class TestReciprocity:
    def test_text_output(self, runner):
        result = invoke(runner, "reciprocity", "cm:-4", "golden", "--primes", "5..30")
        assert result.exit_code == 0
        assert "summary: 0 match, 8 mismatch, 0 skip" in result.output

    def test_requires_primes(self, runner):
        result = invoke(runner, "reciprocity", "cm:-4", "golden")
        assert result.exit_code == 2

    def test_bad_range_rejected(self, runner):
        result = invoke(runner, "reciprocity", "cm:-4", "golden", "--primes", "abc")
        assert result.exit_code == 2

    def test_empty_range(self, runner):
        result = invoke(runner, "reciprocity", "cm:-4", "golden", "--primes", "24..28")
        assert result.exit_code == 0
        assert "summary: 0 match, 0 mismatch, 0 skip" in result.output

    def test_json_deterministic(self, runner):
        first = invoke(runner, "reciprocity", "cm:-4", "golden", "--primes", "5..30", "--output", "json")
        second = invoke(runner, "reciprocity", "cm:-4", "golden", "--primes", "5..30", "--output", "json")
        assert first.exit_code == second.exit_code == 0
        assert first.output == second.output
        json.loads(first.output)

    def test_csv_header(self, runner):
        result = invoke(runner, "reciprocity", "cm:-3", "sqrt:2", "--primes", "5..20", "--output", "csv")
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == RECIPROCITY_CSV_HEADER

    def test_out_file(self, runner, tmp_path):
        target = tmp_path / "report.json"
        result = invoke(
            runner, "reciprocity", "cm:-4", "golden",
            "--primes", "5..10", "--output", "json", "--out", str(target),
        )
        assert result.exit_code == 0
        assert json.loads(target.read_text())["summary"]["mismatch"] == 2

    def test_out_file_io_error(self, runner, tmp_path):
        target = tmp_path / "missing" / "report.json"
        result = invoke(
            runner, "reciprocity", "cm:-4", "golden",
            "--primes", "5..10", "--output", "json", "--out", str(target),
        )
        assert result.exit_code == 4


class TestLemmas:
    def test_default_run_passes(self, runner):
        result = invoke(runner, "lemmas", "--sweep-bound", "2")
        assert result.exit_code == 0
        assert "PASS" in result.output
        assert "FAIL" not in result.output

    def test_json_output(self, runner):
        result = invoke(runner, "lemmas", "--sweep-bound", "2", "--json")
        body = json.loads(result.output)
        assert body["all_passed"] is True


class TestConfig:
    def test_config_supplies_defaults(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"primes": "5..10", "output": "json"}))
        result = invoke(runner, "--config", str(cfg), "reciprocity", "cm:-4", "golden")
        assert result.exit_code == 0
        assert json.loads(result.output)["summary"]["mismatch"] == 2

    def test_flag_overrides_config(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"output": "json"}))
        result = invoke(runner, "--config", str(cfg), "reciprocity", "cm:-4", "golden", "--primes", "5..10", "--output", "csv")
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == RECIPROCITY_CSV_HEADER

    def test_missing_config_rejected(self, runner):
        result = invoke(runner, "--config", "/nonexistent/cfg.json", "lemmas")
        assert result.exit_code == 2
