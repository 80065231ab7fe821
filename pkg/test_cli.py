"""
Tests for the command line: output formats and exit codes.
"""
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

from src import __version__
from src.cli.main import cli
from src.core.documents import serialize_algebra
from src.core.generators import proj2_mutant

ROOT = Path(__file__).parent
FIXTURES = ROOT / "fixtures"
PROJ2 = str(FIXTURES / "proj2.json")
GLOB2 = str(FIXTURES / "glob2.json")
PROJ2_DUAL = str(FIXTURES / "proj2_dual.json")


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def mutant_file(tmp_path):
    path = tmp_path / "mutant.json"
    path.write_text(serialize_algebra(proj2_mutant()), encoding="utf-8")
    return str(path)


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


class TestCheck:
    def test_holds(self, runner):
        result = runner.invoke(cli, ["check", PROJ2])
        assert result.exit_code == 0
        assert result.stdout.strip() == "CA: holds"

    def test_fails_with_counterexample(self, runner):
        result = runner.invoke(cli, ["check", "--axiom", "C1star", PROJ2])
        assert result.exit_code == 1
        assert result.stdout.strip() == 'C1star: fails at {"a": 0}'

    def test_mutant(self, runner, mutant_file):
        result = runner.invoke(cli, ["check", mutant_file])
        assert result.exit_code == 1
        assert 'CA: fails at {"a": 1, "b": 0, "c": 2}' in result.stdout

    def test_json(self, runner):
        result = runner.invoke(cli, ["check", "--format", "json", "--axiom", "C5", "--axiom", "C6", GLOB2])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["command"] == "check"
        assert report["verdicts"] == [{"law": "C5", "holds": True}, {"law": "C6", "holds": True}]
        assert report["inputs"]["axioms"] == ["C5", "C6"]

    def test_unknown_axiom(self, runner):
        result = runner.invoke(cli, ["check", "--axiom", "C9", PROJ2])
        assert result.exit_code == 2
        assert "error:" in result.output

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["check", str(tmp_path / "missing.json")])
        assert result.exit_code == 2

    def test_frame_document_is_rejected(self, runner):
        assert runner.invoke(cli, ["check", PROJ2_DUAL]).exit_code == 2

    def test_malformed_document(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"type": "conditional-algebra", "atoms": 1, "cond": [[0, 1]]}', encoding="utf-8")
        result = runner.invoke(cli, ["check", str(path)])
        assert result.exit_code == 2
        assert "rows" in result.output


class TestAlgebraCommands:
    def test_classify(self, runner):
        assert runner.invoke(cli, ["classify", GLOB2]).stdout.strip() == "CA PSB PsC SIA S2IA"
        result = runner.invoke(cli, ["classify", PROJ2])
        assert result.exit_code == 0
        assert result.stdout.strip() == "CA"

    def test_classify_json(self, runner):
        report = json.loads(runner.invoke(cli, ["classify", "--format", "json", PROJ2]).stdout)
        assert report["result"] == ["CA"]
        assert {v["law"]: v["holds"] for v in report["verdicts"]}["PSB"] is False

    def test_dual_matches_fixture(self, runner):
        result = runner.invoke(cli, ["dual", PROJ2])
        assert result.exit_code == 0
        assert result.stdout == Path(PROJ2_DUAL).read_text(encoding="utf-8")

    def test_em(self, runner):
        result = runner.invoke(cli, ["em", GLOB2])
        assert result.stdout == Path(GLOB2).read_text(encoding="utf-8")

    def test_roundtrip_both_kinds(self, runner):
        assert runner.invoke(cli, ["roundtrip", PROJ2]).stdout.strip() == "co_es_roundtrip: holds"
        assert runner.invoke(cli, ["roundtrip", PROJ2_DUAL]).stdout.strip() == "es_co_roundtrip: holds"

    def test_roundtrip_of_mutant(self, runner, mutant_file):
        assert runner.invoke(cli, ["roundtrip", mutant_file]).exit_code == 2

    def test_correspond(self, runner):
        result = runner.invoke(cli, ["correspond", "--axiom", "C6", PROJ2])
        assert result.exit_code == 0
        assert result.stdout.strip() == "correspondence: holds"
        assert runner.invoke(cli, ["correspond", "--axiom", "C2", PROJ2]).exit_code == 2

    def test_subalgebras(self, runner):
        result = runner.invoke(cli, ["subalgebras", "--format", "json", PROJ2])
        assert result.exit_code == 0
        rows = json.loads(result.stdout)["result"]
        assert [row["elements"] for row in rows] == [[0, 3], [0, 1, 2, 3]]
        assert all(row["closed"] and row["c_equivalence"] for row in rows)

    def test_congruences(self, runner):
        result = runner.invoke(cli, ["congruences", GLOB2])
        assert result.exit_code == 0
        assert result.stdout.splitlines() == ["congruence_duality: holds", "T-closed: 0 3"]

    def test_mma(self, runner):
        result = runner.invoke(cli, ["mma", GLOB2])
        assert result.exit_code == 0
        assert result.stdout.splitlines() == [
            "MMA: holds", "mma_roundtrip: holds", "q_monotonicity: holds", "qa_equals_box_phi: holds",
        ]

    def test_extensions(self, runner):
        result = runner.invoke(cli, ["extensions", "--format", "json", PROJ2])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["result"]["pi"] == [[0, 1, 2, 3]] * 4
        assert [v["law"] for v in report["verdicts"]] == ["finite_collapse", "smoothness"]


class TestFrameCommands:
    def test_cm(self, runner):
        result = runner.invoke(cli, ["cm", PROJ2_DUAL])
        assert result.exit_code == 0
        assert result.stdout == Path(PROJ2).read_text(encoding="utf-8")

    def test_canonicity(self, runner):
        result = runner.invoke(cli, ["canonicity", "--cond", "T5", PROJ2_DUAL])
        assert result.exit_code == 0
        assert result.stdout.strip() == "canonicity: holds"

    def test_canonicity_unknown_condition(self, runner):
        assert runner.invoke(cli, ["canonicity", "--cond", "T2", PROJ2_DUAL]).exit_code == 2


class TestSearch:
    def test_exhaustive(self, runner):
        result = runner.invoke(cli, ["search", "--kind", "exhaustive", "--atoms", "1", "--limit", "5"])
        assert result.exit_code == 0
        assert result.stdout.count('"type": "conditional-algebra"') == 3

    def test_nothing_found(self, runner):
        result = runner.invoke(cli, ["search", "--kind", "exhaustive", "--atoms", "1", "--require", "C1",
                                     "--forbid", "C1"])
        assert result.exit_code == 0
        assert result.stdout.strip() == "no algebra found"

    def test_json_records_seed(self, runner):
        result = runner.invoke(cli, ["search", "--format", "json", "--atoms", "2", "--seed", "4", "--limit", "2"])
        report = json.loads(result.stdout)
        assert report["seed"] == 4
        assert len(report["result"]) == 2
        assert report["inputs"]["require"] == ["C1", "C2", "C3"]

    def test_exhaustive_too_large(self, runner):
        assert runner.invoke(cli, ["search", "--kind", "exhaustive", "--atoms", "3"]).exit_code == 2

    def test_bad_bounds(self, runner):
        assert runner.invoke(cli, ["search", "--min-atoms", "3", "--max-atoms", "1"]).exit_code == 2


SMALL_SUITE = """
suite_id: cli-small
name: "CLI"
seed: 3
corpus:
  exhaustive_max_atoms: 0
  structured_samples: 4
  structured_atoms: [2]
  frame_samples: 3
  frame_max_points: 2
checks:
  - id: sanity
    check: corpus_sanity
  - id: representation
    check: representation
    depends_on: [sanity]
"""


class TestVerifySuite:
    def test_passing_suite(self, runner, tmp_path):
        path = tmp_path / "small.yaml"
        path.write_text(SMALL_SUITE, encoding="utf-8")
        result = runner.invoke(cli, ["verify-suite", "--config", str(path)])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["passed"] is True
        assert report["seed"] == 3

    def test_mutant_flag(self, runner, tmp_path):
        path = tmp_path / "small.yaml"
        path.write_text(SMALL_SUITE, encoding="utf-8")
        result = runner.invoke(cli, ["verify-suite", "--config", str(path), "--mutant", "--format", "text"])
        assert result.exit_code == 1
        lines = result.stdout.splitlines()
        assert lines[0].startswith("sanity: failed")
        assert lines[1].startswith("representation: skipped")
        assert lines[-1] == "suite cli-small seed 3: failed"

    def test_invalid_suite(self, runner, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("suite_id: bad\nname: Bad\nchecks:\n  - id: a\n    check: nope\n", encoding="utf-8")
        assert runner.invoke(cli, ["verify-suite", "--config", str(path)]).exit_code == 2

    def test_suites_dir_from_environment(self, runner, tmp_path):
        (tmp_path / "default.yaml").write_text(SMALL_SUITE, encoding="utf-8")
        result = runner.invoke(cli, ["verify-suite", "--seed", "8"], env={"CONDALG_SUITES_DIR": str(tmp_path)})
        assert result.exit_code == 0
        assert json.loads(result.stdout)["seed"] == 8

    def test_suite_by_id(self, runner, tmp_path):
        (tmp_path / "small.yaml").write_text(SMALL_SUITE, encoding="utf-8")
        (tmp_path / "broken.yaml").write_text("suite_id: [unclosed", encoding="utf-8")
        env = {"CONDALG_SUITES_DIR": str(tmp_path)}
        result = runner.invoke(cli, ["verify-suite", "--suite", "cli-small"], env=env)
        assert result.exit_code == 0
        assert json.loads(result.stdout)["suite_id"] == "cli-small"
        assert runner.invoke(cli, ["verify-suite", "--suite", "missing"], env=env).exit_code == 2

    def test_list(self, runner, tmp_path):
        (tmp_path / "small.yaml").write_text(SMALL_SUITE, encoding="utf-8")
        result = runner.invoke(cli, ["verify-suite", "--list"], env={"CONDALG_SUITES_DIR": str(tmp_path)})
        assert result.exit_code == 0
        assert result.stdout == "cli-small: CLI (2 checks)\n"

    def test_config_and_suite_conflict(self, runner, tmp_path):
        path = tmp_path / "small.yaml"
        path.write_text(SMALL_SUITE, encoding="utf-8")
        assert runner.invoke(cli, ["verify-suite", "--config", str(path), "--suite", "cli-small"]).exit_code == 2


def _run_entry_point(*args, log_level="DEBUG"):
    env = dict(os.environ, CONDALG_LOG_LEVEL=log_level)
    return subprocess.run(
        [sys.executable, str(ROOT / "main.py"), *args],
        cwd=ROOT, env=env, capture_output=True, text=True, timeout=120,
    )


class TestEntryPoint:
    """Run the real entry point so that import-time logging is exercised."""

    def test_json_stdout_is_a_single_document(self):
        result = _run_entry_point("dual", PROJ2, "--format", "json")
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["command"] == "dual"
        assert report["result"]["points"] == 2

    def test_text_stdout_matches_fixture(self):
        result = _run_entry_point("dual", PROJ2)
        assert result.returncode == 0, result.stderr
        assert result.stdout == Path(PROJ2_DUAL).read_text(encoding="utf-8")

    def test_logs_are_json_lines_on_stderr(self):
        result = _run_entry_point("--verbose", "dual", PROJ2, "--format", "json")
        assert result.returncode == 0
        json.loads(result.stdout)
        lines = [line for line in result.stderr.splitlines() if line.strip()]
        assert lines
        for line in lines:
            assert "event" in json.loads(line)
