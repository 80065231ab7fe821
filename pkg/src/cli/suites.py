"""
The verify-suite command.
"""
import sys
from pathlib import Path

import click

from src.cli.common import EXIT_FAILED, handles_errors
from src.core.config import get_settings
from src.core.errors import InputError
from src.core.models import CheckStatus
from src.core.orchestrator import SuiteOrchestrator


@click.command("verify-suite")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="Suite YAML file; defaults to default.yaml in CONDALG_SUITES_DIR.")
@click.option("--suite", "suite_id", default=None, help="Run the suite with this id from CONDALG_SUITES_DIR.")
@click.option("--list", "list_only", is_flag=True, default=False, help="List the suites in CONDALG_SUITES_DIR.")
@click.option("--seed", type=int, default=None, help="Override the suite seed.")
@click.option("--mutant", is_flag=True, default=False, help="Inject the proj2 mutant into the corpus.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="json", show_default=True)
@handles_errors
def verify_suite_command(config_path, suite_id, list_only, seed, mutant, fmt):
    """Run a verification suite and print its report; exit 0 iff every check passes."""
    settings = get_settings()
    if config_path and suite_id:
        raise InputError("--config and --suite are mutually exclusive")

    if list_only or suite_id:
        orchestrator = SuiteOrchestrator(settings.suites_dir)
        orchestrator.load_suites()
        if list_only:
            for suite in orchestrator.list_suites():
                click.echo(f"{suite.suite_id}: {suite.name} ({len(suite.checks)} checks)")
            return
        suite = orchestrator.get_suite(suite_id)
        if suite is None:
            raise InputError(f"no suite {suite_id!r} in {settings.suites_dir}")
    else:
        path = Path(config_path) if config_path else settings.suites_dir / "default.yaml"
        orchestrator = SuiteOrchestrator(path.parent)
        suite = orchestrator.load_suite_file(path)

    report = orchestrator.run_suite(suite, seed=seed, inject_mutants=True if mutant else None)
    if fmt == "json":
        click.echo(report.model_dump_json(indent=2))
    else:
        for result in report.results:
            line = f"{result.check_id}: {result.status.value} ({result.samples} samples, {result.elapsed_ms} ms)"
            if result.status == CheckStatus.FAILED:
                line += f" first counterexample {result.counterexample}"
            if result.status == CheckStatus.ERROR:
                line += f" {result.error_message}"
            click.echo(line)
        click.echo(f"suite {report.suite_id} seed {report.seed}: {'passed' if report.passed else 'failed'}")
    if not report.passed:
        sys.exit(EXIT_FAILED)


COMMANDS = [verify_suite_command]
