"""
Suite Orchestrator - runs verification suites defined in YAML
"""
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional

import networkx as nx
import structlog
import yaml
from pydantic import ValidationError

from src.core.acceptance import ACCEPTANCE_CHECKS, Corpus, build_corpus
from src.core.errors import InputError
from src.core.models import CheckResult, CheckStatus, SuiteCheck, SuiteDefinition, SuiteReport

logger = structlog.get_logger(__name__)


class SuiteOrchestrator:
    def __init__(self, suites_dir: Optional[Path] = None):
        self._suites_dir = suites_dir or Path(__file__).parent.parent.parent / "suites"
        self._suites: Dict[str, SuiteDefinition] = {}

    def load_suites(self):
        """Load every suite definition in the suites directory"""
        if not self._suites_dir.exists():
            logger.warning("Suites directory not found", path=str(self._suites_dir))
            return

        for yaml_file in sorted(self._suites_dir.glob("*.yaml")):
            try:
                suite = self.load_suite_file(yaml_file)
                self._suites[suite.suite_id] = suite
                logger.info("Suite loaded", suite_id=suite.suite_id, name=suite.name)
            except InputError as e:
                logger.error("Failed to load suite", file=str(yaml_file), error=str(e))

        logger.info("Loaded suites", count=len(self._suites))

    def load_suite_file(self, path: Path) -> SuiteDefinition:
        """Parse and validate one suite file"""
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except OSError as e:
            raise InputError(f"cannot read suite {path}: {e.strerror}")
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            raise InputError(
                f"malformed suite {path}",
                line=mark.line + 1 if mark else None,
                column=mark.column + 1 if mark else None,
            )
        if not isinstance(data, dict):
            raise InputError(f"suite {path} must be a mapping")
        try:
            suite = SuiteDefinition(**data)
        except ValidationError as e:
            raise InputError(f"invalid suite {path}: {e.errors()[0]['msg']}")
        problem = self._validate_suite(suite)
        if problem:
            raise InputError(f"invalid suite {path}: {problem}")
        return suite

    def _validate_suite(self, suite: SuiteDefinition) -> Optional[str]:
        """Return the first problem with a suite definition, if any"""
        G = nx.DiGraph()

        check_ids = {check.id for check in suite.checks}
        if len(check_ids) != len(suite.checks):
            return "duplicate check ids"
        for check in suite.checks:
            G.add_node(check.id)

            if check.check not in ACCEPTANCE_CHECKS:
                logger.error("Unknown check", check_id=check.id, check=check.check)
                return f"unknown check {check.check!r} in node {check.id!r}"

            for dep in check.depends_on:
                if dep not in check_ids:
                    logger.error("Unknown dependency", check_id=check.id, dependency=dep)
                    return f"unknown dependency {dep!r} of node {check.id!r}"
                G.add_edge(dep, check.id)

        if not nx.is_directed_acyclic_graph(G):
            logger.error("Suite contains cycles", suite_id=suite.suite_id)
            return "check graph contains a cycle"
        return None

    def list_suites(self) -> List[SuiteDefinition]:
        return list(self._suites.values())

    def get_suite(self, suite_id: str) -> Optional[SuiteDefinition]:
        return self._suites.get(suite_id)

    def run_suite(
        self,
        suite: SuiteDefinition,
        seed: Optional[int] = None,
        inject_mutants: Optional[bool] = None,
    ) -> SuiteReport:
        """Build the corpus once and run the checks in topological order"""
        start_time = time.time()
        started_at = datetime.now(timezone.utc)
        run_seed = suite.seed if seed is None else seed
        corpus_config = suite.corpus
        if inject_mutants is not None:
            corpus_config = corpus_config.model_copy(update={"inject_mutants": inject_mutants})

        logger.info("Suite run started", suite_id=suite.suite_id, seed=run_seed)
        corpus = build_corpus(corpus_config, run_seed)

        G = nx.DiGraph()
        for check in suite.checks:
            G.add_node(check.id)
            for dep in check.depends_on:
                G.add_edge(dep, check.id)

        checks = {check.id: check for check in suite.checks}
        results: Dict[str, CheckResult] = {}
        for check_id in nx.lexicographical_topological_sort(G):
            check = checks[check_id]
            blocked = [dep for dep in check.depends_on if results[dep].status != CheckStatus.PASSED]
            if blocked:
                logger.warning("Check skipped", check_id=check_id, blocked_by=blocked)
                results[check_id] = CheckResult(
                    check_id=check_id,
                    check=check.check,
                    status=CheckStatus.SKIPPED,
                    detail={"blocked_by": blocked},
                )
                continue
            results[check_id] = self._run_check(check, corpus)

        ordered = [results[check.id] for check in suite.checks]
        passed = all(result.status == CheckStatus.PASSED for result in ordered)
        report = SuiteReport(
            suite_id=suite.suite_id,
            seed=run_seed,
            passed=passed,
            corpus=corpus.counts(),
            results=ordered,
            elapsed_ms=int((time.time() - start_time) * 1000),
            started_at=started_at,
        )
        logger.info("Suite run completed", suite_id=suite.suite_id, passed=passed, elapsed_ms=report.elapsed_ms)
        return report

    def _run_check(self, check: SuiteCheck, corpus: Corpus) -> CheckResult:
        """Run a single check"""
        start_time = time.time()
        result = CheckResult(check_id=check.id, check=check.check)
        try:
            outcome = ACCEPTANCE_CHECKS[check.check](corpus, check.config)
            result.samples = outcome.samples
            result.failures = outcome.failures
            result.counterexample = outcome.counterexample
            result.detail = outcome.detail
            result.status = CheckStatus.PASSED if outcome.passed else CheckStatus.FAILED
            if not outcome.passed:
                logger.error("Check failed", check_id=check.id, failures=outcome.failures,
                             counterexample=outcome.counterexample)
        except Exception as e:
            logger.error("Check execution failed", check_id=check.id, error=str(e))
            result.status = CheckStatus.ERROR
            result.error_message = str(e)

        result.elapsed_ms = int((time.time() - start_time) * 1000)
        logger.info("Check finished", check_id=check.id, status=result.status.value, elapsed_ms=result.elapsed_ms)
        return result
