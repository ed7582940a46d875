"""
Verification Pipeline Module

Runs a suite of checks for one singularity index and bounds, times each
check, records audit events and assembles the report.
"""

import hashlib
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional

from .audit_events import AuditWriter
from .errors import NcMcKayError
from .report_builder import CheckResult, ReportBuilder
from .suites import Check, VerificationContext, checks_for

logger = logging.getLogger(__name__)


class VerificationPipeline:
    def __init__(self, config: Dict[str, Any]):
        """
        Initialize the pipeline from a loaded configuration.

        Args:
            config: dictionary returned by load_config
        """
        self.config = config
        self.limits = config.get('limits', {})
        self.verification = config.get('verification', {})
        self.audit_config = config.get('audit', {})
        self.report_builder = ReportBuilder(creator_name="ncmckay")

    def make_context(self, n: int, deg_xy: int, deg_t: int) -> VerificationContext:
        max_n = self.limits.get('max_n', 4)
        if not 0 <= n <= max_n:
            raise ValueError(f"n must lie in [0, {max_n}], got {n}")
        if deg_xy < 1 or deg_t < 1:
            raise ValueError(f"Degree bounds must be positive, got ({deg_xy}, {deg_t})")
        return VerificationContext(
            n=n,
            deg_xy=deg_xy,
            deg_t=deg_t,
            max_unknowns=self.limits.get('max_unknowns'),
            phi_samples=self.verification.get('phi_samples', 50),
            phi_degree=self.verification.get('phi_degree', 4),
            solver_samples=self.verification.get('solver_samples', 100),
            seed=self.verification.get('seed', 0),
        )

    def run_check(self, check: Check, ctx: VerificationContext, audit: Optional[AuditWriter] = None) -> CheckResult:
        """
        Run one check; any exception becomes an "error" result instead of aborting the run.
        """
        start = time.perf_counter()
        try:
            passed, detail, witness = check.fn(ctx)
            result = self.report_builder.create_result(check.full_name, check.citation, passed, detail, witness)
        except NcMcKayError as e:
            logger.error(f"Check {check.full_name} raised {type(e).__name__}: {e}")
            result = self.report_builder.create_error(check.full_name, check.citation, e)
        except Exception as e:
            logger.exception(f"Check {check.full_name} failed unexpectedly: {e}")
            result = self.report_builder.create_error(check.full_name, check.citation, e)
        duration = time.perf_counter() - start
        logger.info(f"Check {check.full_name}: {result.status} in {duration:.2f}s")
        if audit is not None:
            audit.check_completed(check.full_name, result.status, duration)
        return result

    def run(self, suite: str, n: int, deg_xy: int, deg_t: int) -> Dict[str, Any]:
        """
        Run every check of a suite and build the report.

        Args:
            suite: "scheme", "sheaves", "tilting", "cbh", "iso" or "all"
            n: singularity index
            deg_xy: chart-0 filtration degree bound
            deg_t: t-degree bound

        Returns:
            The report dictionary; report["status"] is "pass" only when every check passed
        """
        ctx = self.make_context(n, deg_xy, deg_t)
        try:
            checks = checks_for(suite, n)
        except KeyError as e:
            raise ValueError(str(e)) from e

        audit = None
        if self.audit_config.get('enabled'):
            audit = AuditWriter(
                self.audit_config.get('path', 'audit/ncmckay_audit.ndjson'),
                run_id=hashlib.md5(f"{suite}:{n}:{deg_xy}:{deg_t}:{time.time()}".encode()).hexdigest(),
                context={"suite": suite, "n": n, "bounds": ctx.bounds()},
            )

        logger.info(f"Running suite {suite} for n={n} with {len(checks)} checks, bounds {ctx.bounds()}")
        workers = max(1, int(self.verification.get('workers', 1)))
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results: List[CheckResult] = list(executor.map(lambda c: self.run_check(c, ctx, audit), checks))

        report = self.report_builder.build_report(suite, n, ctx.bounds(), results)
        if audit is not None:
            if report["status"] == "pass":
                audit.run_completed(report["summary"])
            else:
                audit.run_failed("check failed", {"first_failure": report["first_failure"]})
        logger.info(f"Suite {suite} n={n}: {report['status']} {report['summary']}")
        return report
