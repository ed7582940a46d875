"""
Report Builder Module

Creates the machine-readable verification report from individual check
results.

Reports are deterministic: checks are ordered by name, keys are sorted
and no timestamps or durations are included (those go to the log and the
audit trail), so identical inputs give byte-identical files.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_ERROR = "error"


@dataclass
class CheckResult:
    """
    Outcome of one verification check.

    Args:
        name: unique check name, e.g. "tilting.cor-uv"
        citation: the identity or statement the check verifies
        status: "pass", "fail" or "error"
        detail: JSON-ready values computed by the check
        witness: JSON-ready counterexample when the check did not pass
    """

    name: str
    citation: str
    status: str = STATUS_PASS
    detail: Dict[str, Any] = field(default_factory=dict)
    witness: Optional[Any] = None

    @property
    def passed(self) -> bool:
        return self.status == STATUS_PASS

    def to_dict(self) -> Dict[str, Any]:
        entry = {
            "name": self.name,
            "citation": self.citation,
            "status": self.status,
            "detail": self.detail,
        }
        if self.witness is not None:
            entry["witness"] = self.witness
        return entry


class ReportBuilder:
    """
    Builder for verification reports.
    """

    def __init__(self, creator_name: str = "ncmckay"):
        """
        Initialize the report builder.

        Args:
            creator_name: Name recorded in the report's created_by field
        """
        self.creator_name = creator_name

    def create_result(
        self,
        name: str,
        citation: str,
        passed: bool,
        detail: Optional[Dict[str, Any]] = None,
        witness: Optional[Any] = None,
    ) -> CheckResult:
        return CheckResult(
            name=name,
            citation=citation,
            status=STATUS_PASS if passed else STATUS_FAIL,
            detail=detail or {},
            witness=None if passed else witness,
        )

    def create_error(self, name: str, citation: str, error: BaseException) -> CheckResult:
        return CheckResult(
            name=name,
            citation=citation,
            status=STATUS_ERROR,
            witness={"error": type(error).__name__, "message": str(error)},
        )

    def build_report(
        self,
        suite: str,
        n: int,
        bounds: Dict[str, int],
        results: Sequence[CheckResult],
    ) -> Dict[str, Any]:
        """
        Assemble the report for one suite run.

        Returns:
            Dictionary with the summary and the checks ordered by name
        """
        ordered = sorted(results, key=lambda r: r.name)
        counts = {STATUS_PASS: 0, STATUS_FAIL: 0, STATUS_ERROR: 0}
        for result in ordered:
            counts[result.status] += 1
        first_failure = next((r for r in ordered if not r.passed), None)
        return {
            "created_by": self.creator_name,
            "suite": suite,
            "n": n,
            "bounds": dict(bounds),
            "status": STATUS_PASS if first_failure is None else STATUS_FAIL,
            "summary": counts,
            "first_failure": None if first_failure is None else first_failure.name,
            "checks": [r.to_dict() for r in ordered],
        }

    def serialize_to_json(self, report: Dict[str, Any]) -> str:
        """UTF-8 JSON with sorted keys and a trailing newline."""
        return json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2) + "\n"

    def deserialize_from_json(self, json_str: str) -> Dict[str, Any]:
        return json.loads(json_str)

    def write_report(self, report: Dict[str, Any], path: str) -> str:
        """
        Write a report file.

        Raises:
            OSError: when the file cannot be written
        """
        json_str = self.serialize_to_json(report)
        with open(path, "w", encoding="utf-8") as f:
            f.write(json_str)
        return json_str

    def build_from_results(
        self, suite: str, n: int, bounds: Dict[str, int], results: Sequence[CheckResult]
    ) -> Tuple[Dict[str, Any], str]:
        """
        Build a report and its JSON form in one step.

        Returns:
            Tuple of (report dictionary, JSON string)
        """
        report = self.build_report(suite, n, bounds, results)
        return report, self.serialize_to_json(report)


def failed_results(report: Dict[str, Any]) -> List[Dict[str, Any]]:
    return [c for c in report.get("checks", []) if c["status"] != STATUS_PASS]
