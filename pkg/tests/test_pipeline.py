import json

import pytest

from ncmckay.errors import GluingError
from ncmckay.pipeline import VerificationPipeline
from ncmckay.report_builder import STATUS_ERROR
from ncmckay.suites import REGISTRY, SUITE_NAMES, Check, VerificationContext, checks_for


def test_every_suite_has_checks():
    for name in SUITE_NAMES:
        assert REGISTRY[name]
    names = [c.full_name for c in checks_for("all", 2)]
    assert len(names) == len(set(names))


def test_checks_respect_minimum_n():
    at_zero = {c.full_name for c in checks_for("sheaves", 0)}
    assert at_zero == {"sheaves.tilting-vanishing"}
    assert "sheaves.negative-control" in {c.full_name for c in checks_for("sheaves", 1)}


def test_unknown_suite():
    with pytest.raises(KeyError):
        checks_for("geometry", 1)


def test_context_is_validated(config):
    pipeline = VerificationPipeline(config)
    with pytest.raises(ValueError):
        pipeline.make_context(-1, 2, 1)
    with pytest.raises(ValueError):
        pipeline.make_context(config['limits']['max_n'] + 1, 2, 1)
    with pytest.raises(ValueError):
        pipeline.make_context(1, -1, 1)
    with pytest.raises(ValueError, match="positive"):
        pipeline.make_context(1, 0, 1)
    with pytest.raises(ValueError, match="positive"):
        pipeline.make_context(1, 2, 0)
    with pytest.raises(ValueError):
        pipeline.run("geometry", 1, 2, 1)


def test_library_errors_become_error_results(config):
    def broken(ctx):
        raise GluingError("no extension")

    pipeline = VerificationPipeline(config)
    result = pipeline.run_check(Check("scheme", "broken", "never holds", broken), VerificationContext(n=1))
    assert result.status == STATUS_ERROR
    assert result.witness == {"error": "GluingError", "message": "no extension"}


def test_unexpected_errors_become_error_results(config):
    def broken(ctx):
        raise ZeroDivisionError("division by zero in slice")

    pipeline = VerificationPipeline(config)
    result = pipeline.run_check(Check("scheme", "broken", "never holds", broken), VerificationContext(n=1))
    assert result.status == STATUS_ERROR
    assert result.witness == {"error": "ZeroDivisionError", "message": "division by zero in slice"}


def test_tilting_suite_passes_for_n_1(config):
    report = VerificationPipeline(config).run("tilting", 1, 2, 1)
    assert report["status"] == "pass", report["first_failure"]
    assert report["summary"]["fail"] == 0
    names = [c["name"] for c in report["checks"]]
    assert names == sorted(names)
    commutator = next(c for c in report["checks"] if c["name"] == "tilting.uv-commutator")
    assert commutator["detail"]["diagonal"].startswith("diag(")


@pytest.mark.parametrize("suite", ["scheme", "cbh"])
def test_algebraic_suites_pass_for_n_2(config, suite):
    report = VerificationPipeline(config).run(suite, 2, 2, 1)
    assert report["status"] == "pass", report["first_failure"]


def test_audit_trail(config, tmp_path):
    path = tmp_path / "audit" / "run.ndjson"
    config['audit'] = {"enabled": True, "path": str(path)}
    VerificationPipeline(config).run("scheme", 1, 2, 1)
    events = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
    assert events[0]["event"] == "run_start"
    assert events[-1]["event"] == "run_completed"
    assert sum(e["event"] == "check_completed" for e in events) == len(checks_for("scheme", 1))
    assert all(e["context"]["suite"] == "scheme" for e in events)


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3])
def test_sheaves_suite_passes_at_full_bounds(config, n):
    report = VerificationPipeline(config).run("sheaves", n, 8, 3)
    assert report["status"] == "pass", report["first_failure"]
    ses = next(c for c in report["checks"] if c["name"] == "sheaves.ses")
    assert ses["status"] == "pass"


@pytest.mark.slow
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_iso_suite_passes_at_full_bounds(config, n):
    report = VerificationPipeline(config).run("iso", n, 6, 2)
    assert report["status"] == "pass", report["first_failure"]
    assert report["summary"]["fail"] == 0
