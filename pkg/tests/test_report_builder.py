import pytest

from ncmckay.config import MAX_UNKNOWNS_ENV, load_config, resolve
from ncmckay.errors import ConfigError
from ncmckay.report_builder import CheckResult, ReportBuilder, failed_results


def _results(builder):
    return [
        builder.create_result("tilting.xyz", "x, y, z", True, {"checked": 3}),
        builder.create_result("tilting.idempotents", "e_i e_j", False, {"checked": 2}, {"pair": [0, 1]}),
        builder.create_error("tilting.reduction", "division", RuntimeError("guard")),
    ]


def test_report_summary_and_order():
    builder = ReportBuilder()
    report = builder.build_report("tilting", 1, {"xy": 2, "t": 1}, _results(builder))
    assert report["status"] == "fail"
    assert report["summary"] == {"pass": 1, "fail": 1, "error": 1}
    assert [c["name"] for c in report["checks"]] == ["tilting.idempotents", "tilting.reduction", "tilting.xyz"]
    assert report["first_failure"] == "tilting.idempotents"
    assert [c["name"] for c in failed_results(report)] == ["tilting.idempotents", "tilting.reduction"]


def test_passed_results_carry_no_witness():
    result = ReportBuilder().create_result("cbh.confluence", "folds", True, witness={"ignored": True})
    assert result.passed
    assert "witness" not in result.to_dict()


def test_serialization_is_deterministic(tmp_path):
    builder = ReportBuilder()
    first, json_a = builder.build_from_results("tilting", 1, {"xy": 2, "t": 1}, _results(builder))
    _, json_b = builder.build_from_results("tilting", 1, {"t": 1, "xy": 2}, list(reversed(_results(builder))))
    assert json_a == json_b
    assert json_a.endswith("\n")
    path = tmp_path / "report.json"
    builder.write_report(first, str(path))
    assert builder.deserialize_from_json(path.read_text(encoding="utf-8")) == first


def test_empty_report_passes():
    report = ReportBuilder().build_report("iso", 0, {}, [])
    assert report["status"] == "pass"
    assert report["first_failure"] is None


def test_check_result_defaults():
    assert CheckResult("scheme.commutator", "t_0").to_dict()["detail"] == {}


def test_defaults_are_packaged(monkeypatch):
    monkeypatch.delenv(MAX_UNKNOWNS_ENV, raising=False)
    config = load_config()
    assert config['defaults'] == {"n": 2, "deg_xy": 6, "deg_t": 3}
    assert config['limits']['max_unknowns'] == 20000


def test_user_file_is_merged(tmp_path, monkeypatch):
    monkeypatch.delenv(MAX_UNKNOWNS_ENV, raising=False)
    path = tmp_path / "user.yaml"
    path.write_text("defaults:\n  n: 1\nverification:\n  workers: 2\n", encoding="utf-8")
    config = load_config(str(path))
    assert config['defaults']['n'] == 1
    assert config['defaults']['deg_xy'] == 6
    assert config['verification']['workers'] == 2
    assert config['verification']['phi_samples'] == 50


def test_environment_override(monkeypatch):
    monkeypatch.setenv(MAX_UNKNOWNS_ENV, "500")
    assert load_config()['limits']['max_unknowns'] == 500
    monkeypatch.setenv(MAX_UNKNOWNS_ENV, "many")
    with pytest.raises(ConfigError):
        load_config()


def test_bad_config_files(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.yaml"))
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(str(path))


def test_resolve_prefers_request_values():
    assert resolve(None, 6) == 6
    assert resolve(0, 6) == 0
