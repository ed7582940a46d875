import json

import pytest

from ncmckay.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, main
from ncmckay.generate_report import build_table, s_block_table


def test_usage_errors():
    assert main([]) == EXIT_USAGE
    assert main(["verify", "geometry"]) == EXIT_USAGE
    assert main(["verify", "scheme", "--n", "1", "--deg-xy", "0"]) == EXIT_USAGE
    assert main(["dims", "hom", "--n", "99"]) == EXIT_USAGE
    assert main(["dims", "s-block", "--n", "1", "--i", "5"]) == EXIT_USAGE


def test_missing_config_file(tmp_path):
    assert main(["--config", str(tmp_path / "missing.yaml"), "dims", "s-block", "--n", "1"]) == EXIT_IO


def test_hom_dims_at_degree_zero(capsys):
    assert main(["dims", "hom", "--n", "1", "--src", "0", "--tgt", "0", "--deg", "0"]) == EXIT_OK
    table = json.loads(capsys.readouterr().out)
    assert table["total"] == 1
    assert table["slices"] == [{"p": 0, "w": 0, "dim": 1}]


def test_s_block_table_to_file(tmp_path):
    path = tmp_path / "s_block.json"
    assert main(["dims", "s-block", "--n", "2", "--i", "0", "--j", "1", "--deg", "2", "--out", str(path)]) == EXIT_OK
    table = json.loads(path.read_text(encoding="utf-8"))
    assert [d["dim"] for d in table["dims"]] == [0, 1, 1]


def test_verify_writes_report(tmp_path):
    path = tmp_path / "report.json"
    code = main(["verify", "scheme", "--n", "1", "--deg-xy", "2", "--deg-t", "1", "--out", str(path)])
    report = json.loads(path.read_text(encoding="utf-8"))
    assert code == EXIT_OK
    assert report["status"] == "pass", report["first_failure"]
    assert report["suite"] == "scheme"
    assert report["bounds"] == {"xy": 2, "t": 1}


def test_ext1_table_vanishes_for_summands():
    table = build_table("ext1", n=1, src=0, tgt=1, deg_xy=2, deg_t=1)
    assert table["kind"] == "ext1"
    assert table["total"] == 0


def test_unknown_kind_and_bad_degree():
    with pytest.raises(ValueError):
        build_table("volume", n=1)
    with pytest.raises(ValueError):
        s_block_table(1, 0, 0, -1)
