import json

import pytest

from planimetric.cli import RunConfig, main, parse_config, render, run
from planimetric.verify import CSV_COLUMNS


def test_parse_distance():
    cfg = parse_config(["distance", "--domain", '{"type":"disc"}', "--z", "0", "--w", "0.5",
                        "--metric", "bergman"])
    assert cfg.command == "distance" and cfg.w == [0.5, 0.0] and cfg.resolution == 64


def test_parse_two_flag_complex():
    cfg = parse_config(["distance", "--domain", '{"type":"disc"}', "--z-re", "0.1", "--z-im", "-0.2",
                        "--w", "0.3+0.1i"])
    assert cfg.z == [0.1, -0.2] and cfg.w == [0.3, 0.1]


def test_parse_certify_materialises_defaults():
    cfg = parse_config(["certify", "--suite", "prop1", "--domain", '{"type":"annulus","r":0.25}',
                        "--seed", "7"])
    assert cfg.suite == "prop1" and cfg.seed == 7 and cfg.count == 8


def test_config_roundtrip(tmp_path):
    cfg = parse_config(["certify", "--suite", "monotonicity", "--domain", '{"type":"disc","radius":0.8}'])
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg.to_dict()))
    assert parse_config(["certify", "--config", str(path)]) == cfg
    assert RunConfig.from_dict(cfg.to_dict()) == cfg


def test_unknown_config_field(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"command": "distance", "domain": {"type": "disc"}, "colour": 1}))
    assert main(["distance", "--config", str(path)]) == 2
    err = capsys.readouterr().err
    assert "colour" in err and err.count("\n") == 1


@pytest.mark.parametrize("argv", [
    ["distance", "--domain", '{"type":"disc"}', "--z", "0"],
    ["distance", "--domain", '{"type":"blob"}', "--z", "0", "--w", "0.5"],
    ["distance", "--domain", "{", "--z", "0", "--w", "0.5"],
    ["distance", "--domain", '{"type":"disc"}', "--z", "zz", "--w", "0.5"],
    ["distance", "--domain", '{"type":"disc"}', "--z", "2", "--w", "0.5"],
    ["certify", "--suite", "nope"],
    ["certify"],
    [],
])
def test_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.count("\n") == 1


def test_distance_report(capsys):
    assert main(["distance", "--domain", '{"type":"disc"}', "--z", "0", "--w", "0.5"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["method"] == "ClosedForm"
    assert doc["result"]["value"] == pytest.approx(0.7768362, abs=1e-7)
    assert doc["config"]["kmax"] == 8


def test_distance_csv_one_row(capsys):
    assert main(["distance", "--domain", '{"type":"disc"}', "--z", "0", "--w", "0.5",
                 "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS) and len(lines) == 2


def test_empty_csv_is_header_only():
    assert render({}, [], "csv") == ",".join(CSV_COLUMNS) + "\n"


def test_certify_lemma4(tmp_path):
    out = tmp_path / "l4.json"
    assert main(["certify", "--suite", "lemma4", "--seed", "1", "--count", "20000",
                 "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["passed"]
    assert all(c["worst_margin"] >= -1e-12 for c in doc["certificates"])


def test_failed_certificate_exit_1(capsys):
    assert main(["certify", "--suite", "isolated"]) == 1


def test_engine_error_exit_3():
    # z and w are antipodal, so the k = 0 and k = -1 lifts tie and the
    # |k| = 1 translates cannot certify the orbit minimum
    argv = ["distance", "--domain", '{"type":"annulus","r":0.25}', "--z", "0.5", "--w", "-0.5",
            "--metric", "kobayashi", "--kmax", "1"]
    assert main(argv) == 3
    assert main(["metric", "--domain", '{"type":"disc"}', "--z", "0.999"]) == 3


def test_io_error_exit_3():
    assert main(["distance", "--domain", '{"type":"disc"}', "--z", "0", "--w", "0.5",
                 "--out", "/nonexistent-dir/x.json"]) == 3


def test_unsupported_metric_is_input_error():
    assert main(["distance", "--domain", '{"type":"annulus","r":0.25}', "--z", "0.5", "--w", "-0.5",
                 "--metric", "caratheodory"]) == 2


def test_byte_identical_rerun(tmp_path):
    argv = ["sweep", "--suite", "prop3", "--domain", '{"type":"conformal","coeffs":[0.2]}',
            "--format", "csv", "--seed", "3"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_run_returns_rows():
    cfg = parse_config(["certify", "--suite", "remark_d", "--domain", '{"type":"disc"}', "--count", "2"])
    doc, rows, ok = run(cfg)
    assert ok and len(rows) == 6 and doc["command"] == "certify"
