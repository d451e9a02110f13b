from __future__ import annotations

import json

import pytest

from cli.config import get_settings
from cli.run import main
from invariants.graph import decalin
from invariants.ingest import serialize_edge_list
from tests.conftest import cycle


def run(capsys, *argv: str) -> tuple[int, dict]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else {})


@pytest.fixture
def decalin_file(tmp_path):
    path = tmp_path / "decalin.txt"
    path.write_text(serialize_edge_list(decalin()))
    return path


def test_wl_constant_is_blind(capsys):
    code, report = run(capsys, "wl", "decalin", "bicyclopentyl", "--pre", "constant")
    assert code == 0
    assert report["distinguishable"] is False
    assert sorted(report["histograms"][0].values()) == [2, 4, 4]
    assert len(report["colorings"]) == 2


def test_wl_spectral_distinguishes(capsys):
    code, report = run(capsys, "wl", "decalin", "bicyclopentyl", "--pre", "spectral", "--spectral-cfg", "(0,0,1,none)")
    assert code == 1
    assert report["distinguishable"] is True
    assert report["pre"] == "spectral"


@pytest.mark.parametrize("pre", ["constant", "degree", "spectral", "diag-kwl"])
def test_wl_same_file_twice(capsys, tmp_path, pre):
    path = tmp_path / "c5.txt"
    path.write_text(serialize_edge_list(cycle(5)))
    code, report = run(capsys, "wl", str(path), str(path), "--pre", pre)
    assert code == 0
    assert report["distinguishable"] is False


def test_wl_missing_file(capsys, tmp_path):
    code, report = run(capsys, "wl", str(tmp_path / "missing.txt"), "decalin")
    assert code == 2
    assert report == {}


def test_wl_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0 1\n1 x\n")
    code, _ = run(capsys, "wl", str(path), str(path))
    assert code == 2


def test_wl_bad_config(capsys):
    code, _ = run(capsys, "wl", "decalin", "decalin", "--pre", "spectral", "--spectral-cfg", "(1,2)")
    assert code == 2


def test_features_stdout_json(capsys):
    code, payload = run(capsys, "features", "decalin", "--spectral-cfg", "(0,0,1,none)")
    assert code == 0
    rows = payload["graphs"][0]["features"]
    assert len(rows) == 10 and all(len(r) == 1 for r in rows)
    assert sorted(round(r[0], 4) for r in rows)[:2] == [0.1914, 0.1914]


def test_features_csv_needs_output(capsys, decalin_file):
    code, _ = run(capsys, "features", str(decalin_file), "--out", "csv")
    assert code == 2


def test_features_csv_is_deterministic(capsys, decalin_file, tmp_path):
    outputs = []
    for name in ("a.csv", "b.csv"):
        code, report = run(
            capsys, "features", str(decalin_file), "--spectral-cfg", "(-1,1,4,MMM)", "--out", "csv", "--output", str(tmp_path / name)
        )
        assert code == 0
        assert (report["rows"], report["columns"]) == (10, 16)
        outputs.append((tmp_path / name).read_bytes())
    assert outputs[0] == outputs[1]
    assert decalin_file.read_text() == serialize_edge_list(decalin())


def test_features_tu_directory(capsys, tmp_path):
    (tmp_path / "K2_A.txt").write_text("1, 2\n2, 1\n3, 4\n4, 3\n")
    (tmp_path / "K2_graph_indicator.txt").write_text("1\n1\n2\n2\n")
    code, report = run(capsys, "features", str(tmp_path), "--out", "json", "--output", str(tmp_path / "f.json"))
    assert code == 0
    assert report["graphs"] == 2 and report["rows"] == 4


def test_features_truncated(capsys, decalin_file):
    code, payload = run(capsys, "features", str(decalin_file), "--spectral-cfg", "(0,0,1,none)", "--truncation", "10")
    assert code == 0
    assert len(payload["graphs"][0]["features"]) == 10


def test_features_truncation_out_of_range(capsys, decalin_file):
    code, _ = run(capsys, "features", str(decalin_file), "--truncation", "11")
    assert code == 2


def test_bench_is_reproducible(capsys, tmp_path):
    reports = []
    for name in ("a", "b"):
        code, report = run(capsys, "bench", "--count", "40", "--seed", "5", "--out", str(tmp_path / name))
        assert code == 0
        reports.append(report)
    assert reports[0]["manifest_sha256"] == reports[1]["manifest_sha256"]
    assert [r["config"] for r in reports[0]["results"]] == ["(-1,1,10,none)", "(-1,1,5,max)"]
    assert reports[0]["results"] == reports[1]["results"]
    assert (tmp_path / "a" / "manifest.json").read_bytes() == (tmp_path / "b" / "manifest.json").read_bytes()


def test_bench_custom_configs(capsys):
    code, report = run(capsys, "bench", "--count", "20", "--seed", "1", "--config", "(0,0,1,none)", "--config", "(0,1,2,MMM)")
    assert code == 0
    assert [r["config"] for r in report["results"]] == ["(0,0,1,none)", "(0,1,2,MMM)"]
    assert "manifest_sha256" not in report


def test_bench_neighbor_classifier(capsys):
    code, report = run(capsys, "bench", "--count", "30", "--seed", "2", "--classifier", "neighbor", "--config", "(0,0,1,none)")
    assert code == 0
    assert [r["classifier"] for r in report["results"]] == ["neighbor"]
    assert 0.0 <= report["results"][0]["accuracy"] <= 1.0


def test_bench_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("WLSPECTRA_SEED", "42")
    get_settings.cache_clear()
    try:
        code, report = run(capsys, "bench", "--count", "10")
    finally:
        get_settings.cache_clear()
    assert code == 0
    assert report["seed"] == 42


def test_bench_rejects_tiny_count(capsys):
    code, _ = run(capsys, "bench", "--count", "1")
    assert code == 2


def test_spectrum(capsys, tmp_path):
    path = tmp_path / "c4.txt"
    path.write_text(serialize_edge_list(cycle(4)))
    code, report = run(capsys, "spectrum", str(path), "--eigenvectors")
    assert code == 0
    assert report["eigenvalues"] == pytest.approx([0.0, 2.0, 2.0, 4.0], abs=1e-10)
    assert len(report["eigenvectors"]) == 4


def test_selftest_single_check(capsys):
    code, report = run(capsys, "selftest", "--check", "golden_heat_diagonals", "--check", "wl_blindness")
    assert code == 0
    assert report["passed"] is True
    assert [c["name"] for c in report["checks"]] == ["golden_heat_diagonals", "wl_blindness"]


def test_missing_subcommand():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
