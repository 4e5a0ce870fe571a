import json

import pytest

import settings
from corpus import fixture_path
from main import main


@pytest.fixture(autouse=True)
def restore_seed(monkeypatch):
    monkeypatch.setattr(settings, "SEED", settings.SEED)


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_koszul_is_virtual(capsys):
    code, out, _ = _run(capsys, "check", "--ring", fixture_path("p1.json"),
                        "--complex", fixture_path("koszul_p1.json"))
    assert code == 0
    assert "verdict: virtual" in out
    assert "exact by the unsaturated criterion: yes" in out


def test_check_zero_map_is_not_virtual(capsys):
    code, out, _ = _run(capsys, "check", "--ring", fixture_path("p1.json"),
                        "--complex", fixture_path("zero_p1.json"), "--oracle")
    assert code == 1
    assert "verdict: not virtual" in out
    assert "homology oracle: not virtual" in out


def test_check_reports_degree_errors(capsys):
    code, out, err = _run(capsys, "check", "--ring", fixture_path("p1p2.json"),
                          "--complex", fixture_path("bad_degree_p1p2.json"))
    assert code == 2
    assert out == ""
    assert "entry (1,2): degree (1,1), expected (0,2)" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = _run(capsys, "depth", "--ring", fixture_path("p1p1.json"),
                        "--ideal", str(tmp_path / "nothing.txt"))
    assert code == 2
    assert "no such file" in err


def test_depth_of_saturated_ideal(capsys):
    code, out, _ = _run(capsys, "depth", "--ring", fixture_path("p1p1.json"),
                        "--ideal", fixture_path("three_points.txt"), "--saturate")
    assert code == 0
    assert out.strip() == "2"


def test_json_report_is_reproducible(capsys):
    argv = ["check", "--ring", fixture_path("p1.json"), "--complex", fixture_path("koszul_p1.json"),
            "--json", "--seed", "5"]
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv)
    assert first == second
    data = json.loads(first)
    assert data["schema"] == "virtua/1"
    assert data["seed"] == 5
    assert data["command"] == "check"
    assert data["verdict_theorem"] is True


def test_mfr_of_three_points(capsys):
    code, out, _ = _run(capsys, "mfr", "--ring", fixture_path("p1p1.json"),
                        "--ideal", fixture_path("three_points.txt"), "--json")
    assert code == 0
    assert json.loads(out)["ranks"] == [1, 3, 2]


def test_saturate_by_ideal(capsys, tmp_path):
    ideal = tmp_path / "ideal.txt"
    ideal.write_text("x0^2*x1\nx0*x1^2\n")
    by = tmp_path / "by.txt"
    by.write_text("x1  # a single variable\n")
    code, out, _ = _run(capsys, "saturate", "--ring", fixture_path("p1.json"),
                        "--ideal", str(ideal), "--by-ideal", str(by))
    assert code == 0
    assert out.strip() == "<x0>"


def test_rank_and_locally_free(capsys):
    code, out, _ = _run(capsys, "rank", "--ring", fixture_path("p1p1.json"),
                        "--matrix", fixture_path("three_points_presentation.json"), "--json")
    assert code == 0
    assert json.loads(out)["rank"] == 2
    code, out, _ = _run(capsys, "locally-free", "--ring", fixture_path("p1p1.json"),
                        "--presentation", fixture_path("three_points_presentation.json"), "--json")
    assert code == 1
    assert json.loads(out)["locally_free_rank"] is None


def test_fitting_single_index(capsys):
    code, out, _ = _run(capsys, "fitting", "--ring", fixture_path("p1p1.json"),
                        "--presentation", fixture_path("three_points_presentation.json"),
                        "--j", "2", "--saturate", "--json")
    assert code == 0
    entries = json.loads(out)["entries"]
    assert [e["j"] for e in entries] == [2]
    assert entries[0]["saturated"] == ["1"]


def test_homology_of_zero_map(capsys):
    code, out, _ = _run(capsys, "homology", "--ring", fixture_path("p1.json"),
                        "--complex", fixture_path("zero_p1.json"), "--index", "1", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["is_zero"] is False
    assert data["b_torsion"] is False


def test_malformed_degree(capsys):
    code, _, err = _run(capsys, "vres-pair", "--ring", fixture_path("p1p2.json"),
                        "--ideal", fixture_path("four_points.txt"), "--degree", "1,1,1")
    assert code == 2
    assert "expected 2" in err


def test_unknown_flag_exits_with_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["check", "--ring", fixture_path("p1.json"), "--complex", "x.json", "--frobnicate"])
    assert exc.value.code == 2


@pytest.mark.parametrize("command", ["depth", "saturate"])
def test_inhomogeneous_ideal_is_rejected(capsys, tmp_path, command):
    ideal = tmp_path / "mixed.txt"
    ideal.write_text("# mixed grading\nx0*y1\nx0+y0\n")
    code, out, err = _run(capsys, command, "--ring", fixture_path("p1p2.json"), "--ideal", str(ideal))
    assert code == 2
    assert out == ""
    assert f"{ideal}:3: x0+y0 is not homogeneous" in err


def test_inhomogeneous_saturating_ideal_is_rejected(capsys, tmp_path):
    ideal = tmp_path / "ideal.txt"
    ideal.write_text("x0*x1\n")
    by = tmp_path / "by.txt"
    by.write_text("x0^2+x1\n")
    code, _, err = _run(capsys, "saturate", "--ring", fixture_path("p1.json"),
                        "--ideal", str(ideal), "--by-ideal", str(by))
    assert code == 2
    assert "by.txt:1:" in err


def test_json_report_is_identical_across_worker_counts(capsys, monkeypatch):
    argv = ["check", "--ring", fixture_path("p1.json"), "--complex", fixture_path("koszul_p1.json"),
            "--oracle", "--json"]
    outputs = []
    for workers in (1, 4):
        monkeypatch.setattr(settings, "WORKERS", workers)
        outputs.append(_run(capsys, *argv))
    assert outputs[0] == outputs[1]
