import json

import pytest

from insideout.cli import Config, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_count(capsys):
    assert run(capsys, "count", "semimagic-cubic", "all", "--t", "12") == (0, "936\n")
    code, out = run(capsys, "count", "--problem", "magic-affine", "--mode", "sym", "--t", "54", "--format", "json")
    assert code == 0 and json.loads(out)["count"] == 59


def test_quasipoly(capsys):
    code, out = run(capsys, "quasipoly", "magic-cubic", "all")
    assert code == 0
    assert "period 12" in out
    assert "t = 0 mod 12: 1/6*t^3 - 8/3*t^2 + 38/3*t - 16" in out
    code, out = run(capsys, "quasipoly", "magic-cubic", "--format", "json")
    data = json.loads(out)
    assert data["constituents"][0] == ["-16", "38/3", "-8/3", "1/6"]


def test_verify(capsys):
    code, out = run(capsys, "verify", "magilatin-cubic", "all", "--t-max", "15", "--jobs", "3")
    assert code == 0
    assert out.strip().endswith("12 matched rows, 0 mismatches")


def test_verify_budget(capsys):
    code = main(["verify", "magic-cubic", "--t-max", "20", "--budget", "10"])
    assert code == 1
    assert "budget" in capsys.readouterr().err


def test_series_and_export(capsys, tmp_path):
    code, out = run(capsys, "series", "magic-cubic", "--terms", "12", "--format", "csv")
    assert out.splitlines()[-1] == "12,40"
    out_file = tmp_path / "b.txt"
    assert main(["export", "semimagic-cubic", "--t-max", "12", "--format", "bfile", "--out", str(out_file)]) == 0
    lines = out_file.read_text().splitlines()
    assert lines[0] == "1 0" and lines[-1] == "12 936"
    code, out = run(capsys, "export", "magic-affine", "reduced", "--t-max", "15")
    data = json.loads(out)
    assert data["counts"][11] == 8 and data["quasipolynomial"]["period"] == 18


def test_output_is_deterministic(capsys):
    first = run(capsys, "export", "magilatin-affine", "sym", "--t-max", "20", "--format", "json")
    second = run(capsys, "export", "magilatin-affine", "sym", "--t-max", "20", "--format", "json")
    assert first == second


def test_geometry_and_period_report(capsys):
    code, out = run(capsys, "geometry", "semimagic-cubic", "--format", "json")
    data = json.loads(out)
    assert data["denominator"] == 60 and len(data["poset"]) == 17
    assert {e["label"]: e["moebius"] for e in data["poset"]}["356"] == 2
    code, out = run(capsys, "geometry", "magic-cubic")
    assert "denominator 12" in out
    code, out = run(capsys, "period-report", "semimagic-cubic", "--format", "json")
    assert json.loads(out)["period"] == 60


def test_invalid_keys_exit_2(capsys):
    for argv in (["count", "bogus", "--t", "3"], ["count", "magic-cubic", "half", "--t", "3"], ["frobnicate"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_count_needs_t(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["count", "magic-cubic"])
    assert exc.value.code == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "insideout.cfg"
    cfg.write_text("budget = 20\noffset.A173546 = 10\n")
    loaded = Config.load(str(cfg))
    assert loaded.budget == 20 and loaded.offset_for("semimagic-cubic", "all") == 10
    code, out = run(capsys, "series", "semimagic-cubic", "--terms", "11", "--format", "bfile", "--config", str(cfg))
    assert out == "10 72\n11 288\n"
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    with pytest.raises(SystemExit) as exc:
        main(["count", "magic-cubic", "--t", "3", "--config", str(bad)])
    assert exc.value.code == 2
