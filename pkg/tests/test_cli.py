"""CLI contract: subcommands, flags, caching, determinism, exit codes."""

import json

import pytest

from splitlab.cli import (EXIT_NO_CONVERGENCE, EXIT_OK, EXIT_PRECISION,
                          EXIT_USAGE, main)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_usage_error(capsys):
    assert main(["shoot", "--eps", "not-a-number"]) == EXIT_USAGE
    code, _, err = run(["shoot"], capsys)     # missing --eps
    assert code == EXIT_USAGE


def test_shoot_json_record(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("SPLITLAB_CACHE", raising=False)
    out = tmp_path / "shot.json"
    code = main(["shoot", "--gamma", "-0.1", "--eps", "0.1",
                 "--out", str(out)])
    assert code == EXIT_OK
    rec = json.loads(out.read_text())
    assert rec["schema_version"] == 1
    assert rec["command"] == "shoot"
    assert rec["config"]["eps"] == 0.1
    assert "S" in rec["outputs"]
    assert float(rec["outputs"]["S"]) == pytest.approx(1.66267e-8, rel=1e-4)
    assert rec["invariant_audit"]["G_drift"] <= 1e-18
    assert "wall_time_s" in rec


def test_precision_exit_code(capsys):
    code, _, err = run(["shoot", "--gamma", "-0.1", "--eps", "0.05",
                        "--precision", "std"], capsys)
    assert code == EXIT_PRECISION
    assert "dd" in err


def test_no_convergence_exit_code(capsys):
    # a sweep over a range where std cannot resolve anything still exits 3;
    # a blow-up (eps far outside the perturbative regime) exits 4
    code, _, _ = run(["shoot", "--gamma", "-0.1", "--eps", "0.9"], capsys)
    assert code == EXIT_NO_CONVERGENCE


def test_soliton_csv(tmp_path, monkeypatch):
    monkeypatch.delenv("SPLITLAB_CACHE", raising=False)
    out = tmp_path / "pulse.csv"
    code = main(["soliton", "--gamma", "-0.1", "--x-steps", "11",
                 "--format", "csv", "--out", str(out)])
    assert code == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "x,u0,u0_prime,u0_doubleprime"
    assert len(lines) == 12
    # JSON side record exists next to the CSV
    assert (tmp_path / "pulse.csv.json").exists()


def test_portrait_emits_separatrix_matching_pulse(tmp_path, monkeypatch):
    monkeypatch.delenv("SPLITLAB_CACHE", raising=False)
    out = tmp_path / "portrait.csv"
    code = main(["portrait", "--gamma", "-0.1", "--format", "csv",
                 "--orbit-points", "4", "--t-span", "4",
                 "--out", str(out)])
    assert code == EXIT_OK
    from splitlab.model import soliton
    sep = {}
    for line in out.read_text().splitlines()[1:]:
        tag, t, u, w, status = line.split(",")
        if tag == "separatrix":
            sep[float(t)] = (float(u), float(w))
    assert sep, "no separatrix rows for gamma in (-1/9, 0)"
    for t, (u, w) in list(sep.items())[:: 40]:
        u0, u0p, _ = soliton(-0.1, t, "dd")
        assert abs(u - float(u0)) <= 1e-10
        assert abs(w - float(u0p)) <= 1e-10


def test_portrait_gamma_positive_no_separatrix(tmp_path, monkeypatch):
    monkeypatch.delenv("SPLITLAB_CACHE", raising=False)
    out = tmp_path / "portrait1.csv"
    code = main(["portrait", "--gamma", "1.0", "--format", "csv",
                 "--orbit-points", "4", "--t-span", "4", "--out", str(out)])
    assert code == EXIT_OK
    text = out.read_text()
    assert "separatrix" not in text
    rec = json.loads((tmp_path / "portrait1.csv.json").read_text())
    assert rec["outputs"]["separatrix_included"] is False


def test_inner_series_csv(tmp_path, monkeypatch):
    monkeypatch.delenv("SPLITLAB_CACHE", raising=False)
    out = tmp_path / "series.csv"
    code = main(["inner-series", "--N", "12", "--format", "csv",
                 "--out", str(out)])
    assert code == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines[1].startswith("0,1/1,")
    assert lines[2].startswith("1,-4/1,")
    assert lines[3].startswith("2,64/1,")


def test_cache_byte_identity(tmp_path, monkeypatch):
    cache = tmp_path / "cache"
    monkeypatch.setenv("SPLITLAB_CACHE", str(cache))
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["shoot", "--gamma", "-0.1", "--eps", "0.105",
                 "--out", str(a)]) == EXIT_OK
    assert main(["shoot", "--gamma", "-0.1", "--eps", "0.105",
                 "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert list(cache.glob("*.json")), "cache directory is empty"


def test_cache_corruption_recovers(tmp_path, monkeypatch, capsys):
    cache = tmp_path / "cache"
    monkeypatch.setenv("SPLITLAB_CACHE", str(cache))
    a = tmp_path / "a.json"
    assert main(["shoot", "--gamma", "-0.1", "--eps", "0.115",
                 "--out", str(a)]) == EXIT_OK
    for f in cache.glob("*.json"):
        f.write_text("{corrupt")
    b = tmp_path / "b.json"
    assert main(["shoot", "--gamma", "-0.1", "--eps", "0.115",
                 "--out", str(b)]) == EXIT_OK
    err = capsys.readouterr().err
    assert "recomputing" in err
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    assert ra["outputs"]["S"] == rb["outputs"]["S"]


def test_config_file_precedence(tmp_path, monkeypatch, capsys):
    monkeypatch.delenv("SPLITLAB_CACHE", raising=False)
    cfg = tmp_path / "run.cfg"
    cfg.write_text("gamma = -0.1\neps = 0.1\nprecision = dd\n")
    out1 = tmp_path / "o1.json"
    assert main(["shoot", "--config", str(cfg), "--out", str(out1)]) == EXIT_OK
    rec = json.loads(out1.read_text())
    assert rec["config"]["eps"] == 0.1
    # explicit flag beats the file
    out2 = tmp_path / "o2.json"
    assert main(["shoot", "--config", str(cfg), "--eps", "0.12",
                 "--out", str(out2)]) == EXIT_OK
    rec2 = json.loads(out2.read_text())
    assert rec2["config"]["eps"] == 0.12


def test_sweep_jobs_deterministic(tmp_path, monkeypatch):
    monkeypatch.delenv("SPLITLAB_CACHE", raising=False)
    outs = []
    for jobs, name in ((1, "s1.csv"), (3, "s3.csv")):
        out = tmp_path / name
        assert main(["sweep", "--gamma", "-0.1", "--eps-min", "0.1",
                     "--eps-max", "0.11", "--eps-steps", "9",
                     "--jobs", str(jobs), "--format", "csv",
                     "--out", str(out)]) == EXIT_OK
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_roots_cli_small(tmp_path, monkeypatch):
    monkeypatch.delenv("SPLITLAB_CACHE", raising=False)
    out = tmp_path / "roots.csv"
    code = main(["roots", "--gamma", "-0.1", "--n-min", "7", "--n-max", "7",
                 "--format", "csv", "--out", str(out)])
    assert code == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 2
    row = lines[1].split(",")
    assert int(row[0]) == 7
    assert abs(float(row[6]) - 1) <= 0.2 / 7


def test_stokes_cli(tmp_path, monkeypatch):
    monkeypatch.delenv("SPLITLAB_CACHE", raising=False)
    out = tmp_path / "stokes.json"
    code = main(["stokes", "--y-values", "20,25", "--out", str(out)])
    assert code == EXIT_OK
    rec = json.loads(out.read_text())
    assert rec["outputs"]["reliable"] is True
    assert abs(rec["outputs"]["theta"]) > 10 * rec["outputs"]["uncertainty"]


def test_verify_subcommand(capsys):
    code, out, _ = run(["verify"], capsys)
    assert code == EXIT_OK
    assert "PASS" in out and "FAIL" not in out
