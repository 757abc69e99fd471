"""Command-line interface: payloads, exit codes, reproducible reports."""

import json

import pytest

from gcdspectra.cli import ExperimentConfig, main, parse_index_set


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_composite(capsys):
    code, out, _ = run_cli(capsys, "eval", "conv(phi^1, mu^2)", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["exact"] == "-1"
    assert payload["float"] == "-1.0"
    assert payload["function"] == "conv(phi^1, mu^2)"


def test_eval_csv_format(capsys):
    code, out, _ = run_cli(capsys, "eval", "sigma{1}", "6", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "field,value"
    assert "exact,12" in lines


def test_eval_float_path(capsys):
    code, out, _ = run_cli(capsys, "eval", "xi{0.5}", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["exact"] is None
    assert payload["float"] == "2.0"


def test_det_smith_example(capsys):
    code, out, _ = run_cli(capsys, "det", "I", "range:1..4")
    assert code == 0
    payload = json.loads(out)
    assert payload["determinant"] == "4"
    assert payload["psd"] is True
    assert payload["set"] == [1, 2, 3, 4]


def test_det_single_element(capsys):
    code, out, _ = run_cli(capsys, "det", "phi", "list:2")
    assert code == 0
    assert json.loads(out)["determinant"] == "1"


def test_det_rejects_mobius(capsys):
    code, out, err = run_cli(capsys, "det", "mu", "range:1..3")
    assert code == 3
    assert "hypothesis violation" in err
    assert "positivity class" in err


def test_parse_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "eval", "conv(phi^1, wat^2)", "2")
    assert code == 2
    assert "position" in err


def test_bad_set_spec_exit_code(capsys):
    code, _, err = run_cli(capsys, "det", "phi", "weird:1..3")
    assert code == 2
    assert "set spec" in err or "set kind" in err


def test_usage_error_exit_code(capsys):
    assert main(["eval"]) == 2  # missing argument
    capsys.readouterr()
    assert main(["nosuchcmd"]) == 2
    capsys.readouterr()


def test_spectrum_csv(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "phi", "list:2,3,5", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "index,eigenvalue"
    assert len(lines) == 4
    first = float(lines[1].split(",")[1])
    assert 0.0 < first < 3.0 / 7.0


def test_bounds_rank_one(capsys):
    code, out, _ = run_cli(capsys, "bounds", "rank-one", "1,2,4")
    assert code == 0
    payload = json.loads(out)
    assert payload["lower"] == "0"
    assert payload["upper"] == "3/7"
    assert payload["strict"] is True


def test_bounds_rank_one_rejects_descending(capsys):
    code, _, err = run_cli(capsys, "bounds", "rank-one", "2,1")
    assert code == 3
    assert "nondecreasing" in err


def test_bounds_constant_gcd_derives_x(capsys):
    code, out, _ = run_cli(capsys, "bounds", "constant-gcd", "xi{1}", "list:6,30,42")
    assert code == 0
    payload = json.loads(out)
    assert payload["upper"] == "72/17"


def test_bounds_sandwich(capsys):
    code, out, _ = run_cli(capsys, "bounds", "sandwich", "sigma{1}", "range:1..5")
    assert code == 0
    payload = json.loads(out)
    assert payload["observed"] == "120"
    assert payload["upper"] == "504"


def test_out_directory_receives_payload(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "eval", "phi", "12", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "eval.json").read_text() == out


def test_converge_writes_deterministic_outputs(tmp_path, capsys):
    out_dir = tmp_path / "run"
    argv = [
        "converge", "xi{1}", "range:1,1,0",
        "--q", "1", "--n", "12", "--out", str(out_dir),
    ]
    code, out, _ = run_cli(capsys, *argv)
    assert code == 0
    assert "monotone=True" in out
    names = ["config.json", "report.json", "series.csv", "series.png"]
    first = {name: (out_dir / name).read_bytes() for name in names}
    assert first["series.png"][:8] == b"\x89PNG\r\n\x1a\n"
    report = json.loads(first["report.json"])
    assert report["monotone_nonincreasing"] is True
    assert len(report["series"]) == 12
    assert first["series.csv"].decode().splitlines()[0] == "n,value"

    code, _, _ = run_cli(capsys, *argv)
    assert code == 0
    second = {name: (out_dir / name).read_bytes() for name in names}
    assert first == second


def test_converge_config_file_with_flag_override(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({
        "fn": "phi",
        "sequence": "progression:4",
        "q": 1,
        "n_max": 20,
        "out": str(tmp_path / "ignored"),
    }))
    out_dir = tmp_path / "actual"
    code, out, _ = run_cli(
        capsys, "converge", "--config", str(cfg_path),
        "--n", "8", "--out", str(out_dir),
    )
    assert code == 0
    written = json.loads((out_dir / "config.json").read_text())
    assert written["n_max"] == 8  # flag beat the file
    assert written["fn"] == "phi"
    report = json.loads((out_dir / "report.json").read_text())
    assert report["divergence"]["modulus"] == 4


def test_converge_usage_and_hypothesis_errors(tmp_path, capsys):
    code, _, err = run_cli(
        capsys, "converge", "xi{1}", "range:1,1,0",
        "--q", "9", "--n", "5", "--out", str(tmp_path),
    )
    assert code == 2
    code, _, err = run_cli(
        capsys, "converge", "conv(phi^1, mu^1)", "range:1,1,0",
        "--n", "5", "--out", str(tmp_path),
    )
    assert code == 3
    assert "hypothesis" in err
    code, _, _ = run_cli(capsys, "converge")
    assert code == 2  # neither positional nor config supplied


def test_verify_suite_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "smith", "--seed", "7")
    assert code == 0
    assert "smith: pass" in out


def test_verify_unknown_suite(capsys):
    assert main(["verify", "nosuch"]) == 2
    capsys.readouterr()


def test_experiment_config_round_trip():
    cfg = ExperimentConfig(fn="phi", sequence="range:2,3,0", q=2, n_max=30,
                           tol=1e-10, seed=5, out="runs", format="csv")
    assert ExperimentConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg
    with pytest.raises(ValueError):
        ExperimentConfig.from_dict({"fn": "phi"})
    with pytest.raises(ValueError):
        ExperimentConfig.from_dict(
            {"fn": "phi", "sequence": "range:1,1,0", "bogus": 1}
        )


def test_parse_index_set():
    assert parse_index_set("range:1..4").elements == (1, 2, 3, 4)
    assert parse_index_set("list:5,2,3").elements == (2, 3, 5)
    for bad in ("range:4..1", "range:1-4", "list:", "span:1..3"):
        with pytest.raises(ValueError):
            parse_index_set(bad)
