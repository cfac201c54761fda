import json
import subprocess
import sys

import pytest

from sdpi import cli

BSC = '{"mu":[0.5,0.5],"K":[[0.75,0.25],[0.25,0.75]]}'


@pytest.fixture
def pair_file(tmp_path):
    p = tmp_path / "pair.json"
    p.write_text(BSC)
    return p


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_divergence_nats_and_bits(tmp_path, capsys):
    p = tmp_path / "d.json"
    p.write_text('{"nu":[1,0],"mu":[0.5,0.5]}')
    code, out, _ = run(["divergence", "--kind", "renyi", "--alpha", "2", "--input", str(p)], capsys)
    assert code == 0 and out.strip() == "0.69314718056"
    code, out, _ = run(["divergence", "--kind", "renyi", "--alpha", "2", "--input", str(p), "--bits"], capsys)
    assert out.strip() == "1"
    code, out, _ = run(["divergence", "--kind", "tv", "--input", str(p)], capsys)
    assert out.strip() == "0.5"


def test_divergence_requires_alpha(tmp_path, capsys):
    p = tmp_path / "d.json"
    p.write_text('{"nu":[1,0],"mu":[0.5,0.5]}')
    code, _, err = run(["divergence", "--kind", "renyi", "--input", str(p)], capsys)
    assert code == cli.EXIT_USAGE and "--alpha" in err


def test_eta_json(pair_file, capsys):
    code, out, _ = run(["eta", "--spec", "renyi:2", "--input", str(pair_file)], capsys)
    doc = json.loads(out)
    assert code == 0 and list(doc) == ["value", "method", "witness", "bracket"]
    assert doc["value"] == pytest.approx(0.321928094887, abs=1e-12)


@pytest.mark.parametrize("method, tag", [("spectral", "spectral"), ("grid", "grid"), ("ascent", "ascent"),
                                         ("boundary", "boundary"), ("thm2", "thm2_bound"),
                                         ("closed-form", "closed_form")])
def test_eta_methods(pair_file, capsys, method, tag):
    code, out, _ = run(["eta", "--spec", "renyi:2", "--method", method, "--input", str(pair_file)], capsys)
    assert code == 0 and json.loads(out)["method"] == tag


def test_eta_config_and_output(pair_file, tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"ascent_restarts": 3, "seed": 5}')
    out_path = tmp_path / "est.json"
    code, out, _ = run(["eta", "--spec", "kl", "--method", "ascent", "--input", str(pair_file),
                        "--config", str(cfg), "--output", str(out_path)], capsys)
    assert code == 0 and out == ""
    assert json.loads(out_path.read_text())["method"] == "ascent"


def test_eta_tv_without_mu(tmp_path, capsys):
    p = tmp_path / "k.csv"
    p.write_text("0.75,0.25\n0.25,0.75\n")
    code, out, _ = run(["eta", "--spec", "tv", "--input", str(p)], capsys)
    assert code == 0 and json.loads(out)["value"] == 0.5


def test_validation_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"mu":[0.5,0.5],"K":[[0.75,0.24],[0.25,0.75]]}')
    code, _, err = run(["eta", "--spec", "kl", "--input", str(p)], capsys)
    assert code == cli.EXIT_VALIDATION and "row 0" in err


def test_bad_config_is_validation_error(pair_file, tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"bogus": 1}')
    code, _, _ = run(["eta", "--spec", "kl", "--input", str(pair_file), "--config", str(cfg)], capsys)
    assert code == cli.EXIT_VALIDATION


@pytest.mark.parametrize("argv", [[], ["bogus"], ["eta", "--spec", "kl"], ["figure", "--points", "x"],
                                  ["verify", "--theorem", "4"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == cli.EXIT_USAGE


def test_bad_spec_is_validation_error(pair_file, capsys):
    code, _, _ = run(["eta", "--spec", "renyi:0.5", "--input", str(pair_file)], capsys)
    assert code == cli.EXIT_VALIDATION


def test_verify_passes(capsys):
    code, out, _ = run(["verify", "--theorem", "2", "--trials", "3", "--seed", "1"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["seed"] == 1


def test_verify_all(capsys):
    code, out, _ = run(["verify", "--theorem", "all", "--trials", "2", "--resolution", "20"], capsys)
    doc = json.loads(out)
    assert code == 0 and [r["theorem"] for r in doc["reports"]] == ["1", "2", "3"]


def test_verify_failure_exit_code(monkeypatch, capsys):
    from sdpi import oracle

    def failing(seed, trials, cfg=None):
        rep = oracle.VerificationReport("1", trials, seed)
        rep.failures.append(oracle.Failure("x", 1.0, 0.0, 0.0))
        return rep

    monkeypatch.setattr(oracle, "verify_theorem1", failing)
    code, _, _ = run(["verify", "--theorem", "1", "--trials", "1"], capsys)
    assert code == cli.EXIT_VERIFICATION


def test_seed_env_override(monkeypatch, capsys):
    monkeypatch.setenv("SDPI_SEED", "42")
    code, out, _ = run(["verify", "--theorem", "2", "--trials", "2", "--seed", "1"], capsys)
    assert json.loads(out)["seed"] == 42
    monkeypatch.setenv("SDPI_SEED", "abc")
    code, _, _ = run(["verify", "--theorem", "2", "--trials", "2"], capsys)
    assert code == cli.EXIT_VALIDATION


def test_figure_csv_and_svg(tmp_path, capsys):
    code, out, _ = run(["figure", "--points", "101"], capsys)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 102
    assert lines[26] == "0.25,0.25,0.321928094887,0.5"
    svg = tmp_path / "fig.svg"
    code, _, _ = run(["figure", "--points", "11", "--format", "svg", "--output", str(svg)], capsys)
    assert code == 0 and svg.read_text().count("<polyline") == 3


def test_figure_needs_two_points(capsys):
    code, _, _ = run(["figure", "--points", "1"], capsys)
    assert code == cli.EXIT_USAGE


def test_figure_byte_identical_across_processes():
    outs = [subprocess.run([sys.executable, "-m", "sdpi.cli", "figure", "--points", "101"],
                           capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1] and outs[0].startswith(b"eps,eta_chi2,eta_2,eta_tv\n")


def test_console_script_entry_point():
    from importlib.metadata import entry_points
    eps = [e for e in entry_points(group="console_scripts") if e.name == "sdpi"]
    assert eps and eps[0].value == "sdpi.cli:main"
