import re

import pytest

from ollamab.cli import main

ERROR_LINE = re.compile(r"^ollamab: error: (usage|config|runtime): \S.*$")


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def field(out, name):
    for line in out.splitlines():
        if line.startswith(name + " "):
            return line.split()[-1]
    raise KeyError(name)


def assert_one_line_error(err):
    lines = err.strip().splitlines()
    assert len(lines) == 1 and ERROR_LINE.match(lines[0]), err


def test_samples_reference_parameters(capsys):
    status, out, _ = run(capsys, "samples", "--beta", "0.9", "--epsilon", "0.05", "--delta", "0.05", "--big-l", "3")
    assert status == 0
    n = int(field(out, "samples_per_arm"))
    assert 360 <= n <= 380
    assert field(out, "max_distinct_arms") == "3"
    assert int(field(out, "worst_case_total")) == 3 * n


def test_samples_symmetric_denominators(capsys):
    _, out, _ = run(capsys, "samples", "--beta", "0.5")
    assert field(out, "KL(beta, beta-eps)") == field(out, "KL(beta, beta+eps)")


def test_samples_single_offset_step(capsys):
    _, out, _ = run(capsys, "samples", "--big-l", "1")
    assert field(out, "samples_per_arm") == "318"


def test_samples_invalid(capsys):
    status, _, err = run(capsys, "samples", "--epsilon", "0.2")
    assert status == 2
    assert_one_line_error(err)
    assert "epsilon" in err


@pytest.mark.parametrize("argv", [[], ["bogus"], ["samples", "--beta", "x"]])
def test_usage_errors(capsys, argv):
    status, _, err = run(capsys, *argv)
    assert status == 2
    assert_one_line_error(err)


def test_synth_default(capsys, tmp_path):
    status, out, _ = run(capsys, "synth", "--out", str(tmp_path), "--set", "trials=100")
    assert status == 0
    assert float(field(out, "epsilon_optimal_frequency")) >= 0.95
    assert len((tmp_path / "trials.csv").read_text().splitlines()) == 101


def test_synth_single_arm(capsys, tmp_path):
    status, out, _ = run(capsys, "synth", "--out", str(tmp_path), "--set", "success_probs=[0.9]", "--set", "trials=10")
    assert status == 0
    assert float(field(out, "epsilon_optimal_frequency")) == 1.0
    assert float(field(out, "mean_exploration_samples")) == 0.0


def test_synth_is_reproducible(capsys, tmp_path):
    for name in ("a", "b"):
        run(capsys, "synth", "--out", str(tmp_path / name), "--set", "trials=50", "--seed", "3")
    assert (tmp_path / "a" / "trials.csv").read_bytes() == (tmp_path / "b" / "trials.csv").read_bytes()
    run(capsys, "synth", "--out", str(tmp_path / "c"), "--set", "trials=50", "--seed", "4")
    assert (tmp_path / "a" / "trials.csv").read_bytes() != (tmp_path / "c" / "trials.csv").read_bytes()


def test_synth_rejects_non_monotone(capsys):
    status, _, err = run(capsys, "synth", "--set", "success_probs=[0.9, 0.95, 0.8]")
    assert status == 2
    assert_one_line_error(err)
    assert "nonincreasing" in err


def test_sim_then_report(capsys, tmp_path):
    out_dir = tmp_path / "sim"
    status, out, _ = run(
        capsys, "sim", "--out", str(out_dir), "--set", "num_ues=2", "--set", "duration_subframes=1700",
        "--set", "write_traces=false",
    )
    assert status == 0
    rows = (out_dir / "report.csv").read_text().splitlines()
    assert len(rows) == 5
    before = (out_dir / "report.csv").read_bytes()
    status, out, _ = run(capsys, "report", str(out_dir))
    assert status == 0
    assert (out_dir / "report.csv").read_bytes() == before
    assert (out_dir / "cdf_bler.svg").exists() and (out_dir / "cdf_throughput.svg").exists()
    assert "mab_10" in out


def test_sim_config_errors(capsys, tmp_path):
    status, _, err = run(capsys, "sim", "--set", "duration_subframes=100")
    assert status == 2
    assert_one_line_error(err)
    assert "1604" in err
    status, _, err = run(capsys, "sim", "--config", str(tmp_path / "missing.yaml"))
    assert status == 2
    assert_one_line_error(err)


def test_report_on_empty_dir(capsys, tmp_path):
    status, _, err = run(capsys, "report", str(tmp_path))
    assert status == 2
    assert_one_line_error(err)
    assert str(tmp_path) in err
