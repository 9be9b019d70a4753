import filecmp

import pytest

from ollamab import harness
from ollamab.bounds import ExplorationParams
from ollamab.harness import (
    REPORT_COLUMNS,
    TRACE_COLUMNS,
    ConfigError,
    MetricsReport,
    apply_overrides,
    compute_cdf,
    config_from_dict,
    load_report,
    make_profiles,
    median_elimination_budget,
    read_traces,
    read_yaml,
    run_experiment,
    summarize_comparison,
    write_traces,
)
from ollamab.linksim import TransmissionRecord
from ollamab.synthetic import SEVEN_ARM_BETAS, SyntheticBandit, run_trials


def small(**changes):
    data = read_yaml(harness.DEFAULT_CONFIG_PATH)
    data.update(num_ues=3, duration_subframes=2000)
    data.update(changes)
    return data


@pytest.fixture(scope="module")
def small_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("run")
    cfg = config_from_dict(small())
    return cfg, run_experiment(cfg, output_dir=out), out


# -- config -----------------------------------------------------------------------


def test_default_config_loads():
    cfg = harness.default_config()
    assert cfg.num_ues == 45 and cfg.duration_subframes == 5000
    assert [p.name for p in cfg.policies] == ["mab_10", "mab_7.5", "clustering", "no_olla"]
    assert cfg.policy_params(cfg.policies[1]).alpha == pytest.approx(0.075)
    assert cfg.ue_profile_distribution.cqi_bias == (1, 3)


@pytest.mark.parametrize(
    "change,fragment",
    [
        ({"colour": 1}, "unknown key(s) in config: colour"),
        ({"exploration": {"target_bler": 0.1, "gamma": 1}}, "unknown key(s) in exploration: gamma"),
        ({"policies": [{"name": "x", "kind": "softmax"}]}, "unknown policy 'softmax'"),
        ({"policies": [{"name": "c", "kind": "clustering", "window": 3}]}, "unknown key(s) in policy c: window"),
        ({"policies": ["no_olla", "no_olla"]}, "duplicate policy names"),
        ({"ue_profile_distribution": {"mean_sinr": [10, 5]}}, "low > high"),
        ({"ue_profile_distribution": {"cqi_bias": [0, 7]}}, "cqi_bias"),
        ({"exploration": {"epsilon": 0.2}}, "epsilon must lie"),
        ({"num_ues": 0}, "num_ues"),
    ],
)
def test_config_errors(change, fragment):
    with pytest.raises(ConfigError) as info:
        config_from_dict(small(**change))
    assert fragment in str(info.value)


def test_duration_error_reports_minimum():
    with pytest.raises(ConfigError) as info:
        config_from_dict(small(duration_subframes=1000))
    # 401 pulls per arm, at most 4 distinct arms for L = 7
    assert "1604" in str(info.value)


def test_median_elimination_needs_its_full_budget():
    params = ExplorationParams(0.9, 0.05, 0.05, 3)
    budget = median_elimination_budget(params)
    outcomes = run_trials("median_elimination", params, SyntheticBandit(SEVEN_ARM_BETAS), 2, 0)
    assert all(o.exploration_samples == budget for o in outcomes)
    with pytest.raises(ConfigError) as info:
        config_from_dict(small(policies=[{"name": "me", "kind": "median_elimination"}]))
    assert str(median_elimination_budget(ExplorationParams(0.9, 0.05, 0.05, 7))) in str(info.value)


def test_overrides():
    data = {"a": {"b": 1}, "policies": [{"name": "x"}]}
    out = apply_overrides(data, ["a.b=2.5", "policies.0.name=y", "c.d=[1, 2]", "flag=false"])
    assert out == {"a": {"b": 2.5}, "policies": [{"name": "y"}], "c": {"d": [1, 2]}, "flag": False}
    assert data["a"]["b"] == 1
    with pytest.raises(ConfigError):
        apply_overrides(data, ["novalue"])


def test_profiles_are_seeded_per_ue():
    cfg = config_from_dict(small(num_ues=5))
    a, b = make_profiles(cfg), make_profiles(cfg)
    assert a == b
    assert len({p.seed for p in a}) == 5
    assert all(5.0 <= p.mean_sinr <= 15.0 and 1 <= p.cqi_bias <= 3 for p in a)
    # adding UEs leaves existing profiles alone
    assert make_profiles(config_from_dict(small(num_ues=8)))[:5] == a


# -- runs -------------------------------------------------------------------------


def test_single_no_olla_run():
    cfg = config_from_dict(small(num_ues=1, duration_subframes=100, policies=["no_olla"]))
    report = run_experiment(cfg, persist=False)
    assert len(report.ue_rows) == 1
    summaries, text = summarize_comparison(report)
    assert len(summaries) == 1 and summaries[0].avg_offset == 0.0
    assert len(text.strip().splitlines()) == 2


def test_report_metrics_consistent(small_run):
    cfg, report, _ = small_run
    assert report.policy_order == ["mab_10", "mab_7.5", "clustering", "no_olla"]
    for row in report.ue_rows:
        assert row.transmissions == cfg.duration_subframes
        assert row.achieved_bler == row.nacks / row.transmissions
        assert 0.0 <= row.achieved_bler <= 1.0
    for row in report.rows_for("mab_10"):
        assert row.exploration_samples > 0 and row.target_bler == 0.1
    assert all(r.target_bler == 0.075 for r in report.rows_for("mab_7.5"))
    assert all(r.exploration_samples == 0 for r in report.rows_for("clustering"))


def test_policies_share_the_channel(small_run):
    _, report, out = small_run
    traces = {}
    for name in ("no_olla", "clustering"):
        traces[name] = [rec for _, rec in read_traces(out / "traces" / f"{name}.csv")]
    # identical CQI reports: same SINR path for every policy
    assert [r.cqi_reported for r in traces["no_olla"]] == [r.cqi_reported for r in traces["clustering"]]


def test_same_seed_same_report(small_run):
    cfg, report, _ = small_run
    assert run_experiment(cfg, persist=False) == report


def test_seed_changes_report(small_run):
    cfg, report, _ = small_run
    other = config_from_dict(small(master_seed=cfg.master_seed + 1))
    assert run_experiment(other, persist=False) != report


def test_persisted_report_round_trip(small_run):
    _, report, out = small_run
    assert load_report(out) == report
    header = (out / "report.csv").read_text().splitlines()[0]
    assert tuple(header.split(",")) == REPORT_COLUMNS
    assert len((out / "report.csv").read_text().splitlines()) == 5


def test_csv_outputs_are_byte_identical(small_run, tmp_path):
    cfg, _, out = small_run
    run_experiment(cfg, output_dir=tmp_path)
    for name in ("ue_metrics.csv", "report.csv", "cdf_bler.csv", "cdf_throughput.csv", "traces/mab_10.csv"):
        assert filecmp.cmp(out / name, tmp_path / name, shallow=False), name


def test_load_report_errors(tmp_path):
    with pytest.raises(FileNotFoundError) as info:
        load_report(tmp_path)
    assert str(tmp_path) in str(info.value)
    with pytest.raises(FileNotFoundError):
        load_report(tmp_path / "missing")


# -- CDFs, tables, traces -----------------------------------------------------------------


def test_compute_cdf():
    assert compute_cdf([5]) == [(5, 1.0)]
    assert [f for _, f in compute_cdf([3, 1, 4, 2])] == [0.25, 0.5, 0.75, 1.0]
    with pytest.raises(ValueError):
        compute_cdf([])


def test_report_cdfs_nondecreasing(small_run):
    _, report, _ = small_run
    for policy in report.policy_order:
        for cdf in (report.bler_cdf(policy), report.throughput_cdf(policy)):
            values, fracs = zip(*cdf)
            assert list(values) == sorted(values)
            assert fracs[-1] == 1.0 and all(b > a for a, b in zip(fracs, fracs[1:]))


def test_summary_of_empty_policy_raises():
    with pytest.raises(KeyError):
        MetricsReport([], ["x"]).summary("x")


def _records(n):
    return [TransmissionRecord(t, 4, 7, -1, 12, t % 2 == 0, 1234.567 if t % 2 == 0 else 0.0, "switching")
            for t in range(n)]


def test_trace_files(tmp_path):
    empty = write_traces([], tmp_path / "empty.csv", policy="p")
    assert empty.read_text() == ",".join(TRACE_COLUMNS) + "\n"
    path = write_traces(_records(3), tmp_path / "three.csv", policy="mab")
    assert len(path.read_text().splitlines()) == 4
    back = list(read_traces(path))
    assert [rec for _, rec in back] == _records(3)
    assert {name for name, _ in back} == {"mab"}


def test_trace_io_errors(tmp_path):
    with pytest.raises(OSError) as info:
        write_traces(_records(1), tmp_path / "no" / "such" / "dir.csv")
    assert "dir.csv" in str(info.value)
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n")
    with pytest.raises(ValueError):
        list(read_traces(bad))


def test_svg_rendering(small_run, tmp_path):
    _, report, _ = small_run
    paths = harness.render_cdf_svgs(report, tmp_path)
    assert [p.name for p in paths] == ["cdf_bler.svg", "cdf_throughput.svg"]
    assert all(p.read_text().lstrip().startswith("<?xml") for p in paths)


# -- orderings on the bundled default run --------------------------------------------


def test_default_run_mab_bler_near_target(default_runs):
    bler = default_runs[0].summary("mab_10").avg_bler
    assert 0.07 <= bler <= 0.12


def test_default_run_clustering_offset_below_mab(default_runs):
    report = default_runs[0]
    clustering, mab = report.summary("clustering").avg_offset, report.summary("mab_10").avg_offset
    assert clustering < mab


def test_default_run_mab_throughput_above_clustering(default_runs):
    report = default_runs[0]
    mab, clustering = report.summary("mab_10").avg_throughput_mbps, report.summary("clustering").avg_throughput_mbps
    assert mab > clustering
