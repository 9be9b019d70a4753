"""Multi-UE experiment runner, metric aggregation and CSV persistence."""

from __future__ import annotations

import csv
import logging
import math
import zlib
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Iterable, Iterator, Optional, Sequence, Union

import numpy as np
import yaml

from .bounds import ExplorationParams, required_samples
from .linksim import (
    DEFAULT_CQI_PERIOD,
    McsTable,
    TransmissionRecord,
    UeProfile,
    simulate_link,
)
from .policies import POLICY_KINDS, POLICY_OPTIONS, make_policy, round_sample_count

log = logging.getLogger(__name__)

DATA_DIR = Path(__file__).with_name("data")
DEFAULT_CONFIG_PATH = DATA_DIR / "default_experiment.yaml"

TRACE_COLUMNS = ("time_index", "ue_id", "policy", "cqi", "offset", "mcs", "ack", "bits", "phase")
REPORT_COLUMNS = ("policy", "avg_throughput_mbps", "avg_bler", "avg_offset", "avg_exploration_samples")
UE_COLUMNS = (
    "policy",
    "ue_id",
    "mean_sinr",
    "cqi_bias",
    "target_bler",
    "transmissions",
    "nacks",
    "achieved_bler",
    "throughput_mbps",
    "mean_offset",
    "mean_rate",
    "exploration_samples",
    "chosen_arm",
)
SUBFRAMES_PER_SECOND = 1000.0
EXPLORING_KINDS = ("final", "pbs", "median_elimination")


class ConfigError(ValueError):
    """Invalid experiment configuration."""


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class PolicySpec:
    name: str
    kind: str
    options: dict = field(default_factory=dict)

    @property
    def target_bler(self) -> Optional[float]:
        return self.options.get("target_bler")


@dataclass(frozen=True)
class ProfileDistribution:
    mean_sinr: tuple[float, float] = (5.0, 15.0)
    cqi_bias: tuple[int, int] = (1, 3)
    ar_coefficient: float = 0.95
    sinr_std: float = 3.0
    target_bler: float = 0.1


@dataclass(frozen=True)
class ExperimentConfig:
    num_ues: int
    duration_subframes: int
    policies: tuple[PolicySpec, ...]
    exploration: ExplorationParams
    mcs_table: str = "default"
    ue_profile_distribution: ProfileDistribution = ProfileDistribution()
    master_seed: int = 0
    output_dir: str = "results"
    cqi_period: int = DEFAULT_CQI_PERIOD
    write_traces: bool = True
    base_dir: str = "."

    def table(self) -> McsTable:
        if self.mcs_table == "default":
            return McsTable.default()
        path = Path(self.mcs_table)
        if not path.is_absolute():
            path = Path(self.base_dir) / path
        return McsTable.load(path)

    def policy_params(self, spec: PolicySpec) -> ExplorationParams:
        opts = spec.options
        base = self.exploration
        target = opts.get("target_bler", base.alpha)
        return ExplorationParams(
            beta=1.0 - float(target),
            epsilon=float(opts.get("epsilon", base.epsilon)),
            delta=float(opts.get("delta", base.delta)),
            big_l=int(opts.get("big_l", base.big_l)),
        )


_TOP_KEYS = {
    "num_ues",
    "duration_subframes",
    "policies",
    "exploration",
    "mcs_table",
    "ue_profile_distribution",
    "master_seed",
    "output_dir",
    "cqi_period",
    "write_traces",
}
_EXPLORATION_KEYS = {"target_bler", "epsilon", "delta", "big_l"}
_PROFILE_KEYS = {"mean_sinr", "cqi_bias", "ar_coefficient", "sinr_std", "target_bler"}


def _reject_unknown(section: str, data: dict, allowed: set) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) in {section}: {', '.join(unknown)}")


def _pair(section: str, value: Any, cast) -> tuple:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigError(f"{section} must be a [low, high] pair, got {value!r}")
    low, high = cast(value[0]), cast(value[1])
    if low > high:
        raise ConfigError(f"{section} has low > high: {value!r}")
    return low, high


def config_from_dict(data: dict, base_dir: Union[str, Path] = ".") -> ExperimentConfig:
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping")
    _reject_unknown("config", data, _TOP_KEYS)
    for key in ("num_ues", "duration_subframes", "policies", "exploration"):
        if key not in data:
            raise ConfigError(f"missing required key: {key}")

    expl = data["exploration"]
    if not isinstance(expl, dict):
        raise ConfigError("exploration must be a mapping")
    _reject_unknown("exploration", expl, _EXPLORATION_KEYS)
    try:
        exploration = ExplorationParams.from_target_bler(
            float(expl.get("target_bler", 0.1)),
            float(expl.get("epsilon", 0.05)),
            float(expl.get("delta", 0.05)),
            int(expl.get("big_l", 7)),
        )
    except ValueError as exc:
        raise ConfigError(f"exploration: {exc}") from exc

    dist_data = data.get("ue_profile_distribution", {}) or {}
    _reject_unknown("ue_profile_distribution", dist_data, _PROFILE_KEYS)
    defaults = ProfileDistribution()
    dist = ProfileDistribution(
        mean_sinr=_pair("ue_profile_distribution.mean_sinr", dist_data.get("mean_sinr", defaults.mean_sinr), float),
        cqi_bias=_pair("ue_profile_distribution.cqi_bias", dist_data.get("cqi_bias", defaults.cqi_bias), int),
        ar_coefficient=float(dist_data.get("ar_coefficient", defaults.ar_coefficient)),
        sinr_std=float(dist_data.get("sinr_std", defaults.sinr_std)),
        target_bler=float(dist_data.get("target_bler", defaults.target_bler)),
    )

    raw_policies = data["policies"]
    if not isinstance(raw_policies, list) or not raw_policies:
        raise ConfigError("policies must be a nonempty list")
    specs = []
    for entry in raw_policies:
        if isinstance(entry, str):
            entry = {"name": entry}
        if not isinstance(entry, dict) or "name" not in entry:
            raise ConfigError(f"policy entry needs a name: {entry!r}")
        entry = dict(entry)
        name = str(entry.pop("name"))
        kind = str(entry.pop("kind", name))
        if kind not in POLICY_OPTIONS:
            raise ConfigError(f"unknown policy {kind!r}; known: {', '.join(POLICY_KINDS)}")
        _reject_unknown(f"policy {name}", entry, POLICY_OPTIONS[kind])
        specs.append(PolicySpec(name, kind, entry))
    names = [s.name for s in specs]
    if len(set(names)) != len(names):
        raise ConfigError(f"duplicate policy names: {names}")

    cfg = ExperimentConfig(
        num_ues=int(data["num_ues"]),
        duration_subframes=int(data["duration_subframes"]),
        policies=tuple(specs),
        exploration=exploration,
        mcs_table=str(data.get("mcs_table", "default")),
        ue_profile_distribution=dist,
        master_seed=int(data.get("master_seed", 0)),
        output_dir=str(data.get("output_dir", "results")),
        cqi_period=int(data.get("cqi_period", DEFAULT_CQI_PERIOD)),
        write_traces=bool(data.get("write_traces", True)),
        base_dir=str(base_dir),
    )
    validate_config(cfg)
    return cfg


def minimum_duration(cfg: ExperimentConfig, spec: PolicySpec) -> int:
    """Subframes the policy's exploration may need in the worst case."""
    if spec.kind not in EXPLORING_KINDS:
        return 0
    params = cfg.policy_params(spec)
    if spec.kind == "median_elimination":
        return median_elimination_budget(params)
    return required_samples(params) * params.max_distinct_arms


def median_elimination_budget(params: ExplorationParams) -> int:
    survivors = params.num_arms
    eps1, delta1 = params.epsilon / 4.0, params.delta / 2.0
    total = 0
    while survivors > 1:
        total += survivors * round_sample_count(eps1, delta1)
        survivors = math.ceil(survivors / 2)
        eps1, delta1 = 0.75 * eps1, delta1 / 2.0
    return total


def validate_config(cfg: ExperimentConfig) -> None:
    if cfg.num_ues < 1:
        raise ConfigError("num_ues must be >= 1")
    if cfg.duration_subframes < 1:
        raise ConfigError("duration_subframes must be >= 1")
    if cfg.cqi_period < 1:
        raise ConfigError("cqi_period must be >= 1")
    dist = cfg.ue_profile_distribution
    if not 0.0 <= dist.ar_coefficient < 1.0:
        raise ConfigError("ue_profile_distribution.ar_coefficient must lie in [0, 1)")
    if dist.sinr_std < 0:
        raise ConfigError("ue_profile_distribution.sinr_std must be >= 0")
    if not (-5 <= dist.cqi_bias[0] and dist.cqi_bias[1] <= 5):
        raise ConfigError("ue_profile_distribution.cqi_bias must stay within [-5, 5]")
    if not 0.0 < dist.target_bler < 0.5:
        raise ConfigError("ue_profile_distribution.target_bler must lie in (0, 0.5)")
    for spec in cfg.policies:
        try:
            params = cfg.policy_params(spec)
        except ValueError as exc:
            raise ConfigError(f"policy {spec.name}: {exc}") from exc
        if not 0.0 < params.alpha < 0.5:
            raise ConfigError(f"policy {spec.name}: target_bler must lie in (0, 0.5)")
        needed = minimum_duration(cfg, spec)
        if cfg.duration_subframes < needed:
            raise ConfigError(
                f"duration_subframes={cfg.duration_subframes} is too short for policy "
                f"{spec.name}: exploration needs up to {needed} subframes"
            )


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    path = Path(path)
    return config_from_dict(read_yaml(path), base_dir=path.parent)


def read_yaml(path: Union[str, Path]) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config {path} is not valid YAML: {exc}") from exc
    return data if data is not None else {}


def apply_overrides(data: dict, overrides: Iterable[str]) -> dict:
    """Apply ``dotted.key=value`` overrides; values are parsed as YAML scalars."""
    data = yaml.safe_load(yaml.safe_dump(data))  # deep copy
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        key, raw = item.split("=", 1)
        value = yaml.safe_load(raw)
        node = data
        parts = key.strip().split(".")
        for part in parts[:-1]:
            if isinstance(node, list):
                node = node[int(part)]
                continue
            if part not in node or not isinstance(node[part], (dict, list)):
                node[part] = {}
            node = node[part]
        last = parts[-1]
        if isinstance(node, list):
            node[int(last)] = value
        else:
            node[last] = value
    return data


# ---------------------------------------------------------------------------
# seeding and profiles


def stream_seed(master_seed: int, ue_id: int, stream: str) -> np.random.SeedSequence:
    """Independent RNG stream per (master seed, UE, named stream)."""
    return np.random.SeedSequence([int(master_seed) & 0xFFFFFFFFFFFFFFFF, int(ue_id), zlib.crc32(stream.encode())])


def _rng(master_seed: int, ue_id: int, stream: str) -> np.random.Generator:
    return np.random.default_rng(stream_seed(master_seed, ue_id, stream))


def make_profiles(cfg: ExperimentConfig) -> list[UeProfile]:
    dist = cfg.ue_profile_distribution
    profiles = []
    for ue_id in range(cfg.num_ues):
        rng = _rng(cfg.master_seed, ue_id, "profile")
        lo, hi = dist.mean_sinr
        bias_lo, bias_hi = dist.cqi_bias
        profiles.append(
            UeProfile(
                ue_id=ue_id,
                mean_sinr=float(rng.uniform(lo, hi)),
                sinr_ar_coefficient=dist.ar_coefficient,
                sinr_innovation_std=dist.sinr_std,
                cqi_bias=int(rng.integers(bias_lo, bias_hi + 1)),
                target_bler=dist.target_bler,
                seed=int(stream_seed(cfg.master_seed, ue_id, "channel").generate_state(1)[0]),
            )
        )
    return profiles


# ---------------------------------------------------------------------------
# metrics


@dataclass(frozen=True)
class UeMetrics:
    policy: str
    ue_id: int
    mean_sinr: float
    cqi_bias: int
    target_bler: float
    transmissions: int
    nacks: int
    achieved_bler: float
    throughput_mbps: float
    mean_offset: float
    mean_rate: float
    exploration_samples: int
    chosen_arm: Optional[int]

    @property
    def within_target(self) -> bool:
        return self.achieved_bler <= self.target_bler


@dataclass(frozen=True)
class PolicySummary:
    policy: str
    avg_throughput_mbps: float
    avg_bler: float
    avg_offset: float
    avg_exploration_samples: float
    frac_within_target: float
    avg_rate: float


def _mean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values)


def compute_cdf(values: Sequence[float]) -> list[tuple[float, float]]:
    """Empirical CDF at the sorted sample points."""
    if len(values) == 0:
        raise ValueError("cannot build a CDF from an empty sample")
    ordered = sorted(values)
    n = len(ordered)
    return [(v, (i + 1) / n) for i, v in enumerate(ordered)]


@dataclass
class MetricsReport:
    ue_rows: list[UeMetrics]
    policy_order: list[str]

    def rows_for(self, policy: str) -> list[UeMetrics]:
        return [r for r in self.ue_rows if r.policy == policy]

    def summary(self, policy: str) -> PolicySummary:
        rows = self.rows_for(policy)
        if not rows:
            raise KeyError(f"no rows for policy {policy!r}")
        return PolicySummary(
            policy=policy,
            avg_throughput_mbps=_mean([r.throughput_mbps for r in rows]),
            avg_bler=_mean([r.achieved_bler for r in rows]),
            avg_offset=_mean([r.mean_offset for r in rows]),
            avg_exploration_samples=_mean([r.exploration_samples for r in rows]),
            frac_within_target=_mean([1.0 if r.within_target else 0.0 for r in rows]),
            avg_rate=_mean([r.mean_rate for r in rows]),
        )

    def summaries(self) -> list[PolicySummary]:
        return [self.summary(p) for p in self.policy_order]

    def bler_cdf(self, policy: str) -> list[tuple[float, float]]:
        return compute_cdf([r.achieved_bler for r in self.rows_for(policy)])

    def throughput_cdf(self, policy: str) -> list[tuple[float, float]]:
        return compute_cdf([r.throughput_mbps for r in self.rows_for(policy)])


def _trace_row(policy: str, rec: TransmissionRecord) -> list:
    return [
        rec.time_index,
        rec.ue_id,
        policy,
        rec.cqi_reported,
        rec.offset_applied,
        rec.mcs_used,
        1 if rec.ack else 0,
        repr(float(rec.bits_delivered)),
        rec.policy_phase,
    ]


def write_traces(
    records: Iterable[Union[TransmissionRecord, tuple[str, TransmissionRecord]]],
    path: Union[str, Path],
    policy: str = "",
) -> Path:
    """Stream records to CSV. Items may be records or ``(policy, record)`` pairs."""
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(TRACE_COLUMNS)
            for item in records:
                if isinstance(item, tuple):
                    writer.writerow(_trace_row(item[0], item[1]))
                else:
                    writer.writerow(_trace_row(policy, item))
    except OSError as exc:
        raise OSError(f"cannot write traces to {path}: {exc.strerror or exc}") from exc
    return path


def read_traces(path: Union[str, Path]) -> Iterator[tuple[str, TransmissionRecord]]:
    path = Path(path)
    try:
        fh = path.open(newline="")
    except OSError as exc:
        raise OSError(f"cannot read traces from {path}: {exc.strerror or exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != TRACE_COLUMNS:
            raise ValueError(f"{path} is not a trace file (header {header!r})")
        for row in reader:
            yield row[2], TransmissionRecord(
                time_index=int(row[0]),
                ue_id=int(row[1]),
                cqi_reported=int(row[3]),
                offset_applied=int(row[4]),
                mcs_used=int(row[5]),
                ack=row[6] == "1",
                bits_delivered=float(row[7]),
                policy_phase=row[8],
            )


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_ue_metrics(report: MetricsReport, path: Union[str, Path]) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(UE_COLUMNS)
        for row in report.ue_rows:
            writer.writerow([_fmt(getattr(row, c)) for c in UE_COLUMNS])


def read_ue_metrics(path: Union[str, Path]) -> MetricsReport:
    casts = {f.name: f.type for f in fields(UeMetrics)}
    rows, order = [], []
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != UE_COLUMNS:
            raise ValueError(f"{path} is not a per-UE metrics file")
        for raw in reader:
            values = {}
            for name in UE_COLUMNS:
                text = raw[name]
                kind = casts[name]
                if kind == "str":
                    values[name] = text
                elif kind == "float":
                    values[name] = float(text)
                elif kind == "Optional[int]":
                    values[name] = int(text) if text else None
                else:
                    values[name] = int(text)
            rows.append(UeMetrics(**values))
            if values["policy"] not in order:
                order.append(values["policy"])
    return MetricsReport(rows, order)


def summarize_comparison(report: MetricsReport) -> tuple[list[PolicySummary], str]:
    """Per-policy averages plus an aligned text rendering."""
    summaries = report.summaries()
    if not summaries:
        raise ValueError("report has no policies")
    header = ("policy", "thr[Mbps]", "BLER", "offset", "expl.samples", "<=target", "rate[bits]")
    lines = [header]
    for s in summaries:
        lines.append(
            (
                s.policy,
                f"{s.avg_throughput_mbps:.3f}",
                f"{s.avg_bler:.4f}",
                f"{s.avg_offset:+.2f}",
                f"{s.avg_exploration_samples:.1f}",
                f"{s.frac_within_target:.2f}",
                f"{s.avg_rate:.1f}",
            )
        )
    widths = [max(len(row[i]) for row in lines) for i in range(len(header))]
    text = "\n".join(
        "  ".join(cell.ljust(w) if i == 0 else cell.rjust(w) for i, (cell, w) in enumerate(zip(row, widths)))
        for row in lines
    )
    return summaries, text + "\n"


def write_report_csv(summaries: Sequence[PolicySummary], path: Union[str, Path]) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for s in summaries:
            writer.writerow([_fmt(getattr(s, c)) for c in REPORT_COLUMNS])


def write_cdf_csv(report: MetricsReport, path: Union[str, Path], metric: str) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("policy", metric, "cdf"))
        for policy in report.policy_order:
            cdf = report.bler_cdf(policy) if metric == "bler" else report.throughput_cdf(policy)
            for value, frac in cdf:
                writer.writerow((policy, _fmt(value), _fmt(frac)))


# ---------------------------------------------------------------------------
# running


def run_ue(
    cfg: ExperimentConfig,
    spec: PolicySpec,
    profile: UeProfile,
    table: McsTable,
    keep_records: bool,
):
    params = cfg.policy_params(spec)
    policy = make_policy(
        spec.kind,
        params,
        rng=_rng(cfg.master_seed, profile.ue_id, f"policy:{spec.name}"),
        **spec.options,
    )
    run = simulate_link(
        profile,
        policy,
        table,
        cfg.duration_subframes,
        np.random.default_rng(stream_seed(cfg.master_seed, profile.ue_id, "channel")),
        cqi_period=cfg.cqi_period,
        keep_records=keep_records,
    )
    target = spec.target_bler if spec.target_bler is not None else profile.target_bler
    metrics = UeMetrics(
        policy=spec.name,
        ue_id=profile.ue_id,
        mean_sinr=profile.mean_sinr,
        cqi_bias=profile.cqi_bias,
        target_bler=float(target),
        transmissions=run.transmissions,
        nacks=run.nacks,
        achieved_bler=run.bler,
        throughput_mbps=run.throughput_bps(SUBFRAMES_PER_SECOND) / 1e6,
        mean_offset=run.mean_offset,
        mean_rate=run.rate_sum / run.transmissions,
        exploration_samples=policy.exploration_samples,
        chosen_arm=policy.chosen_arm,
    )
    return metrics, run.records


def run_experiment(
    cfg: ExperimentConfig,
    output_dir: Union[str, Path, None] = None,
    persist: bool = True,
    progress: bool = False,
) -> MetricsReport:
    """Simulate every (policy, UE) pair and optionally persist the results.

    With ``persist`` it writes ``ue_metrics.csv``, ``report.csv``,
    ``report.txt``, the two CDF CSVs and, when enabled,
    ``traces/<policy>.csv`` to ``output_dir`` (default ``cfg.output_dir``).
    """
    validate_config(cfg)
    table = cfg.table()
    profiles = make_profiles(cfg)
    out = Path(cfg.output_dir if output_dir is None else output_dir) if persist else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        if cfg.write_traces:
            (out / "traces").mkdir(exist_ok=True)

    rows: list[UeMetrics] = []
    for spec in cfg.policies:
        keep = out is not None and cfg.write_traces
        per_ue = []
        for profile in profiles:
            metrics, records = run_ue(cfg, spec, profile, table, keep)
            rows.append(metrics)
            per_ue.append(records)
            if progress:
                log.info("%s ue=%d bler=%.4f", spec.name, profile.ue_id, metrics.achieved_bler)
        if keep:
            write_traces(
                ((spec.name, rec) for records in per_ue for rec in records),
                out / "traces" / f"{_safe_name(spec.name)}.csv",
            )

    report = MetricsReport(rows, [s.name for s in cfg.policies])
    if out is not None:
        persist_report(report, out)
    return report


def persist_report(report: MetricsReport, out: Union[str, Path]) -> list[PolicySummary]:
    out = Path(out)
    write_ue_metrics(report, out / "ue_metrics.csv")
    summaries, text = summarize_comparison(report)
    write_report_csv(summaries, out / "report.csv")
    (out / "report.txt").write_text(text)
    write_cdf_csv(report, out / "cdf_bler.csv", "bler")
    write_cdf_csv(report, out / "cdf_throughput.csv", "throughput_mbps")
    return summaries


def load_report(directory: Union[str, Path]) -> MetricsReport:
    directory = Path(directory)
    path = directory / "ue_metrics.csv"
    if not directory.is_dir():
        raise FileNotFoundError(f"results directory {directory} does not exist")
    if not path.is_file():
        raise FileNotFoundError(f"no simulation results (ue_metrics.csv) in {directory}")
    return read_ue_metrics(path)


def render_cdf_svgs(report: MetricsReport, out: Union[str, Path]) -> list[Path]:
    """Step plots of the BLER and throughput CDFs, one SVG each."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(out)
    written = []
    for metric, label in (("bler", "BLER"), ("throughput", "Throughput [Mbps]")):
        fig, ax = plt.subplots(figsize=(6, 4))
        for policy in report.policy_order:
            cdf = report.bler_cdf(policy) if metric == "bler" else report.throughput_cdf(policy)
            xs, ys = zip(*cdf)
            ax.step(xs, ys, where="post", label=policy)
        ax.set_xlabel(label)
        ax.set_ylabel("CDF")
        ax.grid(True, alpha=0.3)
        ax.legend()
        path = out / f"cdf_{metric}.svg"
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
        written.append(path)
    return written


def _safe_name(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in name)


def default_config() -> ExperimentConfig:
    return load_config(DEFAULT_CONFIG_PATH)
