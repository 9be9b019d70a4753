"""Desk-scale single-link simulator.

Each UE has an AR(1) SINR process in dB, reports a biased 4-bit CQI every
few subframes, and is served one transmission per subframe at
``MCS = clamp(f(CQI) + offset)``.  Decoding succeeds with probability
``1 - BLER(MCS, SINR)`` where the BLER curve of every MCS is a logistic
function of SINR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, Union

import numpy as np
import yaml
from scipy.signal import lfilter

from .policies import Policy

NUM_MCS = 28
NUM_CQI = 16
MAX_MCS = NUM_MCS - 1
MAX_CQI = NUM_CQI - 1
# BLER a CQI report promises at its anchor MCS
CQI_BLER_TARGET = 0.1
DEFAULT_CQI_PERIOD = 5

DEFAULT_TABLE_PATH = Path(__file__).with_name("data") / "mcs_table.yaml"


@dataclass(frozen=True)
class McsEntry:
    mcs_index: int
    rate: float  # bits per subframe
    sinr_50pct: float  # dB
    slope: float  # 1/dB


class McsTable:
    def __init__(self, entries: list[McsEntry]) -> None:
        if len(entries) != NUM_MCS:
            raise ValueError(f"MCS table needs {NUM_MCS} entries, got {len(entries)}")
        entries = sorted(entries, key=lambda e: e.mcs_index)
        if [e.mcs_index for e in entries] != list(range(NUM_MCS)):
            raise ValueError("MCS indices must be exactly 0..27")
        for prev, cur in zip(entries, entries[1:]):
            if not cur.rate > prev.rate:
                raise ValueError(f"rate must increase with MCS (at {cur.mcs_index})")
            if not cur.sinr_50pct > prev.sinr_50pct:
                raise ValueError(f"sinr_50pct must increase with MCS (at {cur.mcs_index})")
        if any(e.slope <= 0 for e in entries):
            raise ValueError("BLER curve slopes must be positive")
        self.entries = entries
        self.rates = [e.rate for e in entries]
        self.sinr_50pct = [e.sinr_50pct for e in entries]
        self.slopes = [e.slope for e in entries]
        # lowest SINR at which each CQI anchor MCS meets the CQI BLER target
        margin = math.log(1.0 / CQI_BLER_TARGET - 1.0)
        self.cqi_thresholds = np.array(
            [self.sinr_50pct[cqi_to_mcs(c)] + margin / self.slopes[cqi_to_mcs(c)] for c in range(NUM_CQI)]
        )

    def __len__(self) -> int:
        return len(self.entries)

    def rate(self, mcs: int) -> float:
        return self.rates[mcs]

    def bler(self, mcs: int, sinr: float) -> float:
        x = self.slopes[mcs] * (sinr - self.sinr_50pct[mcs])
        # written to avoid overflow in exp for large |x|
        if x >= 0:
            e = math.exp(-x)
            return e / (1.0 + e)
        return 1.0 / (1.0 + math.exp(x))

    @classmethod
    def default(cls) -> "McsTable":
        return cls.load(DEFAULT_TABLE_PATH)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "McsTable":
        path = Path(path)
        try:
            doc = yaml.safe_load(path.read_text())
        except OSError as exc:
            raise OSError(f"cannot read MCS table {path}: {exc}") from exc
        try:
            rows = doc["entries"]
            entries = [
                McsEntry(int(r["mcs_index"]), float(r["rate"]), float(r["sinr_50pct"]), float(r["slope"]))
                for r in rows
            ]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed MCS table {path}: {exc}") from exc
        return cls(entries)

    def dump(self, path: Union[str, Path]) -> None:
        rows = [
            {"mcs_index": e.mcs_index, "rate": e.rate, "sinr_50pct": e.sinr_50pct, "slope": e.slope}
            for e in self.entries
        ]
        Path(path).write_text(yaml.safe_dump({"entries": rows}, sort_keys=False))


def build_default_table(
    min_efficiency: float = 0.15,
    max_efficiency: float = 5.55,
    resource_elements: int = 1000,
    first_sinr_50pct: float = -7.0,
    sinr_step: float = 0.9,
    slope: float = 1.0,
) -> McsTable:
    """Geometric spectral-efficiency ladder with evenly spaced BLER curves."""
    ratio = (max_efficiency / min_efficiency) ** (1.0 / MAX_MCS)
    entries = [
        McsEntry(
            mcs_index=m,
            rate=round(min_efficiency * ratio**m * resource_elements, 3),
            sinr_50pct=round(first_sinr_50pct + sinr_step * m, 3),
            slope=slope,
        )
        for m in range(NUM_MCS)
    ]
    return McsTable(entries)


@dataclass(frozen=True)
class UeProfile:
    ue_id: int
    mean_sinr: float
    sinr_ar_coefficient: float
    sinr_innovation_std: float
    cqi_bias: int
    target_bler: float
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.sinr_ar_coefficient < 1.0:
            raise ValueError(f"AR coefficient must lie in [0, 1), got {self.sinr_ar_coefficient}")
        if self.sinr_innovation_std < 0:
            raise ValueError("SINR std must be nonnegative")
        if not -5 <= self.cqi_bias <= 5 or int(self.cqi_bias) != self.cqi_bias:
            raise ValueError(f"cqi_bias must be an integer in [-5, 5], got {self.cqi_bias}")
        if not 0.0 < self.target_bler < 0.5:
            raise ValueError(f"target_bler must lie in (0, 0.5), got {self.target_bler}")


@dataclass(frozen=True)
class ChannelState:
    current_sinr: float
    time_index: int = 0


@dataclass(frozen=True)
class TransmissionRecord:
    time_index: int
    ue_id: int
    cqi_reported: int
    offset_applied: int
    mcs_used: int
    ack: bool
    bits_delivered: float
    policy_phase: str


def initial_channel(profile: UeProfile, rng: np.random.Generator) -> ChannelState:
    """Start from the stationary distribution Normal(mean, std**2)."""
    return ChannelState(profile.mean_sinr + profile.sinr_innovation_std * rng.standard_normal(), 0)


def step_channel(state: ChannelState, profile: UeProfile, rng: np.random.Generator) -> ChannelState:
    a = profile.sinr_ar_coefficient
    scale = profile.sinr_innovation_std * math.sqrt(1.0 - a * a)
    sinr = profile.mean_sinr + a * (state.current_sinr - profile.mean_sinr) + scale * rng.standard_normal()
    return ChannelState(sinr, state.time_index + 1)


def sinr_trace(profile: UeProfile, length: int, rng: np.random.Generator) -> np.ndarray:
    """SINR for subframes ``0..length-1``.

    Consumes ``rng`` exactly like ``initial_channel`` followed by
    ``length - 1`` calls to ``step_channel``.
    """
    if length <= 0:
        return np.empty(0)
    a = profile.sinr_ar_coefficient
    std = profile.sinr_innovation_std
    draws = rng.standard_normal(length)
    drive = draws * (std * math.sqrt(1.0 - a * a))
    drive[0] = draws[0] * std
    deviation = lfilter([1.0], [1.0, -a], drive)
    return profile.mean_sinr + deviation


def report_cqi(sinr: float, profile: UeProfile, table: McsTable) -> int:
    """Highest CQI whose anchor MCS meets 10% BLER at ``sinr``, plus the UE bias."""
    honest = int(np.searchsorted(table.cqi_thresholds, sinr, side="right")) - 1
    return min(MAX_CQI, max(0, max(honest, 0) + profile.cqi_bias))


def cqi_to_mcs(cqi: int) -> int:
    return min(MAX_MCS, (cqi * MAX_MCS) // MAX_CQI)


def map_cqi_to_mcs(cqi: int, offset: int, table: Optional[McsTable] = None) -> int:
    return min(MAX_MCS, max(0, cqi_to_mcs(cqi) + offset))


def transmit(mcs: int, true_sinr: float, table: McsTable, rng: np.random.Generator) -> bool:
    return bool(rng.random() >= table.bler(mcs, true_sinr))


@dataclass
class LinkRun:
    """Outcome of one UE served by one policy."""

    profile: UeProfile
    policy: Policy
    records: list[TransmissionRecord] = field(default_factory=list)
    acks: int = 0
    nacks: int = 0
    bits: float = 0.0
    offset_sum: int = 0
    rate_sum: float = 0.0

    @property
    def transmissions(self) -> int:
        return self.acks + self.nacks

    @property
    def bler(self) -> float:
        return self.nacks / self.transmissions

    @property
    def mean_offset(self) -> float:
        return self.offset_sum / self.transmissions

    def throughput_bps(self, subframes_per_second: float = 1000.0) -> float:
        return self.bits / self.transmissions * subframes_per_second


def channel_realization(
    profile: UeProfile, duration: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """SINR trace and per-subframe uniforms that decide decoding outcomes."""
    sinr = sinr_trace(profile, duration, rng)
    uniforms = rng.random(duration)
    return sinr, uniforms


def simulate_link(
    profile: UeProfile,
    policy: Policy,
    table: McsTable,
    duration: int,
    channel_rng: np.random.Generator,
    cqi_period: int = DEFAULT_CQI_PERIOD,
    keep_records: bool = True,
) -> LinkRun:
    """Serve one UE for ``duration`` subframes under ``policy``.

    The SINR trace and decoding uniforms come from ``channel_rng`` only, so
    two policies given equally seeded generators face the same channel.
    """
    if cqi_period < 1:
        raise ValueError("cqi_period must be >= 1")
    sinr, uniforms = channel_realization(profile, duration, channel_rng)
    run = LinkRun(profile, policy)
    records = run.records
    cqi = 0
    for t in range(duration):
        s = float(sinr[t])
        if t % cqi_period == 0:
            cqi = report_cqi(s, profile, table)
        decision = policy.decide()
        mcs = map_cqi_to_mcs(cqi, decision.offset)
        ack = uniforms[t] >= table.bler(mcs, s)
        policy.observe(ack)
        bits = table.rates[mcs] if ack else 0.0
        if ack:
            run.acks += 1
        else:
            run.nacks += 1
        run.bits += bits
        run.offset_sum += decision.offset
        run.rate_sum += table.rates[mcs]
        if keep_records:
            records.append(
                TransmissionRecord(t, profile.ue_id, cqi, decision.offset, mcs, bool(ack), bits, decision.phase)
            )
    return run


def iter_pinned_outcomes(
    profile: UeProfile,
    offset: int,
    table: McsTable,
    duration: int,
    rng: np.random.Generator,
    cqi_period: int = DEFAULT_CQI_PERIOD,
) -> Iterator[bool]:
    """ACK stream of a UE whose offset is held at ``offset``."""
    sinr, uniforms = channel_realization(profile, duration, rng)
    cqi = 0
    for t in range(duration):
        if t % cqi_period == 0:
            cqi = report_cqi(float(sinr[t]), profile, table)
        yield bool(uniforms[t] >= table.bler(map_cqi_to_mcs(cqi, offset), float(sinr[t])))
