"""Stationary Bernoulli bandits over offsets, for validating exploration policies."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .bounds import ExplorationParams
from .harness import ConfigError, read_yaml
from .policies import EXPLORING, Policy, make_policy

EXPLORATION_KINDS = ("pbs", "final", "median_elimination")
TRIAL_COLUMNS = ("trial", "chosen_arm", "true_beta", "epsilon_optimal", "exploration_samples", "distinct_arms")
SUMMARY_COLUMNS = ("policy", "trials", "epsilon_optimal_frequency", "mean_exploration_samples")
DEFAULT_SYNTH_CONFIG = Path(__file__).with_name("data") / "default_synth.yaml"

# the 7-arm instance used throughout the tests: offsets -3..3
SEVEN_ARM_BETAS = (0.98, 0.96, 0.93, 0.90, 0.85, 0.78, 0.70)
# float slack for the epsilon band, 0.9 - 0.05 is not exactly 0.85
_SLACK = 1e-12


class SyntheticBandit:
    """Arm ``l`` in ``-L..L`` succeeds with probability ``success_probs[l + L]``."""

    def __init__(self, success_probs: Sequence[float]) -> None:
        probs = [float(p) for p in success_probs]
        if len(probs) % 2 != 1:
            raise ValueError(f"need an odd number of arms (2L+1), got {len(probs)}")
        if any(not 0.0 <= p <= 1.0 for p in probs):
            raise ValueError("success probabilities must lie in [0, 1]")
        for i, (a, b) in enumerate(zip(probs, probs[1:])):
            if b > a:
                raise ValueError(
                    f"success probabilities must be nonincreasing in the offset; "
                    f"arm {i - len(probs) // 2 + 1} ({b}) exceeds the arm below it ({a})"
                )
        self.success_probs = tuple(probs)
        self.big_l = len(probs) // 2

    @property
    def offsets(self) -> range:
        return range(-self.big_l, self.big_l + 1)

    def beta(self, offset: int) -> float:
        return self.success_probs[offset + self.big_l]

    def pull(self, offset: int, rng: np.random.Generator) -> bool:
        return bool(rng.random() < self.beta(offset))

    def pull_block(self, offset: int, n: int, rng: np.random.Generator) -> int:
        return int(rng.binomial(n, self.beta(offset)))

    def correct_arms(self, beta: float, epsilon: float) -> list[int]:
        """Arms counted as a correct exploration answer.

        Those within ``epsilon`` of ``beta``; if there are none, the arm(s)
        closest to ``beta``.
        """
        inside = [l for l in self.offsets if abs(self.beta(l) - beta) <= epsilon + _SLACK]
        if inside:
            return inside
        gap = min(abs(self.beta(l) - beta) for l in self.offsets)
        return [l for l in self.offsets if abs(self.beta(l) - beta) <= gap + _SLACK]


@dataclass(frozen=True)
class ExplorationOutcome:
    chosen_arm: Optional[int]
    true_beta: Optional[float]
    epsilon_optimal: bool
    exploration_samples: int
    distinct_arms: int


def run_exploration(
    policy: Policy,
    bandit: SyntheticBandit,
    rng: np.random.Generator,
    max_samples: int = 10**9,
) -> int:
    """Pull until the policy leaves the exploring phase; returns samples used.

    Stretches where the policy promises a fixed offset are drawn as one
    binomial.
    """
    used = 0
    while policy.phase == EXPLORING and used < max_samples:
        offset = policy.decide().offset
        n = min(policy.block_length(), max_samples - used)
        if n == 1:
            policy.observe(bandit.pull(offset, rng))
        else:
            policy.observe_block(bandit.pull_block(offset, n, rng), n)
        used += n
    return used


def _distinct_arms(policy: Policy) -> int:
    history = getattr(policy, "arm_history", None)
    if history is not None:
        return len(history)
    return policy.big_l * 2 + 1 if policy.exploration_samples else 0


def exploration_trial(
    kind: str,
    params: ExplorationParams,
    bandit: SyntheticBandit,
    seed: Union[int, np.random.SeedSequence],
) -> ExplorationOutcome:
    rng = np.random.default_rng(seed)
    policy = make_policy(kind, params, rng=rng)
    run_exploration(policy, bandit, rng)
    arm = policy.chosen_arm
    true_beta = bandit.beta(arm) if arm is not None else None
    return ExplorationOutcome(
        chosen_arm=arm,
        true_beta=true_beta,
        epsilon_optimal=arm is not None and arm in bandit.correct_arms(params.beta, params.epsilon),
        exploration_samples=policy.exploration_samples,
        distinct_arms=_distinct_arms(policy),
    )


def trial_seed(master_seed: int, trial: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(master_seed) & 0xFFFFFFFFFFFFFFFF, int(trial)])


def run_trials(
    kind: str,
    params: ExplorationParams,
    bandit: SyntheticBandit,
    trials: int,
    master_seed: int,
) -> list[ExplorationOutcome]:
    return [exploration_trial(kind, params, bandit, trial_seed(master_seed, t)) for t in range(trials)]


@dataclass(frozen=True)
class SynthConfig:
    success_probs: tuple[float, ...]
    params: ExplorationParams
    policy: str = "pbs"
    trials: int = 500
    master_seed: int = 0
    output_dir: str = "results/synth"

    @property
    def bandit(self) -> SyntheticBandit:
        return SyntheticBandit(self.success_probs)


_SYNTH_KEYS = {"success_probs", "target_bler", "epsilon", "delta", "policy", "trials", "master_seed", "output_dir"}


def synth_config_from_dict(data: dict) -> SynthConfig:
    if not isinstance(data, dict):
        raise ConfigError("synthetic config must be a mapping")
    unknown = sorted(set(data) - _SYNTH_KEYS)
    if unknown:
        raise ConfigError(f"unknown key(s) in synthetic config: {', '.join(unknown)}")
    if "success_probs" not in data:
        raise ConfigError("missing required key: success_probs")
    try:
        bandit = SyntheticBandit(data["success_probs"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"success_probs: {exc}") from exc
    policy = str(data.get("policy", "pbs"))
    if policy not in EXPLORATION_KINDS:
        raise ConfigError(f"policy must be one of {', '.join(EXPLORATION_KINDS)}, got {policy!r}")
    try:
        params = ExplorationParams.from_target_bler(
            float(data.get("target_bler", 0.1)),
            float(data.get("epsilon", 0.05)),
            float(data.get("delta", 0.05)),
            bandit.big_l,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    trials = int(data.get("trials", 500))
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    return SynthConfig(
        success_probs=bandit.success_probs,
        params=params,
        policy=policy,
        trials=trials,
        master_seed=int(data.get("master_seed", 0)),
        output_dir=str(data.get("output_dir", "results/synth")),
    )


def load_synth_config(path: Union[str, Path]) -> SynthConfig:
    return synth_config_from_dict(read_yaml(path))


@dataclass(frozen=True)
class SynthReport:
    policy: str
    outcomes: list[ExplorationOutcome]

    @property
    def trials(self) -> int:
        return len(self.outcomes)

    @property
    def epsilon_optimal_frequency(self) -> float:
        return sum(o.epsilon_optimal for o in self.outcomes) / self.trials

    @property
    def mean_exploration_samples(self) -> float:
        return math.fsum(o.exploration_samples for o in self.outcomes) / self.trials


def run_synth(cfg: SynthConfig) -> SynthReport:
    outcomes = run_trials(cfg.policy, cfg.params, cfg.bandit, cfg.trials, cfg.master_seed)
    return SynthReport(cfg.policy, outcomes)


def write_synth_outputs(report: SynthReport, out: Union[str, Path]) -> None:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    with (out / "trials.csv").open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRIAL_COLUMNS)
        for i, o in enumerate(report.outcomes):
            writer.writerow(
                (
                    i,
                    "" if o.chosen_arm is None else o.chosen_arm,
                    "" if o.true_beta is None else repr(o.true_beta),
                    int(o.epsilon_optimal),
                    o.exploration_samples,
                    o.distinct_arms,
                )
            )
    with (out / "summary.csv").open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        writer.writerow(
            (report.policy, report.trials, repr(report.epsilon_optimal_frequency), repr(report.mean_exploration_samples))
        )
