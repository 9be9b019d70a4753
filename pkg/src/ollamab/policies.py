"""Online offset-selection policies for outer-loop link adaptation.

Every policy follows the same loop: ``decide()`` returns the offset for the
next transmission, ``observe(ack)`` feeds back the outcome.  ``decide`` does
not change state, so it may be called any number of times between
observations.

Offsets are arms; a larger offset means a higher rate and a lower success
probability.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .bounds import (
    ExplorationParams,
    per_step_failure_budget,
    required_samples,
    wald_interval,
)

EXPLORING = "exploring"
SWITCHING = "switching"
FIXED = "fixed"
PHASES = (EXPLORING, SWITCHING, FIXED)

# Wald intervals are too unreliable below this many pulls to prune on.
CONFIDENCE_CHECK_MIN_SAMPLES = 20

# float slack when comparing an estimate against beta +- epsilon
BAND_SLACK = 1e-12

# block_length() value for a policy whose decision never changes again
UNBOUNDED = 1 << 62


@dataclass
class ArmStats:
    acks: int = 0
    nacks: int = 0

    @property
    def pulls(self) -> int:
        return self.acks + self.nacks

    @property
    def beta_hat(self) -> float:
        if self.pulls == 0:
            raise ValueError("success estimate undefined for an arm with no pulls")
        return self.acks / self.pulls

    @property
    def alpha_hat(self) -> float:
        return 1.0 - self.beta_hat

    def record(self, ack: bool) -> None:
        if ack:
            self.acks += 1
        else:
            self.nacks += 1

    def record_block(self, acks: int, pulls: int) -> None:
        if not 0 <= acks <= pulls:
            raise ValueError(f"need 0 <= acks <= pulls, got {acks}/{pulls}")
        self.acks += acks
        self.nacks += pulls - acks


@dataclass(frozen=True)
class PolicyDecision:
    offset: int
    phase: str
    # set on the first decision after an elimination: every arm <= eliminated_below
    # (resp. >= eliminated_above) has been dropped from the search
    eliminated_below: Optional[int] = None
    eliminated_above: Optional[int] = None


class Policy:
    """Base class; subclasses implement ``decide`` and ``_observe``."""

    name = "policy"

    def __init__(self, big_l: int) -> None:
        if big_l < 0:
            raise ValueError(f"big_l must be nonnegative, got {big_l}")
        self.big_l = int(big_l)
        self.total_samples = 0
        self.exploration_samples = 0

    @property
    def phase(self) -> str:
        return FIXED

    @property
    def chosen_arm(self) -> Optional[int]:
        """Arm returned by the exploration stage, once it has finished."""
        return None

    @property
    def exploring(self) -> bool:
        return self.phase == EXPLORING

    def decide(self) -> PolicyDecision:
        raise NotImplementedError

    def observe(self, ack: bool) -> None:
        if self.exploring:
            self.exploration_samples += 1
        self.total_samples += 1
        self._observe(bool(ack))

    def _observe(self, ack: bool) -> None:
        raise NotImplementedError

    def block_length(self) -> int:
        """How many upcoming pulls are guaranteed to use the current offset.

        Within that many pulls the policy performs no check that depends on
        the order of outcomes, so ``observe_block`` may replace them.
        """
        return 1

    def observe_block(self, acks: int, pulls: int) -> None:
        """Feed ``pulls`` outcomes of the current offset at once (``acks`` successes)."""
        if pulls < 1 or pulls > self.block_length():
            raise ValueError(f"block of {pulls} exceeds block_length {self.block_length()}")
        if not 0 <= acks <= pulls:
            raise ValueError(f"need 0 <= acks <= pulls, got {acks}/{pulls}")
        if pulls == 1:
            self.observe(acks == 1)
            return
        if self.exploring:
            self.exploration_samples += pulls
        self.total_samples += pulls
        self._observe_block(acks, pulls)

    def _observe_block(self, acks: int, pulls: int) -> None:
        # default for policies whose state ignores the outcomes order
        for i in range(pulls):
            self._observe(i < acks)

    def _clamp(self, offset: int) -> int:
        return max(-self.big_l, min(self.big_l, offset))


def median_index(low: int, high: int) -> int:
    """Median of ``low..high``; lower middle for an even count."""
    return (low + high) // 2


class SwitchingController:
    """Alternates two adjacent offsets to hold the success rate at ``beta``.

    Plays the lower (safer) offset while the running success estimate is
    below ``beta`` and the higher one otherwise.  The estimate covers only
    outcomes observed by this controller (or the last ``window`` of them);
    ``initial_estimate`` steers the first decision.
    """

    def __init__(
        self,
        pair: tuple[int, int],
        beta: float,
        initial_estimate: Optional[float] = None,
        window: Optional[int] = None,
    ) -> None:
        low, high = sorted(pair)
        if high - low > 1:
            raise ValueError(f"switching pair must be adjacent offsets, got {pair}")
        if window is not None and window < 1:
            raise ValueError(f"window must be positive, got {window}")
        self.pair = (low, high)
        self.beta = beta
        self.initial_estimate = beta if initial_estimate is None else initial_estimate
        self.window = window
        self.stats = ArmStats()
        self._recent: Optional[deque] = deque(maxlen=window) if window else None

    @property
    def degenerate(self) -> bool:
        return self.pair[0] == self.pair[1]

    @property
    def estimate(self) -> float:
        if self._recent is not None:
            return sum(self._recent) / len(self._recent) if self._recent else self.initial_estimate
        return self.stats.beta_hat if self.stats.pulls else self.initial_estimate

    def decide(self) -> int:
        return self.pair[0] if self.estimate < self.beta else self.pair[1]

    def observe(self, ack: bool) -> None:
        self.stats.record(ack)
        if self._recent is not None:
            self._recent.append(1 if ack else 0)


class _SearchPolicy(Policy):
    """Shared binary-search skeleton of the structured exploration policies."""

    def __init__(self, params: ExplorationParams, switching_window: Optional[int] = None) -> None:
        super().__init__(params.big_l)
        self.params = params
        self.n_required = required_samples(params)
        self.delta1 = per_step_failure_budget(params)
        self.switching_window = switching_window
        self.low = -self.big_l
        self.high = self.big_l
        self.index = 0
        self.stats = ArmStats()
        self.arm_history: dict[int, ArmStats] = {}
        # ("below", arm) / ("above", arm) in the order they happened
        self.eliminations: list[tuple[str, int]] = []
        self.switching: Optional[SwitchingController] = None
        self._fixed_arm: Optional[int] = None
        self._chosen: Optional[int] = None
        self._pending: tuple[Optional[int], Optional[int]] = (None, None)
        self._last_move: Optional[str] = None
        self._last_estimate: Optional[float] = None
        self._advance()

    # -- state queries -------------------------------------------------
    @property
    def phase(self) -> str:
        if self.switching is not None:
            return FIXED if self.switching.degenerate else SWITCHING
        if self._fixed_arm is not None:
            return FIXED
        return EXPLORING

    @property
    def chosen_arm(self) -> Optional[int]:
        return self._chosen

    @property
    def sampled_arms(self) -> list[int]:
        return sorted(self.arm_history)

    def decide(self) -> PolicyDecision:
        if self.switching is not None:
            return PolicyDecision(self.switching.decide(), self.phase)
        if self._fixed_arm is not None:
            return PolicyDecision(self._fixed_arm, FIXED)
        below, above = self._pending
        return PolicyDecision(self.index, EXPLORING, below, above)

    # -- transitions ---------------------------------------------------
    def _observe(self, ack: bool) -> None:
        self._pending = (None, None)
        if self.switching is not None:
            self.switching.observe(ack)
            return
        if self._fixed_arm is not None:
            return
        self.stats.record(ack)
        self._after_sample()

    def _observe_block(self, acks: int, pulls: int) -> None:
        self._pending = (None, None)
        if self.switching is not None:
            if self.switching.degenerate:
                self.switching.stats.record_block(acks, pulls)
                return
            for i in range(pulls):
                self.switching.observe(i < acks)
            return
        if self._fixed_arm is not None:
            return
        self.stats.record_block(acks, pulls)
        self._after_sample()

    def block_length(self) -> int:
        if self.switching is not None:
            return UNBOUNDED if self.switching.degenerate else 1
        if self._fixed_arm is not None:
            return UNBOUNDED
        return self._samples_until_check()

    def _samples_until_check(self) -> int:
        return self.n_required - self.stats.pulls

    def _after_sample(self) -> None:
        raise NotImplementedError

    def _eliminate_below(self) -> None:
        """Current arm looks too safe: drop it and every lower offset."""
        self._pending = (self.index, None)
        self.eliminations.append(("below", self.index))
        self.low = self.index + 1
        self._last_move = "low"
        self._finish_arm()

    def _eliminate_above(self) -> None:
        """Current arm looks too risky: drop it and every higher offset."""
        self._pending = (None, self.index)
        self.eliminations.append(("above", self.index))
        self.high = self.index - 1
        self._last_move = "high"
        self._finish_arm()

    def _finish_arm(self) -> None:
        self._last_estimate = self.stats.beta_hat
        self.arm_history[self.index] = self.stats
        self._advance()

    def _advance(self) -> None:
        if self.high > self.low:
            self.index = median_index(self.low, self.high)
            self.stats = ArmStats()
        elif self.high == self.low:
            self._settle_single(self.low)
        else:
            edge = self.low if self._last_move == "low" else self.high
            self._settle_empty(self._clamp(edge))

    def _fix(self, arm: int) -> None:
        self._fixed_arm = arm
        self._chosen = arm

    def _settle_single(self, arm: int) -> None:
        self._fix(arm)

    def _settle_empty(self, arm: int) -> None:
        self._fix(arm)

    def _start_switching(self, pair: tuple[int, int], chosen: int, estimate: float) -> None:
        pair = (self._clamp(pair[0]), self._clamp(pair[1]))
        self._chosen = chosen
        self.switching = SwitchingController(
            pair, self.params.beta, initial_estimate=estimate, window=self.switching_window
        )


class PBSPolicy(_SearchPolicy):
    """Binary search over the ordered offsets with a fixed per-arm sample count.

    Each sampled arm gets ``required_samples(params)`` pulls; its estimate
    then eliminates every arm on the wrong side of the target.  The search
    settles on the last surviving arm and keeps playing it.
    """

    name = "pbs"

    def _after_sample(self) -> None:
        if self.stats.pulls < self.n_required:
            return
        beta_hat = self.stats.beta_hat
        if beta_hat > self.params.beta:
            self._eliminate_below()
        elif beta_hat < self.params.beta:
            self._eliminate_above()
        else:
            # estimate exactly on target: nothing to eliminate, this is the arm
            self.arm_history[self.index] = self.stats
            self._fix(self.index)


class FinalPolicy(_SearchPolicy):
    """Binary search with confidence-interval pruning and a switching phase.

    After ``CONFIDENCE_CHECK_MIN_SAMPLES`` pulls of an arm, a Wald interval
    at level ``1 - delta_1`` that clears the band ``[beta - eps, beta + eps]``
    eliminates the arm early.  An arm that reaches the full sample count
    with its estimate inside the band is paired with the neighbour on the
    other side of the target, and the pair is alternated forever.
    """

    name = "final"

    def _samples_until_check(self) -> int:
        pulls = self.stats.pulls
        until_full = self.n_required - pulls
        if pulls + 1 >= CONFIDENCE_CHECK_MIN_SAMPLES:
            return 1
        return min(until_full, CONFIDENCE_CHECK_MIN_SAMPLES - pulls)

    def _after_sample(self) -> None:
        beta, eps = self.params.beta, self.params.epsilon
        pulls = self.stats.pulls
        beta_hat = self.stats.beta_hat
        if pulls >= CONFIDENCE_CHECK_MIN_SAMPLES and pulls < self.n_required:
            ci = wald_interval(beta_hat, pulls, self.delta1)
            if ci.upper < beta - eps:
                self._eliminate_above()
                return
            if ci.lower > beta + eps:
                self._eliminate_below()
                return
        if pulls < self.n_required:
            return
        # band edges count as inside; the slack absorbs 0.9 - 0.05 != 0.85
        if beta_hat < beta - eps - BAND_SLACK:
            self._eliminate_above()
        elif beta_hat > beta + eps + BAND_SLACK:
            self._eliminate_below()
        else:
            self.arm_history[self.index] = self.stats
            if beta_hat < beta:
                pair = (self.index - 1, self.index)
            else:
                pair = (self.index, self.index + 1)
            self._start_switching(pair, self.index, beta_hat)

    def _settle_single(self, arm: int) -> None:
        if self._last_move is None:
            # only one arm in range (big_l == 0)
            self._fix(arm)
            return
        # the survivor sits between the last sampled arm and an eliminated one
        sampled = arm - 1 if self._last_move == "low" else arm + 1
        self._start_switching((sampled, arm), arm, self._last_estimate)

    def _settle_empty(self, arm: int) -> None:
        inward = arm - 1 if self._last_move == "low" else arm + 1
        self._start_switching((arm, self._clamp(inward)), arm, self._last_estimate)


class MedianEliminationPolicy(Policy):
    """Median elimination for best-arm identification.

    Each round pulls every surviving arm ``ceil(4 / eps1**2 * ln(3 / delta1))``
    times, keeps the half with the lowest success estimates, then tightens
    ``eps1`` by 3/4 and halves ``delta1``.
    """

    name = "median_elimination"

    def __init__(self, params: ExplorationParams, offsets: Optional[Sequence[int]] = None) -> None:
        super().__init__(params.big_l)
        self.params = params
        self.survivors = list(offsets) if offsets is not None else list(range(-self.big_l, self.big_l + 1))
        if not self.survivors:
            raise ValueError("need at least one arm")
        self.epsilon1 = params.epsilon / 4.0
        self.delta1 = params.delta / 2.0
        self.rounds_completed = 0
        self.round_samples = round_sample_count(self.epsilon1, self.delta1)
        self.round_stats = {arm: ArmStats() for arm in self.survivors}
        self._cursor = 0
        self._pending: tuple[Optional[int], Optional[int]] = (None, None)

    @property
    def phase(self) -> str:
        return FIXED if len(self.survivors) == 1 else EXPLORING

    @property
    def chosen_arm(self) -> Optional[int]:
        return self.survivors[0] if len(self.survivors) == 1 else None

    def decide(self) -> PolicyDecision:
        if len(self.survivors) == 1:
            return PolicyDecision(self.survivors[0], FIXED)
        below, above = self._pending
        return PolicyDecision(self.survivors[self._cursor], EXPLORING, below, above)

    def block_length(self) -> int:
        if len(self.survivors) == 1:
            return UNBOUNDED
        return self.round_samples - self.round_stats[self.survivors[self._cursor]].pulls

    def _observe(self, ack: bool) -> None:
        self._observe_block(1 if ack else 0, 1)

    def _observe_block(self, acks: int, pulls: int) -> None:
        self._pending = (None, None)
        if len(self.survivors) == 1:
            return
        stats = self.round_stats[self.survivors[self._cursor]]
        stats.record_block(acks, pulls)
        if stats.pulls < self.round_samples:
            return
        self._cursor += 1
        if self._cursor == len(self.survivors):
            self._end_round()

    def _end_round(self) -> None:
        keep = math.ceil(len(self.survivors) / 2)
        ranked = sorted(self.survivors, key=lambda arm: (self.round_stats[arm].beta_hat, arm))
        kept = sorted(ranked[:keep])
        dropped = set(self.survivors) - set(kept)
        below = max(dropped) if dropped and max(dropped) < min(kept) else None
        above = min(dropped) if dropped and min(dropped) > max(kept) else None
        self._pending = (below, above)
        self.survivors = kept
        self.rounds_completed += 1
        self.epsilon1 *= 0.75
        self.delta1 /= 2.0
        self.round_samples = round_sample_count(self.epsilon1, self.delta1)
        self.round_stats = {arm: ArmStats() for arm in self.survivors}
        self._cursor = 0


def round_sample_count(epsilon1: float, delta1: float) -> int:
    """Per-arm pulls in one median-elimination round."""
    return math.ceil(4.0 / epsilon1**2 * math.log(3.0 / delta1))


def _offsets(big_l: int, offsets: Optional[Iterable[int]]) -> list[int]:
    arms = list(offsets) if offsets is not None else list(range(-big_l, big_l + 1))
    if not arms:
        raise ValueError("need at least one arm")
    return arms


class ThompsonPolicy(Policy):
    """Beta-Bernoulli Thompson sampling on the success probability.

    Samples come from ``Beta(S + 1, F + 1)``, i.e. a uniform prior.
    """

    name = "thompson"

    def __init__(
        self,
        big_l: int,
        rng: Optional[np.random.Generator] = None,
        offsets: Optional[Sequence[int]] = None,
    ) -> None:
        super().__init__(big_l)
        self.offsets = _offsets(big_l, offsets)
        self.rng = rng if rng is not None else np.random.default_rng()
        self.successes = np.zeros(len(self.offsets))
        self.failures = np.zeros(len(self.offsets))
        self._choice: Optional[int] = None

    @property
    def phase(self) -> str:
        return EXPLORING

    def decide(self) -> PolicyDecision:
        # draw once per transmission; repeated decide() calls reuse the draw
        if self._choice is None:
            theta = self.rng.beta(self.successes + 1.0, self.failures + 1.0)
            self._choice = int(np.argmax(theta))
        return PolicyDecision(self.offsets[self._choice], EXPLORING)

    def _observe(self, ack: bool) -> None:
        if self._choice is None:
            self.decide()
        if ack:
            self.successes[self._choice] += 1
        else:
            self.failures[self._choice] += 1
        self._choice = None

    @property
    def play_counts(self) -> dict[int, int]:
        return {arm: int(s + f) for arm, s, f in zip(self.offsets, self.successes, self.failures)}


class UCBPolicy(Policy):
    """UCB1: one pull of every arm, then the largest ``x + sqrt(2 ln n / N)``.

    Ties go to the lowest offset.
    """

    name = "ucb"

    def __init__(self, big_l: int, offsets: Optional[Sequence[int]] = None) -> None:
        super().__init__(big_l)
        self.offsets = _offsets(big_l, offsets)
        self.successes = np.zeros(len(self.offsets))
        self.pulls = np.zeros(len(self.offsets))

    @property
    def phase(self) -> str:
        return EXPLORING

    def _choice(self) -> int:
        unplayed = np.flatnonzero(self.pulls == 0)
        if unplayed.size:
            return int(unplayed[0])
        n = self.pulls.sum()
        index = self.successes / self.pulls + np.sqrt(2.0 * math.log(n) / self.pulls)
        # np.argmax returns the first maximiser, i.e. the lowest offset
        return int(np.argmax(index))

    def decide(self) -> PolicyDecision:
        return PolicyDecision(self.offsets[self._choice()], EXPLORING)

    def _observe(self, ack: bool) -> None:
        arm = self._choice()
        self.pulls[arm] += 1
        if ack:
            self.successes[arm] += 1

    @property
    def play_counts(self) -> dict[int, int]:
        return {arm: int(n) for arm, n in zip(self.offsets, self.pulls)}


class ClusteringPolicy(Policy):
    """Error-cluster heuristic: step down after a NACK run, up after an ACK run."""

    name = "clustering"

    def __init__(self, big_l: int, nack_run: int = 5, ack_run: int = 50) -> None:
        super().__init__(big_l)
        if nack_run < 1 or ack_run < 1:
            raise ValueError("run thresholds must be >= 1")
        self.nack_threshold = nack_run
        self.ack_threshold = ack_run
        self.offset = 0
        self.ack_streak = 0
        self.nack_streak = 0

    def decide(self) -> PolicyDecision:
        return PolicyDecision(self.offset, FIXED)

    def _observe(self, ack: bool) -> None:
        if ack:
            self.nack_streak = 0
            self.ack_streak += 1
            if self.ack_streak >= self.ack_threshold:
                self.offset = min(self.offset + 1, self.big_l)
                self.ack_streak = 0
        else:
            self.ack_streak = 0
            self.nack_streak += 1
            if self.nack_streak >= self.nack_threshold:
                self.offset = max(self.offset - 1, -self.big_l)
                self.nack_streak = 0


class NoOllaPolicy(Policy):
    """Always transmit at the CQI-derived rate."""

    name = "no_olla"

    def __init__(self, big_l: int = 0) -> None:
        super().__init__(big_l)

    def decide(self) -> PolicyDecision:
        return PolicyDecision(0, FIXED)

    def _observe(self, ack: bool) -> None:
        pass

    def block_length(self) -> int:
        return UNBOUNDED

    def _observe_block(self, acks: int, pulls: int) -> None:
        pass


def pbs_policy(params: ExplorationParams) -> PBSPolicy:
    return PBSPolicy(params)


def final_policy(params: ExplorationParams, switching_window: Optional[int] = None) -> FinalPolicy:
    return FinalPolicy(params, switching_window=switching_window)


def median_elimination_policy(params: ExplorationParams) -> MedianEliminationPolicy:
    return MedianEliminationPolicy(params)


def thompson_policy(big_l: int, rng: Optional[np.random.Generator] = None) -> ThompsonPolicy:
    return ThompsonPolicy(big_l, rng=rng)


def ucb_policy(big_l: int) -> UCBPolicy:
    return UCBPolicy(big_l)


def clustering_policy(big_l: int, nack_run: int = 5, ack_run: int = 50) -> ClusteringPolicy:
    return ClusteringPolicy(big_l, nack_run=nack_run, ack_run=ack_run)


def no_olla_policy() -> NoOllaPolicy:
    return NoOllaPolicy()


POLICY_KINDS = (
    "final",
    "pbs",
    "median_elimination",
    "thompson",
    "ucb",
    "clustering",
    "no_olla",
)

# options a policy entry may carry besides the exploration parameters
POLICY_OPTIONS = {
    "final": {"target_bler", "epsilon", "delta", "big_l", "switching_window"},
    "pbs": {"target_bler", "epsilon", "delta", "big_l"},
    "median_elimination": {"target_bler", "epsilon", "delta", "big_l"},
    "thompson": {"big_l"},
    "ucb": {"big_l"},
    "clustering": {"big_l", "nack_run", "ack_run"},
    "no_olla": set(),
}


def make_policy(
    kind: str,
    params: ExplorationParams,
    rng: Optional[np.random.Generator] = None,
    **options,
) -> Policy:
    """Build a policy by registry name; ``params`` supplies target and range."""
    if kind not in POLICY_OPTIONS:
        raise KeyError(f"unknown policy {kind!r}; known: {', '.join(POLICY_KINDS)}")
    if kind == "final":
        return FinalPolicy(params, switching_window=options.get("switching_window"))
    if kind == "pbs":
        return PBSPolicy(params)
    if kind == "median_elimination":
        return MedianEliminationPolicy(params)
    if kind == "thompson":
        return ThompsonPolicy(params.big_l, rng=rng)
    if kind == "ucb":
        return UCBPolicy(params.big_l)
    if kind == "clustering":
        return ClusteringPolicy(
            params.big_l,
            nack_run=int(options.get("nack_run", 5)),
            ack_run=int(options.get("ack_run", 50)),
        )
    return NoOllaPolicy()
