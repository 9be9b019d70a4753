"""Bernoulli/binomial probability tools used by the exploration policies.

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist

_STD_NORMAL = NormalDist()


@dataclass(frozen=True)
class ExplorationParams:
    """Target success probability, tolerance, failure budget and offset range.

    Arms are the integer offsets ``-big_l .. big_l``.
    """

    beta: float
    epsilon: float
    delta: float
    big_l: int

    def __post_init__(self) -> None:
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")
        if not 0.0 < self.epsilon < min(self.beta, 1.0 - self.beta):
            raise ValueError(
                f"epsilon must lie in (0, min(beta, 1 - beta)) = "
                f"(0, {min(self.beta, 1.0 - self.beta):.6g}), got {self.epsilon}"
            )
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if int(self.big_l) != self.big_l or self.big_l < 0:
            raise ValueError(f"big_l must be a nonnegative integer, got {self.big_l}")

    @classmethod
    def from_target_bler(
        cls, target_bler: float, epsilon: float, delta: float, big_l: int
    ) -> "ExplorationParams":
        return cls(beta=1.0 - target_bler, epsilon=epsilon, delta=delta, big_l=big_l)

    @property
    def alpha(self) -> float:
        """Target block error rate."""
        return 1.0 - self.beta

    @property
    def num_arms(self) -> int:
        return 2 * self.big_l + 1

    @property
    def max_distinct_arms(self) -> int:
        """Worst-case number of arms a binary search over the range pulls."""
        return max(1, math.ceil(math.log2(self.num_arms)))


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    level: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.lower <= self.upper <= 1.0:
            raise ValueError(f"invalid interval [{self.lower}, {self.upper}]")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def __contains__(self, value: float) -> bool:
        return self.lower <= value <= self.upper


def _xlogy(x: float, y: float) -> float:
    # 0 * log(0 / q) == 0
    return 0.0 if x == 0.0 else x * math.log(y)


def kl_bernoulli(p: float, q: float) -> float:
    """KL divergence between Bernoulli(p) and Bernoulli(q), in nats."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    if p == q:
        return 0.0
    if q in (0.0, 1.0):
        raise ValueError(f"KL(Bern({p}) || Bern({q})) is infinite")
    value = _xlogy(p, p / q) + _xlogy(1.0 - p, (1.0 - p) / (1.0 - q))
    return max(value, 0.0)


def right_tail_bound(n: int, beta: float, beta_l: float) -> float:
    """Chernoff bound on P(S/n >= beta) for S ~ Binomial(n, beta_l), beta > beta_l."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0.0 < beta_l < 1.0:
        raise ValueError(f"beta_l must lie in (0, 1), got {beta_l}")
    if not beta > beta_l:
        raise ValueError(f"right tail needs beta > beta_l, got {beta} <= {beta_l}")
    return math.exp(-n * kl_bernoulli(beta, beta_l))


def left_tail_bound(n: int, beta: float, beta_l: float) -> float:
    """Chernoff bound on P(S/n <= beta) for S ~ Binomial(n, beta_l), beta < beta_l."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0.0 < beta_l < 1.0:
        raise ValueError(f"beta_l must lie in (0, 1), got {beta_l}")
    if not beta < beta_l:
        raise ValueError(f"left tail needs beta < beta_l, got {beta} >= {beta_l}")
    return math.exp(-n * kl_bernoulli(beta, beta_l))


def per_step_failure_budget(params: ExplorationParams) -> float:
    """Failure probability allowed at each binary-search step.

    A single arm (``big_l == 0``) is one step, so the whole budget applies.
    """
    if params.big_l == 0:
        return params.delta
    return params.delta / math.log2(params.num_arms)


def sample_complexity_terms(params: ExplorationParams) -> tuple[float, float, float]:
    """Return ``(numerator, kl_low, kl_high)`` of the per-arm sample count.

    ``kl_low`` guards against promoting an arm at ``beta - epsilon``,
    ``kl_high`` against demoting one at ``beta + epsilon``.
    """
    numerator = math.log(1.0 / per_step_failure_budget(params))
    kl_low = kl_bernoulli(params.beta, params.beta - params.epsilon)
    kl_high = kl_bernoulli(params.beta, params.beta + params.epsilon)
    return numerator, kl_low, kl_high


def required_samples(params: ExplorationParams) -> int:
    """Pulls per sampled arm so each binary-search step errs with prob <= delta_1."""
    numerator, kl_low, kl_high = sample_complexity_terms(params)
    raw = max(numerator / kl_low, numerator / kl_high)
    # guard against 369.99999999 style float noise before the ceiling
    return max(1, math.ceil(round(raw, 9)))


def normal_upper_quantile(tail: float) -> float:
    """z with P(Z > z) = tail for a standard normal Z."""
    if not 0.0 < tail < 1.0:
        raise ValueError(f"tail must lie in (0, 1), got {tail}")
    # inv_cdf(tail) keeps full precision for tiny tails, 1 - tail would not
    return -_STD_NORMAL.inv_cdf(tail)


def wald_interval(beta_hat: float, n: int, delta1: float) -> ConfidenceInterval:
    """Normal-approximation interval whose each side fails with probability delta1."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0.0 < delta1 < 0.5:
        raise ValueError(f"delta1 must lie in (0, 0.5), got {delta1}")
    if not 0.0 <= beta_hat <= 1.0:
        raise ValueError(f"beta_hat must lie in [0, 1], got {beta_hat}")
    z = normal_upper_quantile(delta1)
    half = z * math.sqrt(beta_hat * (1.0 - beta_hat) / n)
    return ConfidenceInterval(
        lower=max(0.0, beta_hat - half),
        upper=min(1.0, beta_hat + half),
        level=1.0 - delta1,
    )


def _log_binom_pmf(n: int, p: float, k: int) -> float:
    if p == 0.0:
        return 0.0 if k == 0 else -math.inf
    if p == 1.0:
        return 0.0 if k == n else -math.inf
    return (
        math.lgamma(n + 1)
        - math.lgamma(k + 1)
        - math.lgamma(n - k + 1)
        + k * math.log(p)
        + (n - k) * math.log1p(-p)
    )


def _logsumexp(values: list[float]) -> float:
    top = max(values)
    if top == -math.inf:
        return -math.inf
    return top + math.log(math.fsum(math.exp(v - top) for v in values))


def exact_binomial_tail(n: int, p: float, k: int, side: str) -> float:
    """Exact P(S >= k) (``side='right'``) or P(S <= k) (``side='left'``), S ~ Bin(n, p)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}], got {k}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if side == "right":
        ks = range(k, n + 1)
    elif side == "left":
        ks = range(0, k + 1)
    else:
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    return min(1.0, math.exp(_logsumexp([_log_binom_pmf(n, p, i) for i in ks])))
