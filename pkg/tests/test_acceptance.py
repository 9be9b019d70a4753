"""Acceptance suite: each test checks one criterion at its stated tolerance
and records a one-line PASS/FAIL verdict (printed in the terminal summary)."""

import filecmp
import math

import numpy as np

from ollamab.bounds import (
    ExplorationParams,
    exact_binomial_tail,
    left_tail_bound,
    required_samples,
    right_tail_bound,
)
from ollamab.policies import SwitchingController, ThompsonPolicy, UCBPolicy
from ollamab.synthetic import SEVEN_ARM_BETAS, SyntheticBandit, run_trials

P7 = ExplorationParams(0.9, 0.05, 0.05, 3)
BANDIT = SyntheticBandit(SEVEN_ARM_BETAS)


def test_criterion_1_sample_complexity(record_criterion):
    n = required_samples(P7)
    k = P7.max_distinct_arms
    ok = 360 <= n <= 380 and k == 3
    assert record_criterion(1, "sample-complexity formula", ok, f"N={n} per arm (band [360, 380]), k={k}, total={n * k}")


def test_criterion_2_complexity_reduction(record_criterion):
    seeds = 100
    pbs = run_trials("pbs", P7, BANDIT, seeds, master_seed=2002)
    me = run_trials("median_elimination", P7, BANDIT, seeds, master_seed=2002)
    pbs_total = sum(o.exploration_samples for o in pbs)
    me_total = sum(o.exploration_samples for o in me)
    ok = pbs_total <= me_total / 5
    assert record_criterion(
        2, "PBS vs median elimination samples", ok,
        f"PBS {pbs_total} vs ME {me_total} over {seeds} paired seeds, ratio 1/{me_total / pbs_total:.0f} (need <= 1/5)",
    )


def test_criterion_3_pac_guarantee(record_criterion):
    details, ok = [], True
    for kind in ("pbs", "final"):
        outcomes = run_trials(kind, P7, BANDIT, 500, master_seed=3003)
        freq = sum(0.85 - 1e-12 <= o.true_beta <= 0.95 + 1e-12 for o in outcomes) / 500
        ok &= freq >= 0.95
        details.append(f"{kind} {freq:.3f}")
    assert record_criterion(3, "PAC guarantee", ok, ", ".join(details) + " (need >= 0.95 of 500 trials)")


def test_criterion_4_tail_bounds(record_criterion):
    violations, checked = [], 0
    lattice = [i / 20 for i in range(1, 20)]
    for n in (10, 50, 100, 500):
        for beta in lattice:
            for beta_l in lattice:
                if beta > beta_l:
                    exact = exact_binomial_tail(n, beta_l, math.ceil(n * beta - 1e-9), "right")
                    bound = right_tail_bound(n, beta, beta_l)
                elif beta < beta_l:
                    exact = exact_binomial_tail(n, beta_l, math.floor(n * beta + 1e-9), "left")
                    bound = left_tail_bound(n, beta, beta_l)
                else:
                    continue
                checked += 1
                if exact > bound * (1 + 1e-9):
                    violations.append((n, beta, beta_l, exact, bound))
    ok = not violations
    assert record_criterion(4, "tail-bound soundness", ok, f"{checked} grid points, {len(violations)} violations")


def test_criterion_5_bler_control(default_runs, record_criterion):
    report, _, _ = default_runs
    s = {x.policy: x for x in report.summaries()}
    mab_rows = report.rows_for("mab_10") + report.rows_for("mab_7.5")
    within = sum(r.within_target for r in mab_rows) / len(mab_rows)
    checks = [
        ("MAB-10% BLER in [0.07, 0.12]", 0.07 <= s["mab_10"].avg_bler <= 0.12, f"{s['mab_10'].avg_bler:.4f}"),
        ("MAB-7.5% BLER in [0.05, 0.095]", 0.05 <= s["mab_7.5"].avg_bler <= 0.095, f"{s['mab_7.5'].avg_bler:.4f}"),
        (">= 70% of MAB UEs at or below target", within >= 0.70, f"{within:.3f}"),
        ("clustering BLER <= 0.05", s["clustering"].avg_bler <= 0.05, f"{s['clustering'].avg_bler:.4f}"),
        ("no-OLLA BLER >= 0.15", s["no_olla"].avg_bler >= 0.15, f"{s['no_olla'].avg_bler:.4f}"),
    ]
    ok = all(passed for _, passed, _ in checks)
    detail = "; ".join(f"{name}: {value} {'ok' if passed else 'MISS'}" for name, passed, value in checks)
    assert record_criterion(5, "BLER control (default run)", ok, detail)


def test_criterion_6_throughput_ordering(default_runs, record_criterion):
    report, _, _ = default_runs
    s = {x.policy: x.avg_throughput_mbps for x in report.summaries()}
    first = s["mab_10"] > s["no_olla"]
    second = s["no_olla"] > s["clustering"]
    detail = (
        f"MAB-10% {s['mab_10']:.3f} > no-OLLA {s['no_olla']:.3f}: {'ok' if first else 'MISS'}; "
        f"no-OLLA {s['no_olla']:.3f} > clustering {s['clustering']:.3f}: {'ok' if second else 'MISS'}"
    )
    assert record_criterion(6, "throughput ordering (default run)", first and second, detail)


def _tail_share_of_safest_arm(policy, seed):
    rng = np.random.default_rng(seed)
    tail = 0
    for t in range(50_000):
        offset = policy.decide().offset
        policy.observe(BANDIT.pull(offset, rng))
        if t >= 40_000 and offset == -3:
            tail += 1
    return tail / 10_000


def test_criterion_7_conservative_convergence(record_criterion):
    ts = _tail_share_of_safest_arm(ThompsonPolicy(3, rng=np.random.default_rng(7007)), 77)
    ucb = _tail_share_of_safest_arm(UCBPolicy(3), 78)
    ok = ts > 0.9 and ucb > 0.5
    assert record_criterion(
        7, "conservative convergence", ok,
        f"arm -L share of last 10k of 50k: Thompson {ts:.3f} (need > 0.9), UCB {ucb:.3f} (need > 0.5)",
    )


def test_criterion_8_switching_controller(record_criterion):
    rng = np.random.default_rng(8008)
    probs = {-1: 0.93, 0: 0.88}
    controller = SwitchingController((-1, 0), 0.9)
    for u in rng.random(100_000):
        controller.observe(bool(u < probs[controller.decide()]))
    rate = controller.stats.beta_hat
    ok = 0.88 <= rate <= 0.92
    assert record_criterion(8, "switching controller", ok, f"achieved success rate {rate:.4f} over 100k steps (band [0.88, 0.92])")


def test_criterion_9_determinism(default_runs, record_criterion):
    _, first, second = default_runs
    names = sorted(p.relative_to(first).as_posix() for p in first.rglob("*.csv"))
    differing = [n for n in names if not filecmp.cmp(first / n, second / n, shallow=False)]
    ok = bool(names) and not differing
    assert record_criterion(
        9, "determinism", ok,
        f"{len(names)} CSVs compared, {len(differing)} differ" + (f" ({', '.join(differing)})" if differing else ""),
    )
