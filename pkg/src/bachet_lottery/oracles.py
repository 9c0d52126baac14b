"""Independent validation of the equilibrium engine.

Two routes that never touch the backward-induction maximization:
Monte-Carlo play of the actual game under the engine's policy, and
exhaustive enumeration of stationary pure profiles on small instances
with a one-shot-deviation optimality filter.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .engine import ValueTable, expected_win_prob
from .errors import InstanceTooLargeError
from .lotteries import GameSpec, Lottery, candidate_set

FIRST = "first"
SECOND = "second"


def simulate_game(n: int, policy, rng: np.random.Generator) -> str:
    """Play one game and return the winner.

    ``policy`` maps pile size k (1..n) to the Lottery the mover plays.
    The mover samples a take-count i; taking the last object loses,
    including overshooting (i >= pile).
    """
    pile = n
    mover = 0  # 0 = first player
    while True:
        lot = policy[pile] if not callable(policy) else policy(pile)
        u = rng.random()
        cum = 0.0
        take = lot.m
        for i, w in enumerate(lot.probs, start=1):
            cum += w
            if u < cum:
                take = i
                break
        if take >= pile:
            return SECOND if mover == 0 else FIRST
        pile -= take
        mover ^= 1


@dataclass(frozen=True)
class SimConfig:
    """Monte-Carlo setup: both players follow the table's argmax policy."""

    table: ValueTable
    n: int
    replications: int
    seed: int

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if not (1 <= self.n <= self.table.n):
            raise ValueError(f"n={self.n} outside the solved range 1..{self.table.n}")


@dataclass(frozen=True)
class SimResult:
    wins_first_player: int
    replications: int
    p_hat: float
    std_err: float


def estimate_win_prob(cfg: SimConfig) -> SimResult:
    """Estimate the first player's win probability by replicated play.

    Randomness comes from a counter-based Philox stream keyed by the
    seed; replication r consumes row r of the (R x n) uniform draw
    matrix, so results are reproducible and independent of evaluation
    order.  A game over n objects ends within n moves.
    """
    vt, n, R = cfg.table, cfg.n, cfg.replications
    cum = np.zeros((n + 1, vt.m))
    for k in range(1, n + 1):
        cum[k] = np.cumsum(vt.policy(k).probs)
    rng = np.random.Generator(np.random.Philox(cfg.seed))
    draws = rng.random((R, n))

    pile = np.full(R, n, dtype=np.int64)
    mover = np.zeros(R, dtype=np.int8)
    winner = np.full(R, -1, dtype=np.int8)
    alive = np.arange(R)
    for t in range(n):
        if alive.size == 0:
            break
        u = draws[alive, t]
        take = 1 + (u[:, None] >= cum[pile[alive]]).sum(axis=1)
        np.minimum(take, vt.m, out=take)
        ends = take >= pile[alive]
        ended = alive[ends]
        winner[ended] = 1 - mover[ended]
        alive = alive[~ends]
        pile[alive] -= take[~ends]
        mover[alive] ^= 1

    wins = int((winner == 0).sum())
    p_hat = wins / R
    return SimResult(
        wins_first_player=wins,
        replications=R,
        p_hat=p_hat,
        std_err=math.sqrt(p_hat * (1.0 - p_hat) / R),
    )


def one_shot_deviation_gap(vt: ValueTable) -> float:
    """Largest gain any single-state deviation achieves against the
    engine's policy; non-positive (up to round-off) iff the policy is
    subgame perfect."""
    gap = -math.inf
    for k in range(1, vt.n + 1):
        tail = [vt.p(k - i) for i in range(1, vt.m + 1)]
        own = expected_win_prob(vt.policy(k), tail)
        for cand in vt.candidates:
            gap = max(gap, expected_win_prob(cand, tail) - own)
    return gap


def brute_force_values(spec: GameSpec, tol: float = 1e-12) -> dict[int, float]:
    """Equilibrium values by exhaustive profile enumeration.

    Enumerates every stationary pure profile (pile size -> candidate
    index), keeps those that are one-shot-deviation optimal at every pile
    size, and returns for each k the maximum value among surviving
    profiles.  Deliberately avoids the engine's maximization step.
    """
    cands = candidate_set(spec.K)
    if len(cands) > 4 or spec.n > 12:
        raise InstanceTooLargeError(
            f"brute force limited to |K| <= 4 and n <= 12, got |K|={len(cands)}, n={spec.n}"
        )
    m, n = spec.m, spec.n
    result: dict[int, float] = {}
    any_profile = False
    for profile in itertools.product(range(len(cands)), repeat=n):
        v = [1.0] * m + [0.0] * n
        optimal = True
        for k in range(1, n + 1):
            a = k + m - 1
            tail = [v[a - i] for i in range(1, m + 1)]  # v_{k-1}..v_{k-m}
            vals = [expected_win_prob(c, tail) for c in cands]
            chosen = vals[profile[k - 1]]
            if chosen < max(vals) - tol:
                optimal = False
                break
            v[a] = chosen
        if not optimal:
            continue
        any_profile = True
        for k in range(1, n + 1):
            val = v[k + m - 1]
            if k not in result or val > result[k]:
                result[k] = val
    assert any_profile, "no one-shot-optimal profile found; enumeration is broken"
    return result
