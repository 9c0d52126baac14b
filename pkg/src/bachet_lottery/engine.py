"""Backward-induction equilibrium engine.

The mover at pile size k wins with probability 1 - sum_i pi_i * p_{k-i}
for a chosen lottery pi, with the boundary convention p_s = 1 for s <= 0
(taking the last object loses).  The equilibrium value p_k maximizes this
over the candidate lotteries; the recursion runs k = 1..n.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyCandidateSetError
from .lotteries import GameSpec, Lottery, candidate_set

TIE_TOL = 1e-12

TIE_LOWEST = "lowest_index"
TIE_HIGHEST = "highest_index"
TIE_RANDOM = "seeded_random"
TIE_RULES = (TIE_LOWEST, TIE_HIGHEST, TIE_RANDOM)


def expected_win_prob(pi: Lottery, tail: Sequence[float]) -> float:
    """Mover's win probability for lottery pi.

    ``tail`` holds the m previous values p_{k-1}, ..., p_{k-m} in that
    order.
    """
    return 1.0 - sum(w * t for w, t in zip(pi.probs, tail))


def best_response(
    candidates: Sequence[Lottery],
    tail: Sequence[float],
    tie_rule: str = TIE_LOWEST,
    rng: random.Random | None = None,
) -> tuple[float, int, tuple[int, ...]]:
    """Maximize the one-step win probability over the candidate lotteries.

    Returns (value, argmax index, tuple of all indices within TIE_TOL of
    the maximum).  The argmax among ties follows ``tie_rule``.
    """
    if not candidates:
        raise EmptyCandidateSetError("no candidate lotteries to maximize over")
    vals = [expected_win_prob(c, tail) for c in candidates]
    value = max(vals)
    ties = tuple(i for i, v in enumerate(vals) if v >= value - TIE_TOL)
    idx = _pick(ties, tie_rule, rng)
    return value, idx, ties


def _pick(ties: tuple[int, ...], tie_rule: str, rng: random.Random | None) -> int:
    if tie_rule == TIE_LOWEST:
        return ties[0]
    if tie_rule == TIE_HIGHEST:
        return ties[-1]
    if tie_rule == TIE_RANDOM:
        if rng is None:
            raise ValueError("seeded_random tie rule needs an rng")
        return ties[rng.randrange(len(ties))]
    raise ValueError(f"unknown tie rule {tie_rule!r}")


@dataclass(frozen=True)
class ValueTable:
    """Solved equilibrium values and move choices for one game spec.

    ``p_ext`` holds p_k for k = -(m-1)..n (index k + m - 1); the first m
    entries are the boundary ones.  ``argmax_index[k-1]`` is the candidate
    chosen at pile size k, ``tie_sets[k-1]`` all candidates within TIE_TOL
    of the maximum there.
    """

    m: int
    n: int
    candidates: tuple[Lottery, ...]
    p_ext: np.ndarray
    argmax_index: np.ndarray
    tie_sets: tuple[tuple[int, ...], ...]

    def p(self, k: int) -> float:
        """Equilibrium win probability at pile size k (1 for k <= 0)."""
        if k <= 0:
            return 1.0
        return float(self.p_ext[k + self.m - 1])

    def policy(self, k: int) -> Lottery:
        """Lottery the engine plays at pile size k."""
        return self.candidates[int(self.argmax_index[k - 1])]

    def values(self) -> dict[int, float]:
        """All stored values as a map k -> p_k, k = -(m-1)..n."""
        return {k: float(self.p_ext[k + self.m - 1]) for k in range(1 - self.m, self.n + 1)}


def _compile_payoff_kernel(candidates: Sequence[Lottery]):
    """Build f(t_0, ..., t_{m-1}) -> tuple of per-candidate payoffs.

    t_j = p_{k-m+j}, i.e. the tail in increasing k order.  n can reach
    1e5..1e6, so the lottery coefficients are baked into generated
    bytecode to keep the inner loop allocation-free.
    """
    m = candidates[0].m
    args = ", ".join(f"t{j}" for j in range(m))
    exprs = []
    for lot in candidates:
        # payoff 1 - sum_i pi_i * p_{k-i}; p_{k-i} is argument t_{m-i}
        terms = " + ".join(
            f"{lot.probs[i - 1]!r}*t{m - i}" for i in range(1, m + 1) if lot.probs[i - 1] != 0.0
        )
        exprs.append(f"1.0 - ({terms})" if terms else "1.0")
    src = f"def _kernel({args}):\n    return ({', '.join(exprs)},)"
    ns: dict = {}
    exec(src, ns)
    return ns["_kernel"]


def solve(spec: GameSpec, tie_rule: str = TIE_LOWEST, seed: int = 0) -> ValueTable:
    """Solve the game by backward induction over pile sizes 1..n.

    The stored value at each k is the exact maximum over candidates, so
    the values map does not depend on the tie rule; only argmax_index may.
    """
    candidates = tuple(candidate_set(spec.K))
    if not candidates:
        raise EmptyCandidateSetError("candidate set reduced to nothing")
    kernel = _compile_payoff_kernel(candidates)
    m, n = spec.m, spec.n
    rng = random.Random(seed) if tie_rule == TIE_RANDOM else None
    if tie_rule not in TIE_RULES:
        raise ValueError(f"unknown tie rule {tie_rule!r}")

    p = [1.0] * m + [0.0] * n
    argmax = np.zeros(n, dtype=np.int64)
    tie_sets: list[tuple[int, ...]] = [()] * n
    for k in range(1, n + 1):
        a = k + m - 1
        vals = kernel(*p[a - m : a])
        best = max(vals)
        thr = best - TIE_TOL
        ties = tuple(i for i, v in enumerate(vals) if v >= thr)
        argmax[k - 1] = _pick(ties, tie_rule, rng)
        tie_sets[k - 1] = ties
        p[a] = best
    return ValueTable(
        m=m,
        n=n,
        candidates=candidates,
        p_ext=np.asarray(p),
        argmax_index=argmax,
        tie_sets=tuple(tie_sets),
    )
