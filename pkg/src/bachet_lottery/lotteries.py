"""Lotteries, admissible lottery sets, and the structural constants eta / nu.

A lottery is a probability vector over take-counts 1..m.  The admissible
set K is given either as an explicit finite list, as the vertex list of a
polytope, or as a truncated simplex {pi : pi_i >= eps_i, sum pi = 1}.
Because the one-step payoff is affine in the lottery, maximization over a
convex K reduces exactly to its vertices, so every set is handled through
a finite candidate list.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import (
    DegenerateSetError,
    NegativeEntryError,
    SumNotOneError,
    WrongLengthError,
)

SUM_TOL = 1e-12


@dataclass(frozen=True)
class Lottery:
    """Probability vector over taking 1..m objects; validated, immutable."""

    probs: tuple[float, ...]

    @property
    def m(self) -> int:
        return len(self.probs)

    def __len__(self) -> int:
        return len(self.probs)


def validate_lottery(probs: Sequence[float]) -> Lottery:
    """Validate a raw vector and wrap it as a Lottery.

    Degenerate (pure) lotteries are accepted here; they are only flagged
    later via the eta < 1 condition.
    """
    vec = tuple(float(x) for x in probs)
    if len(vec) < 2:
        raise WrongLengthError(f"lottery needs at least 2 coordinates, got {len(vec)}")
    for i, x in enumerate(vec):
        if x < 0.0 or x > 1.0:
            raise NegativeEntryError(f"coordinate {i} = {x} outside [0, 1]")
    total = sum(vec)
    if abs(total - 1.0) > SUM_TOL:
        raise SumNotOneError(f"coordinates sum to {total!r}, expected 1 within {SUM_TOL}")
    return Lottery(_snap_sum_to_one(list(vec)))


def _snap_sum_to_one(vec: list[float]) -> tuple[float, ...]:
    # Canonicalize within SUM_TOL: nudge the largest coordinate until the
    # left-to-right running sum is exactly 1.0.  The payoff recursion uses
    # the same summation order, so p_1 = 1 - sum(pi) comes out identically 0.
    for _ in range(5):
        total = 0.0
        for x in vec:
            total += x
        residual = total - 1.0
        if residual == 0.0:
            break
        j = max(range(len(vec)), key=vec.__getitem__)
        vec[j] -= residual
    return tuple(vec)


class SetKind(str, Enum):
    FINITE = "finite"
    POLYTOPE_VERTICES = "polytope_vertices"
    TRUNCATED_SIMPLEX = "truncated_simplex"


@dataclass(frozen=True)
class LotterySet:
    """Admissible set of lotteries, reduced to finite candidates on demand."""

    kind: SetKind
    lotteries: tuple[Lottery, ...] = ()
    epsilon: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind is SetKind.TRUNCATED_SIMPLEX:
            if len(self.epsilon) < 2:
                raise DegenerateSetError("truncated simplex needs m >= 2 lower bounds")
            if any(e <= 0.0 for e in self.epsilon):
                raise DegenerateSetError("every epsilon_i must be positive")
            if sum(self.epsilon) >= 1.0:
                raise DegenerateSetError("sum of epsilon_i must be below 1")
        else:
            if not self.lotteries:
                raise DegenerateSetError("finite lottery set must be non-empty")
            m = self.lotteries[0].m
            if any(lot.m != m for lot in self.lotteries):
                raise WrongLengthError("all lotteries in a set must share the same m")

    @property
    def m(self) -> int:
        if self.kind is SetKind.TRUNCATED_SIMPLEX:
            return len(self.epsilon)
        return self.lotteries[0].m


def finite_set(vectors: Sequence[Sequence[float]]) -> LotterySet:
    return LotterySet(SetKind.FINITE, tuple(validate_lottery(v) for v in vectors))


def polytope_vertices(vectors: Sequence[Sequence[float]]) -> LotterySet:
    return LotterySet(SetKind.POLYTOPE_VERTICES, tuple(validate_lottery(v) for v in vectors))


def truncated_simplex(epsilon: Sequence[float]) -> LotterySet:
    return LotterySet(SetKind.TRUNCATED_SIMPLEX, epsilon=tuple(float(e) for e in epsilon))


def candidate_set(K: LotterySet) -> list[Lottery]:
    """Finite candidate list sufficient for affine maximization over K.

    Finite and vertex-described sets pass through verbatim.  For the
    truncated simplex the vertices are the m points that sit at the lower
    bound in all coordinates but one.
    """
    if K.kind is not SetKind.TRUNCATED_SIMPLEX:
        return list(K.lotteries)
    eps = K.epsilon
    m = len(eps)
    total = sum(eps)
    verts = []
    for j in range(m):
        coords = list(eps)
        coords[j] = 1.0 - (total - eps[j])
        verts.append(validate_lottery(coords))
    return verts


@dataclass(frozen=True)
class GameSpec:
    """One game instance: pile size n, max take m, admissible set K."""

    n: int
    m: int
    K: LotterySet

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.m < 2:
            raise ValueError(f"m must be >= 2, got {self.m}")
        if self.K.m != self.m:
            raise WrongLengthError(f"lottery set has m={self.K.m}, game spec has m={self.m}")


@dataclass(frozen=True)
class ConditionReport:
    """Structural constants of K and whether the convergence hypotheses hold."""

    eta: float
    nu: float
    eta_ok: bool = field(init=False)
    nu_ok: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "eta_ok", self.eta < 1.0)
        object.__setattr__(self, "nu_ok", self.nu > 0.0)


def compute_conditions(K: LotterySet) -> ConditionReport:
    """Compute eta (largest coordinate over K) and nu (min over coordinates
    of the per-coordinate maximum over K).

    Both are coordinate-wise linear functionals, so evaluating them on the
    candidate vertices is exact for convex K.
    """
    cands = candidate_set(K)
    m = cands[0].m
    eta = max(max(lot.probs) for lot in cands)
    nu = min(max(lot.probs[i] for lot in cands) for i in range(m))
    return ConditionReport(eta=eta, nu=nu)
