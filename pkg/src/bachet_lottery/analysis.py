"""Deviation series of the value table and numerical checks of the
contraction argument behind p_n -> 1/2.

Every check scans a solved table and records violations of one proved
inequality.  On a table whose lottery set satisfies eta < 1 and nu > 0,
all checks must come back clean; a violation beyond the slack tolerance
indicates an implementation defect, not a counterexample.

Window convention: W_k = {k, k-1, ..., k-m+1}, and indices s <= 0 carry
the boundary values p_s = 1, Delta_s = 1/2.  With this convention
DeltaBar_1 = 1/2 exactly, which the geometric envelope uses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .engine import ValueTable
from .errors import InvalidEtaNuError, TauOutOfRangeError

SLACK_TOL = 1e-9

DEFAULT_KAPPA_GRID = tuple(round(0.1 * i, 10) for i in range(1, 10))


@dataclass(frozen=True)
class DeviationSeries:
    """Deviation of p_k from 1/2 and derived window maxima, k = 1..n.

    Arrays are indexed by k - 1.  Accessors extend below k = 1 with the
    boundary values.
    """

    m: int
    n: int
    d: np.ndarray            # D_k = p_k - 1/2
    delta: np.ndarray        # |D_k|
    delta_bar: np.ndarray    # max of delta over W_k
    delta_plus: np.ndarray   # max(0, D_k)
    delta_minus: np.ndarray  # max(0, -D_k)
    delta_bar_plus: np.ndarray
    delta_bar_minus: np.ndarray

    def delta_at(self, k: int) -> float:
        return 0.5 if k <= 0 else float(self.delta[k - 1])

    def dbar(self, k: int) -> float:
        return 0.5 if k <= 0 else float(self.delta_bar[k - 1])

    def dbar_minus(self, k: int) -> float:
        return 0.0 if k <= 0 else float(self.delta_bar_minus[k - 1])


def _window_max(ext: np.ndarray, m: int) -> np.ndarray:
    # window ending at extended index j+m-1 corresponds to k = j
    return np.lib.stride_tricks.sliding_window_view(ext, m).max(axis=1)


def deviation_series(vt: ValueTable) -> DeviationSeries:
    """Derive all deviation series from a solved table."""
    m, n = vt.m, vt.n
    d_ext = vt.p_ext - 0.5
    delta_ext = np.abs(d_ext)
    plus_ext = np.maximum(d_ext, 0.0)
    minus_ext = np.maximum(-d_ext, 0.0)
    # window maxima over k = 0..n; drop k = 0
    return DeviationSeries(
        m=m,
        n=n,
        d=d_ext[m:].copy(),
        delta=delta_ext[m:].copy(),
        delta_plus=plus_ext[m:].copy(),
        delta_minus=minus_ext[m:].copy(),
        delta_bar=_window_max(delta_ext, m)[1:].copy(),
        delta_bar_plus=_window_max(plus_ext, m)[1:].copy(),
        delta_bar_minus=_window_max(minus_ext, m)[1:].copy(),
    )


def _tau_upper(eta: float, nu: float) -> float:
    return (nu / (1.0 - nu)) * (2.0 - 2.0 * eta) / (2.0 - eta)


def _delta_of_tau(eta: float, nu: float, tau: float) -> float:
    branch_a = (eta / (2.0 - eta)) * (nu / (nu - tau + nu * tau))
    branch_b = 1.0 / (1.0 + tau)
    return max(branch_a, branch_b)


@dataclass(frozen=True)
class DropConstants:
    """Contraction constants: per-3m-block factor delta for given eta, nu, tau."""

    eta: float
    nu: float
    tau: float
    delta: float


def _golden_section_min(f, lo: float, hi: float, tol: float) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def drop_constants(eta: float, nu: float, tau: float | None = None) -> DropConstants:
    """Build the contraction constants.

    tau must lie in the open interval (0, (nu/(1-nu)) * (2-2*eta)/(2-eta));
    if omitted, it is chosen to minimize delta by golden-section search.
    delta = max{(eta/(2-eta)) * nu/(nu - tau + nu*tau), 1/(1+tau)} and is
    strictly below 1 for any admissible tau.
    """
    if not (0.0 < eta < 1.0) or not (0.0 < nu < 1.0):
        raise InvalidEtaNuError(f"need 0 < eta < 1 and 0 < nu < 1, got eta={eta}, nu={nu}")
    hi = _tau_upper(eta, nu)
    if tau is None:
        tau = _golden_section_min(
            lambda t: _delta_of_tau(eta, nu, t), hi * 1e-9, hi * (1.0 - 1e-9), 1e-10
        )
    elif not (0.0 < tau < hi):
        raise TauOutOfRangeError(f"tau={tau} outside the open interval (0, {hi})")
    delta = _delta_of_tau(eta, nu, tau)
    if not (0.0 < delta < 1.0):
        raise InvalidEtaNuError(f"derived delta={delta} not in (0, 1)")
    return DropConstants(eta=eta, nu=nu, tau=tau, delta=delta)


@dataclass
class BoundReport:
    """Outcome of one inequality scan: where it applied, where it failed."""

    lemma_id: str
    checked_k: list[int] = field(default_factory=list)
    violations: list[tuple[int, float, float]] = field(default_factory=list)
    min_slack: float = math.inf
    extra: dict = field(default_factory=dict)

    def record(self, k: int, lhs: float, rhs: float) -> None:
        """Assert lhs <= rhs + SLACK_TOL at index k."""
        self.checked_k.append(k)
        slack = rhs - lhs
        if slack < self.min_slack:
            self.min_slack = slack
        if slack < -SLACK_TOL:
            self.violations.append((k, lhs, rhs))

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "checked": len(self.checked_k),
            "violations": len(self.violations),
            "min_slack": None if math.isinf(self.min_slack) else self.min_slack,
            **self.extra,
        }


def check_monotonicity(ds: DeviationSeries) -> BoundReport:
    """Delta_k <= DeltaBar_{k-1} and DeltaBar_k <= DeltaBar_{k-1} for k = 2..n."""
    report = BoundReport("monotonicity")
    strict = True
    for k in range(2, ds.n + 1):
        prev = ds.dbar(k - 1)
        report.record(k, ds.delta_at(k), prev)
        report.record(k, ds.dbar(k), prev)
        if ds.dbar(k) >= prev:
            strict = False
    # empirical observation only; per-step strict decrease is not asserted
    report.extra["delta_bar_strictly_decreasing_per_step"] = strict
    return report


def check_no_long_winning(vt: ValueTable) -> BoundReport:
    """After m consecutive winning positions, the next one loses.

    Whenever p_j > 1/2 on the whole window W_k (k > m): p_{k+1} < 1/2 and
    p_{k-m} <= 1/2.
    """
    report = BoundReport("no_long_winning")
    for k in range(vt.m + 1, vt.n + 1):
        if all(vt.p(j) > 0.5 for j in range(k - vt.m + 1, k + 1)):
            if k + 1 <= vt.n:
                report.record(k, vt.p(k + 1), 0.5)
            report.record(k, vt.p(k - vt.m), 0.5)
    return report


def check_km_bound(
    vt: ValueTable, ds: DeviationSeries, kappa_grid=DEFAULT_KAPPA_GRID
) -> list[BoundReport]:
    """When the whole window sits above 1/2 + (1-kappa)*Delta_{k+1}, the
    deviation m steps back dominates: Delta_{k+1} <= eta/((2-eta)(1-kappa))
    * Delta_{k-m}.  One report per kappa.
    """
    eta = max(max(c.probs) for c in vt.candidates)
    reports = []
    for kappa in kappa_grid:
        if not (0.0 < kappa < 1.0):
            raise ValueError(f"kappa must be in (0, 1), got {kappa}")
        report = BoundReport(f"km_bound[kappa={kappa:g}]")
        factor = eta / ((2.0 - eta) * (1.0 - kappa))
        for k in range(vt.m + 1, vt.n):
            bar = 0.5 + (1.0 - kappa) * ds.delta_at(k + 1)
            if all(vt.p(j) >= bar for j in range(k - vt.m + 1, k + 1)):
                report.record(k, ds.delta_at(k + 1), factor * ds.delta_at(k - vt.m))
        reports.append(report)
    return reports


def check_corridor(vt: ValueTable, ds: DeviationSeries, nu: float) -> BoundReport:
    """Losing position k+1 forces the window to reach above the corridor:

        max_{i in W_k} (p_i - (1/2 + Delta_{k+1}))
            >= (nu/(1-nu)) * max_{i in W_k} ((1/2 + Delta_{k+1}) - p_i).
    """
    if not (0.0 < nu < 1.0):
        raise InvalidEtaNuError(f"corridor check needs 0 < nu < 1, got {nu}")
    ratio = nu / (1.0 - nu)
    report = BoundReport("corridor")
    for k in range(1, vt.n):
        if vt.p(k + 1) >= 0.5:
            continue
        ceil = 0.5 + ds.delta_at(k + 1)
        window = [vt.p(j) for j in range(k - vt.m + 1, k + 1)]
        lhs = ratio * max(ceil - p for p in window)
        rhs = max(p - ceil for p in window)
        report.record(k, lhs, rhs)
    return report


def check_drop_down(
    vt: ValueTable, ds: DeviationSeries, dc: DropConstants
) -> list[BoundReport]:
    """The three contraction inequalities with factor delta:

    - losing positions (p_{k+1} < 1/2, k > m): Delta_{k+1} <= delta * DeltaBar_{k-m}
    - all k > 2m: Delta_{k+1} <= delta * DeltaBar_{k-2m}
    - all k > 3m: DeltaBar_k <= delta * DeltaBar_{k-3m}
    """
    m, n, delta = vt.m, vt.n, dc.delta
    losing = BoundReport("drop_down_losing")
    for k in range(m + 1, n):
        if vt.p(k + 1) < 0.5:
            losing.record(k, ds.delta_at(k + 1), delta * ds.dbar(k - m))
    every = BoundReport("drop_down_2m")
    for k in range(2 * m + 1, n):
        every.record(k, ds.delta_at(k + 1), delta * ds.dbar(k - 2 * m))
    block = BoundReport("drop_down_3m")
    for k in range(3 * m + 1, n + 1):
        block.record(k, ds.dbar(k), delta * ds.dbar(k - 3 * m))
    return [losing, every, block]


def check_plus_minus(ds: DeviationSeries) -> BoundReport:
    """Upward deviation is capped by the recent downward ones:
    DeltaPlus_{k+1} <= DeltaBarMinus_k for k = 1..n-1."""
    report = BoundReport("plus_minus")
    for k in range(1, ds.n):
        report.record(k, float(ds.delta_plus[k]), ds.dbar_minus(k))
    return report


def check_envelope(ds: DeviationSeries, dc: DropConstants, m: int) -> BoundReport:
    """Geometric envelope: DeltaBar_k <= 0.5 * delta^floor((k-1)/(3m)).

    At k = 1 + 3mN this is the N-fold contraction of DeltaBar_1 = 1/2;
    monotonicity of DeltaBar extends it to every k in between.
    """
    report = BoundReport("envelope")
    delta = dc.delta
    for k in range(1, ds.n + 1):
        bound = 0.5 * delta ** ((k - 1) // (3 * m))
        report.record(k, ds.dbar(k), bound)
    return report


def envelope_bound(k: int, delta: float, m: int) -> float:
    """The geometric envelope value at pile size k."""
    return 0.5 * delta ** ((k - 1) // (3 * m))
