"""Batch front-end: JSON experiment configs in, CSV series and JSON
reports out.

Commands: solve, verify, simulate, sweep, explore-nu-zero.  Exit codes:
0 success / all checks pass, 1 check violations, 2 config error.  Output
files are written atomically (temp + rename) and deterministically: a
rerun with the same config produces byte-identical artifacts.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import analysis
from .engine import TIE_LOWEST, ValueTable, solve
from .errors import ConfigError, InvalidEtaNuError, LotteryError, DegenerateSetError
from .lotteries import (
    ConditionReport,
    GameSpec,
    LotterySet,
    compute_conditions,
    finite_set,
    polytope_vertices,
    truncated_simplex,
)
from .oracles import SimConfig, estimate_win_prob

COMMANDS = ("solve", "verify", "simulate", "sweep", "explore-nu-zero")

VALUES_HEADER = "k,p,D,Delta,DeltaBar,DeltaPlus,DeltaMinus,envelope,argmax_index"
SIM_HEADER = "n,replications,seed,p_hat,std_err,p_engine,z_score"
SWEEP_HEADER = "n,m,eta,nu,delta,p_n,Delta_n"


def _fmt(x: float) -> str:
    """17 significant digits: round-trips any double."""
    return f"{x:.17g}"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _require(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise ConfigError(f"{where}: {msg}")


def _parse_lottery_set(node: dict, where: str) -> LotterySet:
    _require(isinstance(node, dict), where, "must be an object")
    kind = node.get("type")
    _require(
        kind in ("finite", "polytope_vertices", "truncated_simplex"),
        f"{where}.type",
        f"unknown lottery-set type {kind!r}",
    )
    try:
        if kind == "truncated_simplex":
            eps = node.get("epsilon")
            _require(isinstance(eps, list), f"{where}.epsilon", "must be a list of reals")
            return truncated_simplex(eps)
        lots = node.get("lotteries")
        _require(
            isinstance(lots, list) and lots, f"{where}.lotteries", "must be a non-empty list"
        )
        return finite_set(lots) if kind == "finite" else polytope_vertices(lots)
    except (LotteryError, DegenerateSetError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _parse_game(node, where: str = "game") -> GameSpec:
    _require(isinstance(node, dict), where, "must be an object")
    n, m = node.get("n"), node.get("m")
    _require(isinstance(n, int) and n >= 1, f"{where}.n", "must be an integer >= 1")
    _require(isinstance(m, int) and m >= 2, f"{where}.m", "must be an integer >= 2")
    K = _parse_lottery_set(node.get("K"), f"{where}.K")
    try:
        return GameSpec(n=n, m=m, K=K)
    except (ValueError,) as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def load_config(path: str | Path, command: str) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    _require(isinstance(raw, dict), "config", "top level must be an object")
    declared = raw.get("command")
    if declared is not None and declared != command:
        raise ConfigError(f"command: config declares {declared!r}, invoked as {command!r}")
    return raw


def _values_csv(vt: ValueTable, ds: analysis.DeviationSeries, delta: float | None) -> str:
    lines = [VALUES_HEADER]
    for k in range(1, vt.n + 1):
        env = "" if delta is None else _fmt(analysis.envelope_bound(k, delta, vt.m))
        lines.append(
            ",".join(
                (
                    str(k),
                    _fmt(vt.p(k)),
                    _fmt(float(ds.d[k - 1])),
                    _fmt(float(ds.delta[k - 1])),
                    _fmt(float(ds.delta_bar[k - 1])),
                    _fmt(float(ds.delta_plus[k - 1])),
                    _fmt(float(ds.delta_minus[k - 1])),
                    env,
                    str(int(vt.argmax_index[k - 1])),
                )
            )
        )
    return "\n".join(lines) + "\n"


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _solve_bundle(spec: GameSpec, tau: float | None):
    vt = solve(spec, tie_rule=TIE_LOWEST)
    cond = compute_conditions(spec.K)
    ds = analysis.deviation_series(vt)
    dc = None
    if cond.eta_ok and cond.nu_ok:
        dc = analysis.drop_constants(cond.eta, cond.nu, tau)
    return vt, cond, ds, dc


def _reject_nu_zero(cond: ConditionReport, command: str) -> None:
    if not cond.nu_ok:
        raise ConfigError(
            f"game.K: nu = 0 is only allowed under explore-nu-zero, not {command!r}"
        )


def _cmd_solve(cfg: dict, out: Path, explore: bool) -> int:
    spec = _parse_game(cfg.get("game"))
    cond = compute_conditions(spec.K)
    if explore:
        if not cond.nu_ok:
            print("warning: nu = 0, convergence hypotheses unmet; bound checks skipped",
                  file=sys.stderr)
    else:
        _reject_nu_zero(cond, "solve")
    vt, cond, ds, dc = _solve_bundle(spec, cfg.get("tau"))
    delta = None if (explore or dc is None) else dc.delta
    _atomic_write(out / "values.csv", _values_csv(vt, ds, delta))
    summary = {
        "eta": cond.eta,
        "nu": cond.nu,
        "p_n": vt.p(vt.n),
        "Delta_n": float(ds.delta[vt.n - 1]),
    }
    if explore:
        summary["warning"] = "nu-zero exploration: convergence hypotheses not verified"
    _atomic_write(out / "summary.json", _json_text(summary))
    return 0


def run_checks(vt: ValueTable, ds, cond: ConditionReport, dc, kappa_grid):
    """All inequality checks on one solved table, in report order."""
    reports = [analysis.check_monotonicity(ds), analysis.check_no_long_winning(vt)]
    reports += analysis.check_km_bound(vt, ds, kappa_grid)
    reports.append(analysis.check_corridor(vt, ds, cond.nu))
    reports += analysis.check_drop_down(vt, ds, dc)
    reports.append(analysis.check_plus_minus(ds))
    reports.append(analysis.check_envelope(ds, dc, vt.m))
    return reports


def _cmd_verify(cfg: dict, out: Path) -> int:
    spec = _parse_game(cfg.get("game"))
    cond = compute_conditions(spec.K)
    _reject_nu_zero(cond, "verify")
    if not cond.eta_ok:
        raise ConfigError("game.K: eta = 1 (pure move present); verify needs eta < 1")
    kappa_grid = cfg.get("kappa_grid") or list(analysis.DEFAULT_KAPPA_GRID)
    vt, cond, ds, dc = _solve_bundle(spec, cfg.get("tau"))
    reports = run_checks(vt, ds, cond, dc, kappa_grid)
    total_violations = sum(len(r.violations) for r in reports)
    report = {
        "eta": cond.eta,
        "nu": cond.nu,
        "tau": dc.tau,
        "delta": dc.delta,
        "n": spec.n,
        "m": spec.m,
        "all_passed": total_violations == 0,
        "checks": [r.summary() for r in reports],
    }
    _atomic_write(out / "report.json", _json_text(report))
    return 0 if total_violations == 0 else 1


def _cmd_simulate(cfg: dict, out: Path, seed_override: int | None) -> int:
    spec = _parse_game(cfg.get("game"))
    cond = compute_conditions(spec.K)
    _reject_nu_zero(cond, "simulate")
    sim = cfg.get("sim")
    _require(isinstance(sim, dict), "sim", "required for simulate")
    reps = sim.get("replications")
    _require(isinstance(reps, int) and reps >= 1, "sim.replications", "must be an integer >= 1")
    seed = seed_override if seed_override is not None else sim.get("seed")
    _require(isinstance(seed, int) and seed >= 0, "sim.seed", "must be a non-negative integer")
    n_values = sim.get("n_values", [spec.n])
    _require(
        isinstance(n_values, list)
        and all(isinstance(v, int) and 1 <= v <= spec.n for v in n_values),
        "sim.n_values",
        f"must be integers in 1..{spec.n}",
    )
    vt = solve(spec, tie_rule=TIE_LOWEST)
    lines = [SIM_HEADER]
    for n in n_values:
        res = estimate_win_prob(SimConfig(table=vt, n=n, replications=reps, seed=seed))
        p_eng = vt.p(n)
        z = 0.0 if res.std_err == 0.0 else (res.p_hat - p_eng) / res.std_err
        lines.append(
            ",".join(
                (str(n), str(reps), str(seed), _fmt(res.p_hat), _fmt(res.std_err),
                 _fmt(p_eng), _fmt(z))
            )
        )
    _atomic_write(out / "simulation.csv", "\n".join(lines) + "\n")
    return 0


def _cmd_sweep(cfg: dict, out: Path) -> int:
    game = cfg.get("game")
    _require(isinstance(game, dict), "game", "must be an object")
    sweep = cfg.get("sweep")
    _require(isinstance(sweep, dict), "sweep", "required for sweep")
    points: list[GameSpec] = []
    if "n_values" in sweep:
        for i, n in enumerate(sweep["n_values"]):
            _require(isinstance(n, int) and n >= 1, f"sweep.n_values[{i}]", "integer >= 1")
            points.append(_parse_game({**game, "n": n}))
    elif "epsilon_values" in sweep:
        m = game.get("m")
        _require(isinstance(m, int) and m >= 2, "game.m", "must be an integer >= 2")
        for i, eps in enumerate(sweep["epsilon_values"]):
            _require(
                isinstance(eps, (int, float)) and 0.0 < eps < 1.0 / m,
                f"sweep.epsilon_values[{i}]",
                f"must be a real in (0, 1/{m})",
            )
            node = {**game, "K": {"type": "truncated_simplex", "epsilon": [eps] * m}}
            points.append(_parse_game(node))
    else:
        raise ConfigError("sweep: needs n_values or epsilon_values")

    lines = [SWEEP_HEADER]
    for spec in points:
        cond = compute_conditions(spec.K)
        _reject_nu_zero(cond, "sweep")
        vt, cond, ds, dc = _solve_bundle(spec, cfg.get("tau"))
        lines.append(
            ",".join(
                (
                    str(spec.n),
                    str(spec.m),
                    _fmt(cond.eta),
                    _fmt(cond.nu),
                    _fmt(dc.delta) if dc is not None else "",
                    _fmt(vt.p(vt.n)),
                    _fmt(float(ds.delta[vt.n - 1])),
                )
            )
        )
    _atomic_write(out / "sweep.csv", "\n".join(lines) + "\n")
    return 0


def run(command: str, config_path: str | Path, output: str | None = None,
        seed: int | None = None) -> int:
    """Execute one experiment; returns the process exit code."""
    try:
        if command not in COMMANDS:
            raise ConfigError(f"command: unknown command {command!r}")
        cfg = load_config(config_path, command)
        out = Path(output or cfg.get("output") or ".")
        if command == "solve":
            return _cmd_solve(cfg, out, explore=False)
        if command == "explore-nu-zero":
            return _cmd_solve(cfg, out, explore=True)
        if command == "verify":
            return _cmd_verify(cfg, out)
        if command == "simulate":
            return _cmd_simulate(cfg, out, seed)
        return _cmd_sweep(cfg, out)
    except (ConfigError, LotteryError, DegenerateSetError, InvalidEtaNuError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(
        prog="bachet-game",
        description="Solve and verify the lottery-move take-away game from a JSON config.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON experiment config")
        p.add_argument("--output", default=None, help="output directory (default: from config)")
        p.add_argument("--seed", type=int, default=None, help="override simulation seed")
    args = parser.parse_args(argv)
    sys.exit(run(args.command, args.config, args.output, args.seed))


if __name__ == "__main__":
    main()
