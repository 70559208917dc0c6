"""Command-line front end.

    anaqsim error-rate   --config cfg.toml --out out/
    anaqsim error-terms  --config cfg.toml
    anaqsim multistep    --config cfg.toml --n-max 10
    anaqsim table        --config cfg.toml
    anaqsim jsums        --config cfg.toml
    anaqsim schedule-dump --config cfg.toml

Exit codes: 0 success, 2 invalid configuration or arguments, 3 system too
large for the dense backend, 1 numerical failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .analysis import (
    CLOSED_FORM_TERMS,
    analytic_error_operator,
    error_norm_bound,
    multi_step_delta,
    sweep_step,
    taylor_error_term,
)
from .analysis.sweeps import epsilon_grid, error_rate_sweep
from .config import ConfigError, ExperimentConfig, load_config
from .errors import AnaqsimError, CapacityError, NumericalFailureError
from .io import write_csv, write_schedule_json
from .lattice import fit_j_scaling, j_sweep
from .linalg import check_capacity, spectral_norm
from .scaling import loglog_slope
from .schedules import C1_PERIOD, STEP_TABLE, MethodId, schedule_for
from .svg import line_plot

log = logging.getLogger("anaqsim")

ERROR_RATE_COLUMNS = ("method", "nx", "ny", "epsilon", "t", "tau", "error_rate", "bound_value", "clamped")
ERROR_TERM_COLUMNS = ("method", "k1", "k2", "nx", "ny", "numeric_norm", "analytic_norm", "bound")
FIT_COLUMNS = ("method", "slope", "intercept", "r2")
FIG6_EPSILON = 1e-5


class Context:
    def __init__(self, cfg: ExperimentConfig, out: Path, svg: bool):
        self.cfg = cfg
        self.out = out
        self.svg = svg and "svg" in cfg.output.formats

    def path(self, name: str) -> Path:
        return self.out / name


def _fit_rows(rows):
    fits = []
    for m in dict.fromkeys(r.method for r in rows):
        pts = [(r.epsilon, r.error_rate) for r in rows if r.method is m and r.error_rate > 0]
        if len(pts) >= 3:
            fits.append((m.value, *loglog_slope(pts)))
    return fits


def cmd_error_rate(ctx: Context) -> int:
    cfg = ctx.cfg
    geom = cfg.geometry.lattice()
    check_capacity(geom.n_sites)
    eps = epsilon_grid(cfg.sweep.epsilon_min, cfg.sweep.epsilon_max, cfg.sweep.points_per_decade)
    rows = error_rate_sweep(cfg.methods, eps, geom, cfg.sweep.workers)
    write_csv(
        ctx.path("error_rates.csv"),
        ERROR_RATE_COLUMNS,
        [(r.method.value, r.nx, r.ny, r.epsilon, r.t, r.tau, r.error_rate, r.bound_value, r.clamped) for r in rows],
    )
    write_csv(ctx.path("error_rate_fits.csv"), FIT_COLUMNS, _fit_rows(rows))
    if ctx.svg:
        for m in cfg.methods:
            sel = [r for r in rows if r.method is m]
            series = {
                f"{m.value} numeric": ([r.epsilon for r in sel], [r.error_rate for r in sel]),
                f"{m.value} bound": ([r.epsilon for r in sel], [r.bound_value for r in sel]),
            }
            line_plot(ctx.path(f"error-rate_{m.value}.svg"), series, "epsilon (us)", "error rate (1/us)",
                      f"{m.value} on {geom.nx}x{geom.ny}", vline=FIG6_EPSILON)  # fmt: skip
    return 0


def cmd_error_terms(ctx: Context) -> int:
    cfg = ctx.cfg
    geoms = [cfg.geometry.lattice(nx, ny) for nx, ny in cfg.geometry.sweep()]
    for g in geoms:
        check_capacity(g.n_sites)
    methods = [m for m in cfg.methods if any(m is k[0] for k in CLOSED_FORM_TERMS)]
    terms = sorted((m, t) for m, t in CLOSED_FORM_TERMS if m in methods)
    rows = []
    for m, term in terms:
        for g in geoms:
            if g.n_sites < 2:
                rows.append((m.value, term.k1, term.k2, g.nx, g.ny, 0.0, 0.0, 0.0))
                continue
            num = spectral_norm(taylor_error_term(m, term, cfg.device, g))
            ana = spectral_norm(analytic_error_operator(m, term, g))
            rows.append((m.value, term.k1, term.k2, g.nx, g.ny, num, ana, error_norm_bound(m, term, g)))
    write_csv(ctx.path("error_terms.csv"), ERROR_TERM_COLUMNS, rows)
    if ctx.svg:
        for m in methods:
            series = {}
            for (_, term) in [x for x in terms if x[0] is m]:
                for nx in dict.fromkeys(g.nx for g in geoms):
                    sel = [r for r in rows if r[0] == m.value and (r[1], r[2]) == (term.k1, term.k2) and r[3] == nx]
                    if any(r[5] > 0 for r in sel):
                        series[f"({term.k1},{term.k2}) nx={nx}"] = ([r[4] for r in sel], [r[5] for r in sel])
            if series:
                line_plot(ctx.path(f"error-terms_{m.value}.svg"), series, "ny", "norm", m.value, logx=False)
    return 0


def cmd_multistep(ctx: Context, n_max: int | None) -> int:
    cfg = ctx.cfg
    n_max = cfg.n_max if n_max is None else n_max
    if n_max < 2:
        raise ConfigError("multistep needs n_max >= 2")
    geom = cfg.geometry.lattice()
    check_capacity(geom.n_sites)
    rows = []
    for m in cfg.methods:
        if m is MethodId.C1:
            log.warning("multistep: skipping C1, whose step is fixed by the Floquet period")
            continue
        t = sweep_step(m, cfg.device, geom).t_star
        rows.extend((m.value, n, multi_step_delta(m, n, cfg.device, geom, t=t)) for n in range(1, n_max + 1))
    write_csv(ctx.path("multistep.csv"), ("method", "n", "delta"), rows)
    if ctx.svg:
        for m in dict.fromkeys(r[0] for r in rows):
            sel = [r for r in rows if r[0] == m]
            line_plot(ctx.path(f"multistep_{m}.svg"), {m: ([r[1] for r in sel], [r[2] for r in sel])},
                      "steps n", "delta_1 - delta_n", m, logx=False, logy=False)  # fmt: skip
    return 0


def cmd_table(ctx: Context) -> int:
    cfg = ctx.cfg
    geom = cfg.geometry.lattice()
    check_capacity(geom.n_sites)
    eps = epsilon_grid(cfg.sweep.epsilon_min, cfg.sweep.epsilon_max, cfg.sweep.points_per_decade)
    rows = error_rate_sweep(cfg.methods, eps, geom, cfg.sweep.workers)
    slopes = {r[0]: r[1] for r in _fit_rows(rows)}
    header = ("method", "rate_exponent", "tau_over_eps", "t_rot", "t_comp", "t_star")
    table = []
    for m in cfg.methods:
        if m is MethodId.C1:
            tau, t_rot, t_comp, t_star = float(C1_PERIOD), "-", "-", "-"
        else:
            rot, comp = STEP_TABLE[m]
            tau = float(sum(rot) + sum(comp))
            t_rot = "(" + ",".join(f"{v}e" for v in rot) + ")"
            t_comp = "(" + ",".join(f"{v}e" for v in comp) + ")"
            t_star = f"{sweep_step(m, cfg.device, geom).t_star:.4e}"
        table.append((m.value, f"{slopes.get(m.value, float('nan')):.3f}", f"{tau:.0f}", t_rot, t_comp, t_star))
    widths = [max(len(str(r[i])) for r in [header, *table]) for i in range(len(header))]
    lines = ["  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip() for r in [header, *table]]
    text = "\n".join(lines) + "\n"
    ctx.out.mkdir(parents=True, exist_ok=True)
    ctx.path("table.txt").write_text(text)
    sys.stdout.write(text)
    return 0


def cmd_jsums(ctx: Context) -> int:
    cfg = ctx.cfg
    g = cfg.geometry
    nxs = g.nx_values or (g.nx,)
    nys = g.ny_values or tuple(range(2, 21))
    rows, fits = [], []
    for nx in nxs:
        sweep = j_sweep(nx, nys, g.spacing_um, g.c6)
        rows.extend(sweep)
        for order in (1, 2, 3):
            pts = [(r[3], r[4]) for r in sweep if r[0] == order]
            if len({p[0] for p in pts}) >= 2 and len(pts) >= 3:
                f = fit_j_scaling(pts)
                fits.append((order, nx, f.slope, f.intercept, f.residual))
    write_csv(ctx.path("jsums.csv"), ("order", "nx", "ny", "N", "value"), rows)
    write_csv(ctx.path("jsum_fits.csv"), ("order", "nx", "slope", "intercept", "residual"), fits)
    if ctx.svg:
        for order in (1, 2, 3):
            series = {}
            for nx in nxs:
                sel = [r for r in rows if r[0] == order and r[1] == nx]
                series[f"J{order} nx={nx}"] = ([r[3] for r in sel], [r[4] for r in sel])
            line_plot(ctx.path(f"jsums_J{order}.svg"), series, "N", f"J{order}", logx=False, logy=False)
    return 0


def cmd_schedule_dump(ctx: Context) -> int:
    cfg = ctx.cfg
    for m in cfg.methods:
        t = 0.0 if m is MethodId.C1 else cfg.schedule_t
        write_schedule_json(ctx.path(f"schedule_{m.value}.json"), schedule_for(m, t, cfg.device))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="anaqsim", description="Pulse-engineered Heisenberg simulation error analysis")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML or JSON experiment file")
    common.add_argument("--out", help="output directory (overrides the config)")
    common.add_argument("--methods", help="comma-separated method list, e.g. S1,S2,C1")
    common.add_argument("--no-svg", action="store_true", help="skip SVG plots")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("error-rate", parents=[common], help="error rate vs epsilon sweep")
    sub.add_parser("error-terms", parents=[common], help="Taylor error-term norms vs geometry")
    ms = sub.add_parser("multistep", parents=[common], help="one big step vs n small steps")
    ms.add_argument("--n-max", type=int, default=None)
    sub.add_parser("table", parents=[common], help="method comparison table")
    sub.add_parser("jsums", parents=[common], help="interaction sums and linear fits")
    sub.add_parser("schedule-dump", parents=[common], help="write pulse schedules as JSON")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = load_config(args.config) if args.config else ExperimentConfig()
        if args.methods:
            cfg = cfg.with_methods(args.methods)
        if args.out:
            cfg = cfg.with_output(args.out)
        ctx = Context(cfg, Path(cfg.output.directory), not args.no_svg)
        if args.command == "error-rate":
            return cmd_error_rate(ctx)
        if args.command == "error-terms":
            return cmd_error_terms(ctx)
        if args.command == "multistep":
            return cmd_multistep(ctx, args.n_max)
        if args.command == "table":
            return cmd_table(ctx)
        if args.command == "jsums":
            return cmd_jsums(ctx)
        return cmd_schedule_dump(ctx)
    except CapacityError as exc:
        print(f"anaqsim: {exc}", file=sys.stderr)
        return 3
    except NumericalFailureError as exc:
        print(f"anaqsim: numerical failure: {exc}", file=sys.stderr)
        return 1
    except AnaqsimError as exc:
        print(f"anaqsim: invalid configuration: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
