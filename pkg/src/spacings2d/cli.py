"""Command-line entry point.

Exit status: 0 on success, 1 on a domain or numerical error (structured
error name on stderr), 2 on a usage error.  Reports go to stdout as JSON;
``spacings`` dumps the area grid as CSV rows ``i,j,a_ij`` (1-based).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import gfun, sim
from .errors import SpacingsError
from .moments import MIN_NODES, MIN_ORACLE_SAMPLES, compute_moments, mc_oracle
from .pattern import Window, load_pattern, rescale_to_unit
from .spacings import compute_grid
from .stat import SIDES, asymptotic_test


class UsageError(Exception):
    pass


def _window(text):
    try:
        return Window.parse(text)
    except (ValueError, SpacingsError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _n_grid(text):
    try:
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spacings2d", description="CSR tests from two-dimensional spacings")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, seed=True):
        p.add_argument("--g", required=True, choices=gfun.available(), help="statistic kernel")
        p.add_argument("--nodes", type=int, default=128, help="quadrature nodes per axis")
        if seed:
            p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1, help="threads for replicate loops")

    p = sub.add_parser("test", help="asymptotic (and optional Monte Carlo) CSR test of a pattern")
    p.add_argument("--input", required=True)
    p.add_argument("--window", type=_window, default=Window.unit(), help="x0:x1,y0:y1")
    p.add_argument("--sided", choices=SIDES, default="two")
    p.add_argument("--mc", type=int, metavar="B", help="Monte Carlo replicates")
    p.add_argument("--sampler", choices=sim.SAMPLERS, default="moran")
    common(p)

    p = sub.add_parser("moments", help="limiting moments of a kernel")
    p.add_argument("--mc-samples", type=int, help="use the Monte Carlo oracle with this many samples")
    common(p)

    p = sub.add_parser("simulate", help="null CLT diagnostic")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reps", type=int, required=True)
    common(p)

    p = sub.add_parser("diagnose-remainder", help="mean R_n^2 / n^3 over a grid of n")
    p.add_argument("--n-grid", type=_n_grid, required=True)
    p.add_argument("--reps", type=int, required=True)
    common(p)

    p = sub.add_parser("power", help="rejection rate against a generated alternative")
    p.add_argument("--kind", choices=sim.KINDS, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--beta", type=float)
    p.add_argument("--parent-count", type=float)
    p.add_argument("--offspring-mean", type=float)
    p.add_argument("--radius", type=float)
    p.add_argument("--inhibition-distance", type=float)
    p.add_argument("--level", type=float, default=0.05)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--B", type=int, default=999)
    p.add_argument("--sampler", choices=sim.SAMPLERS, default="moran")
    p.add_argument("--sided", choices=SIDES, default="two")
    common(p)

    p = sub.add_parser("spacings", help="dump the n x n area grid")
    p.add_argument("--input", required=True)
    p.add_argument("--window", type=_window, default=Window.unit())
    p.add_argument("--output", choices=("csv", "json"), default="csv")
    return parser


def _validate(args):
    def need(cond, msg):
        if not cond:
            raise UsageError(msg)

    if hasattr(args, "nodes"):
        need(args.nodes >= MIN_NODES, f"--nodes must be >= {MIN_NODES}")
    if hasattr(args, "seed"):
        need(args.seed >= 0, "--seed must be non-negative")
    if hasattr(args, "workers"):
        need(args.workers >= 1, "--workers must be >= 1")
    cmd = args.subcommand
    if cmd == "test" and args.mc is not None:
        need(args.mc >= sim.MIN_MC_B, f"--mc must be >= {sim.MIN_MC_B}")
    if cmd == "moments" and args.mc_samples is not None:
        need(args.mc_samples >= MIN_ORACLE_SAMPLES, f"--mc-samples must be >= {MIN_ORACLE_SAMPLES}")
    if cmd == "simulate":
        need(args.n >= 2, "--n must be >= 2")
        need(args.reps >= sim.MIN_DIAGNOSTIC_REPS, f"--reps must be >= {sim.MIN_DIAGNOSTIC_REPS}")
    if cmd == "diagnose-remainder":
        grid = args.n_grid
        need(all(n >= 1 for n in grid) and all(b > a for a, b in zip(grid, grid[1:])),
             "--n-grid must be strictly ascending positive integers")
        need(args.reps >= sim.MIN_DIAGNOSTIC_REPS, f"--reps must be >= {sim.MIN_DIAGNOSTIC_REPS}")
    if cmd == "power":
        need(0.0 < args.level < 1.0, "--level must lie in (0, 1)")
        need(args.reps >= 1, "--reps must be >= 1")
        need(args.B >= sim.MIN_MC_B, f"--B must be >= {sim.MIN_MC_B}")
        try:
            args.spec = sim.GeneratorSpec(args.kind, args.m, _generator_params(args))
        except ValueError as exc:
            raise UsageError(str(exc)) from None


def _generator_params(args):
    names = {
        "beta": args.beta,
        "parent_count": args.parent_count,
        "offspring_mean": args.offspring_mean,
        "radius": args.radius,
        "inhibition_distance": args.inhibition_distance,
    }
    return {k: v for k, v in names.items() if v is not None and k in sim._KIND_PARAMS[args.kind]}


def _read_pattern(args):
    with open(args.input, encoding="utf-8") as fh:
        return load_pattern(fh, args.window)


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def _run(args) -> str:
    cmd = args.subcommand
    if cmd == "spacings":
        grid = compute_grid(rescale_to_unit(_read_pattern(args)))
        areas = grid.areas()
        if args.output == "json":
            return _dump({"n": grid.n, "dx": grid.dx.tolist(), "dy": grid.dy.tolist(), "areas": areas.tolist()})
        rows = areas.tolist()
        return "".join(f"{i + 1},{j + 1},{a!r}\n" for i, row in enumerate(rows) for j, a in enumerate(row))

    g = gfun.builtin(args.g)
    if cmd == "moments":
        if args.mc_samples is not None:
            return _dump(mc_oracle(g, args.mc_samples, args.seed).to_dict())
        return _dump(compute_moments(g, args.nodes).to_dict())

    moments = compute_moments(g, args.nodes)
    if cmd == "test":
        pattern = _read_pattern(args)
        result = asymptotic_test(pattern, g, moments, args.sided)
        out = result.to_dict()
        if args.mc is not None:
            out["p_monte_carlo"] = sim.mc_pvalue(
                pattern, g, moments, args.mc, args.seed, args.sampler, args.sided, args.workers
            )
        return _dump(out)
    if cmd == "simulate":
        return _dump(sim.normality_diagnostic(g, moments, args.n, args.reps, args.seed, args.workers).to_dict())
    if cmd == "diagnose-remainder":
        rows = sim.remainder_diagnostic(g, moments, args.n_grid, args.reps, args.seed, args.workers)
        return _dump({
            "g_name": g.name,
            "reps": args.reps,
            "seed": args.seed,
            "results": [{"n": n, "mean_r2_over_n3": v} for n, v in rows],
        })
    if cmd == "power":
        spec = args.spec
        power = sim.power_estimate(
            spec, g, moments, args.level, args.reps, args.B, args.seed, args.sampler, args.sided, args.workers
        )
        return _dump({
            "kind": spec.kind,
            "m": spec.m,
            "params": spec.params,
            "g_name": g.name,
            "level": args.level,
            "reps": args.reps,
            "B": args.B,
            "seed": args.seed,
            "power": power,
        })
    raise UsageError(f"unknown subcommand {cmd!r}")  # pragma: no cover


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        text = _run(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except SpacingsError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"IOError: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
