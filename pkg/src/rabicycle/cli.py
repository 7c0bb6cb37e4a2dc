"""Command-line front end.

Subcommands: spectrum (level pair at one parameter point), cycle (one full
cycle), sweep (grid run from a config file), figure (stock preset
datasets).  Exit codes: 0 success, 2 configuration error,
3 full-sweep failure (every grid point errored).
"""
from __future__ import annotations

import argparse
import os
import sys

from .cycle import CycleSpec, run_cycle
from .errors import ConfigError, CycleError, RabiError
from .model import Knob, Method, ModelParams, TruncationPolicy
from .spectrum import approx_levels, exact_levels
from .sweep import (_DEFAULT_FIXED, _FIGURE_IDS, emit_csv, emit_json,
                    figure_dataset, parse_config, run_sweep, write_output)


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rabicycle",
        description="Isoenergetic cycles on the two lowest Rabi levels")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="two lowest levels at one point")
    sp.add_argument("--g", type=float, required=True)
    sp.add_argument("--omega", type=float, required=True)
    sp.add_argument("--bigomega", type=float, required=True)
    sp.add_argument("--method", choices=["exact", "approx", "both"],
                    default="exact")
    sp.add_argument("--nmax", type=int, default=None,
                    help="starting boson cutoff for the exact solve")

    cy = sub.add_parser("cycle", help="run one full cycle")
    cy.add_argument("--varied", choices=[k.value for k in Knob], required=True)
    cy.add_argument("--xi1", type=float, required=True)
    cy.add_argument("--alpha", type=float, required=True)
    cy.add_argument("--method", choices=["exact", "approx"], default="exact")
    cy.add_argument("--g", type=float, default=None,
                    help="held coupling (when not the varied knob)")
    cy.add_argument("--omega", type=float, default=None)
    cy.add_argument("--bigomega", type=float, default=None)

    sw = sub.add_parser("sweep", help="run a config-file sweep")
    sw.add_argument("--config", required=True)
    sw.add_argument("--workers", type=int, default=1)

    fg = sub.add_parser("figure", help="emit a preset figure dataset")
    fg.add_argument("id", choices=list(_FIGURE_IDS))
    fg.add_argument("--out", default=".")
    fg.add_argument("--points", type=int, default=None,
                    help="override the preset grid point count")
    fg.add_argument("--workers", type=int, default=1)
    fg.add_argument("--format", choices=["csv", "json"], default="csv")
    return p


def _cmd_spectrum(args) -> int:
    params = ModelParams(g=args.g, omega=args.omega, bigomega=args.bigomega)
    policy = (TruncationPolicy(n_max=args.nmax) if args.nmax
              else TruncationPolicy())
    pairs = []
    if args.method in ("exact", "both"):
        pairs.append(exact_levels(params, policy))
    if args.method in ("approx", "both"):
        pairs.append(approx_levels(params))
    for pair in pairs:
        print(f"method={pair.method.value} e0={pair.e0!r} e1={pair.e1!r} "
              f"gap={pair.gap!r} n_used={pair.n_used} "
              f"converged={str(pair.converged).lower()}")
    return 0


def _cmd_cycle(args) -> int:
    varied = Knob(args.varied)
    fixed = _DEFAULT_FIXED[varied]
    overrides = {}
    for name in ("g", "omega", "bigomega"):
        value = getattr(args, name)
        if value is None:
            continue
        if name == varied.value:
            print(f"error: key '{name}': cannot fix the varied parameter",
                  file=sys.stderr)
            return 2
        overrides[name] = value
    if overrides:
        fixed = fixed.replace(**overrides)
    spec = CycleSpec(varied=varied, xi1=args.xi1, alpha=args.alpha,
                     fixed=fixed, method=Method(args.method))
    result = run_cycle(spec)
    xi1, xi2, xi3, xi4 = result.xi
    print(f"xi1={xi1!r} xi2={xi2!r} xi3={xi3!r} xi4={xi4!r}")
    print(f"q_in={result.q_in!r} q_out={result.q_out!r}")
    print(f"w_total={result.w_total!r} eta={result.eta!r}")
    print(f"dsc_threshold={str(result.dsc_threshold).lower()} "
          f"near_degenerate={str(result.near_degenerate).lower()}")
    return 0


def _cmd_sweep(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        text = fh.read()
    config = parse_config(text)
    table = run_sweep(config, workers=args.workers)
    if table.all_failed:
        print("error: every grid point failed", file=sys.stderr)
        return 3
    if config.output_path:
        write_output(table, config.output_path, config.output_format)
        print(config.output_path)
    else:
        out = (emit_csv(table) if config.output_format == "csv"
               else emit_json(table))
        sys.stdout.write(out)
    return 0


def _cmd_figure(args) -> int:
    table = figure_dataset(args.id, points=args.points, workers=args.workers)
    if table.all_failed:
        print("error: every grid point failed", file=sys.stderr)
        return 3
    os.makedirs(args.out, exist_ok=True)
    ext = "csv" if args.format == "csv" else "json"
    path = os.path.join(args.out, f"{args.id}.{ext}")
    write_output(table, path, args.format)
    print(path)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"spectrum": _cmd_spectrum, "cycle": _cmd_cycle,
                "sweep": _cmd_sweep, "figure": _cmd_figure}
    try:
        return handlers[args.command](args)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except CycleError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except RabiError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
