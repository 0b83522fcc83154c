"""Command-line front end.

Exit codes: 0 success / verification passed; 1 solved-but-failed
verification or bound unavailable; 2 usage or file errors.  Human-readable
reporting goes to stdout; machine artifacts are written only via ``-o``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds as bounds_mod
from . import instances, reductions
from .errors import MasscutError, NoBoundAvailable
from .geometry import default_tau, orthant_measures
from .solver import SolverConfig
from .verifier import verify

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="masscut",
        description="Equipartition point-cloud masses by hyperplanes and bound the dimensions where it is possible.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen.add_argument("--kind", required=True, choices=["gaussian", "symmetric", "grid"])
    gen.add_argument("--d", type=int, required=True, help="ambient dimension")
    gen.add_argument("--n", type=int, required=True, help="points per mass (grid: side length)")
    gen.add_argument("--m", type=int, default=1, help="number of masses")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", required=True)
    gen.set_defaults(func=cmd_gen)

    solve = sub.add_parser("solve", help="search for an equipartitioning arrangement")
    solve.add_argument("--instance", required=True)
    solve.add_argument("--h", type=int, required=True, help="number of hyperplanes")
    solve.add_argument(
        "--strategy", default="auto", choices=["direct", "lemma1", "lemma2", "auto"]
    )
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--tol", type=float, default=1e-2)
    solve.add_argument("--boundary-budget", type=float, default=1e-3)
    solve.add_argument("--restarts", type=int, default=16)
    solve.add_argument("--eps-schedule", default=None, help="comma-separated decreasing fractions")
    solve.add_argument("--ball-n", type=int, default=reductions.DEFAULT_BALL_SAMPLES)
    solve.add_argument("-o", "--output", default=None, help="cuts file to write")
    solve.add_argument("--trace", action="store_true", help="dump the strategy trace as JSON")
    solve.set_defaults(func=cmd_solve)

    ver = sub.add_parser("verify", help="verify cuts against an instance")
    ver.add_argument("--instance", required=True)
    ver.add_argument("--cuts", required=True)
    ver.add_argument("--tol", type=float, default=1e-2)
    ver.add_argument("--boundary-budget", type=float, default=1e-3)
    ver.add_argument("--dump-csv", default=None, help="write per-orthant measures as CSV")
    ver.set_defaults(func=cmd_verify)

    bnd = sub.add_parser("bounds", help="best upper bound for one (h, m)")
    bnd.add_argument("--h", type=int, required=True)
    bnd.add_argument("--m", type=int, required=True)
    bnd.add_argument("--show-chain", action="store_true")
    bnd.add_argument("--cap-factor", type=int, default=2)
    bnd.set_defaults(func=cmd_bounds)

    tab = sub.add_parser("table", help="bound table over a grid")
    tab.add_argument("--h-max", type=int, required=True)
    tab.add_argument("--m-max", type=int, required=True)
    tab.add_argument("--format", default="text", choices=["csv", "text"])
    tab.add_argument("--cap-factor", type=int, default=2)
    tab.add_argument("-o", "--output", default=None)
    tab.set_defaults(func=cmd_table)
    return parser


def cmd_gen(args) -> int:
    if args.kind == "gaussian":
        masses = instances.gen_gaussian(args.d, args.n, args.m, args.seed)
        params = {"d": args.d, "n": args.n, "m": args.m}
    elif args.kind == "symmetric":
        if args.m != 1:
            print("error: symmetric instances hold a single mass", file=sys.stderr)
            return EXIT_USAGE
        masses = [instances.gen_symmetric(args.d, args.n, args.seed)]
        params = {"d": args.d, "n": args.n}
    else:
        masses = instances.gen_grid(args.d, args.n, args.m)
        params = {"d": args.d, "side": args.n, "m": args.m}
    payload = instances.InstanceFile(
        dim=args.d,
        masses=masses,
        metadata={"generator": args.kind, "seed": args.seed, "parameters": params},
    )
    instances.write_instance(args.output, payload)
    print(f"wrote {args.output}: {len(masses)} mass(es) in dimension {args.d}")
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = instances.read_instance(args.instance)
    config = SolverConfig(
        seed=args.seed,
        restarts=args.restarts,
        tol=args.tol,
        boundary_budget=args.boundary_budget,
    )
    schedule = None
    if args.eps_schedule:
        values = tuple(float(v) for v in args.eps_schedule.split(","))
        schedule = reductions.EpsilonSchedule(values)
    solution = reductions.solve(
        inst.masses,
        args.h,
        strategy=args.strategy,
        config=config,
        schedule=schedule,
        ball_n=args.ball_n,
    )
    report = solution.report
    print(f"strategy: {args.strategy}  converged: {solution.converged}")
    for j, imb in enumerate(report.per_mass_imbalance):
        print(f"mass {j}: imbalance {imb:.6g}")
    print(f"max imbalance {report.max_imbalance:.6g} (tol {report.tol:.6g})")
    print(f"boundary fraction {report.boundary_fraction:.6g} (budget {report.boundary_budget:.6g})")
    if args.output and solution.arrangement is not None:
        instances.write_cuts(args.output, solution.arrangement)
        print(f"wrote cuts to {args.output}")
    if args.trace:
        print(json.dumps(solution.strategy_trace, indent=2, default=str))
    return EXIT_OK if solution.converged else EXIT_FAILED


def cmd_verify(args) -> int:
    inst = instances.read_instance(args.instance)
    cuts = instances.read_cuts(args.cuts)
    report = verify(inst.masses, cuts, args.tol, args.boundary_budget)
    for j, imb in enumerate(report.per_mass_imbalance):
        print(f"mass {j}: imbalance {imb:.6g}")
    print(f"max imbalance {report.max_imbalance:.6g} (tol {report.tol:.6g})")
    print(f"boundary fraction {report.boundary_fraction:.6g} (budget {report.boundary_budget:.6g})")
    print("PASS" if report.passed else "FAIL")
    if args.dump_csv:
        tau = default_tau(inst.masses)
        lines = ["mass,label,measure"]
        for j, mass in enumerate(inst.masses):
            tbl = orthant_measures(mass, cuts, tau)
            for label, value in sorted(tbl.entries.items()):
                tag = "".join("+" if s > 0 else "-" for s in label)
                lines.append(f"{j},{tag},{value!r}")
            lines.append(f"{j},boundary,{tbl.boundary!r}")
        with open(args.dump_csv, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_bounds(args) -> int:
    cfg = bounds_mod.SearchConfig(m_cap_factor=args.cap_factor)
    try:
        cert = bounds_mod.best_upper_bound(args.h, args.m, cfg)
    except NoBoundAvailable as exc:
        print(f"no bound available: {exc}", file=sys.stderr)
        return EXIT_FAILED
    print(cert.value)
    if args.show_chain:
        print(cert.render_chain())
    return EXIT_OK


def cmd_table(args) -> int:
    cfg = bounds_mod.SearchConfig(m_cap_factor=args.cap_factor)
    grid = bounds_mod.table(args.h_max, args.m_max, cfg)
    if args.format == "csv":
        rendered = bounds_mod.render_table_csv(grid)
    else:
        rendered = bounds_mod.render_table_text(grid)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(rendered)
        print(f"wrote {args.output}")
    else:
        print(rendered, end="")
    return EXIT_OK


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except NoBoundAvailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (MasscutError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
