"""Command-line entry point: cover evaluation, solvers, instance tools.

Exit codes: 0 success, 1 computational failure, 2 usage or parse errors.
Every command takes ``--seed`` and is fully deterministic for a fixed seed;
solver reports embed the resolved configuration.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .continuous import NmConfig, multistart_continuous
from .cover import (CoverEvaluator, joint_cover_hexagonal,
                    joint_cover_montecarlo, joint_cover_quadrature)
from .discrete import GaConfig, enumerate_optimal, genetic_solve, make_site_objective
from .geometry import DemandPoint, Point2
from .hexpattern import make_hex_pattern
from .instances import (InstanceParseError, gen_synthetic, load_facilities,
                        load_instance, save_instance, six_facility_example)
from .quadrature import make_quadrature_rule
from .reports import SolveReport, read_report, write_report


def _add_backend_flags(parser: argparse.ArgumentParser, default_samples: int = 1_000_000) -> None:
    parser.add_argument("--backend", choices=["quadrature", "hexagonal", "montecarlo"],
                        default="quadrature", help="cover integration backend")
    parser.add_argument("--order", type=int, default=10,
                        help="radial quadrature order (quadrature backend)")
    parser.add_argument("--hex-m", type=float, default=220.0,
                        help="hexagonal pattern selection bound (hexagonal backend)")
    parser.add_argument("--samples", type=int, default=default_samples,
                        help="sample count (montecarlo backend)")


def _make_evaluator(args) -> CoverEvaluator:
    if args.backend == "quadrature":
        return CoverEvaluator.quadrature(order=args.order)
    if args.backend == "hexagonal":
        return CoverEvaluator.hexagonal(M=args.hex_m)
    return CoverEvaluator.montecarlo(args.samples, args.seed)


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def cmd_cover(args) -> int:
    try:
        instance = load_instance(args.instance, default_cover_radius=args.cover_radius)
        facilities = load_facilities(args.facilities, args.cover_radius)
    except (InstanceParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    demand = instance.demand_points
    if args.radius is not None:
        demand = [DemandPoint(dp.id, dp.center, args.radius, dp.weight) for dp in demand]
    evaluator = _make_evaluator(args)

    lines = ["id,cover"]
    weights = np.array([dp.weight for dp in demand])
    covers = []
    for i, dp in enumerate(demand):
        if evaluator.kind == "montecarlo":
            value = evaluator.joint_cover(dp, facilities, seed=[args.seed, i])
        else:
            value = evaluator.joint_cover(dp, facilities)
        covers.append(value)
        lines.append(f"{dp.id},{value:.12g}")
    total = float(np.dot(weights, np.array(covers)) / weights.sum())
    lines.append(f"TOTAL,{total:.12g}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_solve_discrete(args) -> int:
    try:
        instance = load_instance(args.instance, args.sites,
                                 default_cover_radius=args.cover_radius)
    except (InstanceParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if instance.candidate_sites is None:
        print("error: discrete solving needs a candidate-sites file", file=sys.stderr)
        return 2
    evaluator = _make_evaluator(args)
    started = time.perf_counter()
    try:
        if args.enumerate:
            objective = make_site_objective(instance, instance.candidate_sites, evaluator)
            best, value = enumerate_optimal(instance, args.p, evaluator,
                                            budget=args.budget, objective=objective)
            report = SolveReport(
                solver="enumeration", seed=args.seed, objective=value,
                facilities=[instance.candidate_sites[j].center for j in best],
                site_indices=list(best), evaluations=objective.eval_count,
                config={"p": args.p, **evaluator.describe()},
            )
        else:
            config = GaConfig(population_size=args.pop, generations=args.generations,
                              second_parent_candidates=args.parents,
                              initial_improve_fraction=args.improve_fraction,
                              rng_seed=args.seed)
            report = genetic_solve(instance, args.p, config, evaluator)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.timing:
        report.wall_time = time.perf_counter() - started
    write_report(report, args.out)
    print(f"{report.solver} objective {report.objective:.12g} -> {args.out}")
    return 0


def cmd_solve_continuous(args) -> int:
    try:
        instance = load_instance(args.instance, default_cover_radius=args.cover_radius)
        given = None
        if args.start_from is not None:
            start_report = read_report(args.start_from)
            given = start_report.facilities
    except (InstanceParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    p = args.p
    if given is not None:
        if p is not None and p != len(given):
            print(f"error: -p {p} does not match the {len(given)} facilities "
                  f"in {args.start_from}", file=sys.stderr)
            return 2
        p = len(given)
    elif p is None:
        print("error: -p is required without --start-from", file=sys.stderr)
        return 2

    evaluator = _make_evaluator(args)
    config = NmConfig(alpha=args.alpha, beta=args.beta, gamma=args.gamma,
                      vertex_count=args.vertices, epsilon=args.epsilon,
                      init_square_side=args.square_side,
                      max_iterations=args.max_iterations)
    rng = np.random.default_rng(args.seed)
    mode = "given_sites" if given is not None else "random_demand_points"
    started = time.perf_counter()
    try:
        report = multistart_continuous(instance, p, args.starts, mode, config, rng,
                                       evaluator, given=given,
                                       project=not args.no_project, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.timing:
        report.wall_time = time.perf_counter() - started
    write_report(report, args.out)
    if args.plot_out is not None:
        lines = ["kind,id,x,y,radius"]
        for dp in instance.demand_points:
            lines.append(f"demand,{dp.id},{dp.center.x:.12g},{dp.center.y:.12g},"
                         f"{dp.radius:.12g}")
        for k, pt in enumerate(report.facilities):
            lines.append(f"facility,{k},{pt.x:.12g},{pt.y:.12g},"
                         f"{instance.default_cover_radius:.12g}")
        _write_text(args.plot_out, "\n".join(lines) + "\n")
    print(f"{report.solver} objective {report.objective:.12g} -> {args.out}")
    return 0


def cmd_gen_instance(args) -> int:
    if args.m > 0 and args.out_sites is None:
        print("error: --out-sites is required when --m > 0", file=sys.stderr)
        return 2
    try:
        instance = gen_synthetic(args.n, args.m, tuple(args.box),
                                 tuple(args.weight_range), args.radius,
                                 args.cover_radius, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    save_instance(instance, args.out_demand,
                  args.out_sites if args.m > 0 else None)
    print(f"wrote {instance.n} demand points to {args.out_demand}"
          + (f" and {instance.m} sites to {args.out_sites}" if args.m > 0 else ""))
    return 0


def cmd_bench(args) -> int:
    rule = make_quadrature_rule(args.order)
    patterns = [(52.0, "n199"), (110.0, "n397"), (220.0, "n805")]
    pats = [(make_hex_pattern(m), name) for m, name in patterns]
    _, facilities = six_facility_example()
    radii = [round(1.0 + 0.1 * k, 1) for k in range(11)]

    lines = ["R,sim,gauss," + ",".join(name for _, name in pats)]
    sims, columns = [], {name: [] for _, name in pats}
    gauss_col = []
    for i, R in enumerate(radii):
        demand = DemandPoint("0", Point2(0.0, 0.0), R, 1.0)
        sim, _se = joint_cover_montecarlo(demand, facilities, args.samples,
                                          [args.seed, i])
        gauss = joint_cover_quadrature(demand, facilities, rule)
        row = [f"{R:.1f}", f"{sim:.12g}", f"{gauss:.12g}"]
        sims.append(sim)
        gauss_col.append(gauss)
        for pattern, name in pats:
            value = joint_cover_hexagonal(demand, facilities, pattern)
            columns[name].append(value)
            row.append(f"{value:.12g}")
        lines.append(",".join(row))

    sims_arr = np.array(sims)
    devs = [f"{np.abs(np.array(gauss_col) - sims_arr).mean():.12g}"]
    for _, name in pats:
        devs.append(f"{np.abs(np.array(columns[name]) - sims_arr).mean():.12g}")
    lines.append("avg_abs_dev,," + ",".join(devs))
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dircover",
        description="Directional gradual-cover evaluation and maximum-cover solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    cover = sub.add_parser("cover", help="per-demand-point covers and the weighted total")
    cover.add_argument("instance", help="demand CSV (id,x,y,weight,radius)")
    cover.add_argument("facilities", help="facilities CSV (id,x,y[,cover_radius])")
    _add_backend_flags(cover)
    cover.add_argument("--radius", type=float, default=None,
                       help="override every demand radius")
    cover.add_argument("--cover-radius", type=float, default=3.0,
                       help="cover radius for facilities without one")
    cover.add_argument("--seed", type=int, default=0)
    cover.add_argument("--out", default=None, help="output CSV (default stdout)")
    cover.set_defaults(func=cmd_cover)

    disc = sub.add_parser("solve-discrete", help="select the best p candidate sites")
    disc.add_argument("instance", help="demand CSV")
    disc.add_argument("--sites", required=True, help="candidate-sites CSV")
    disc.add_argument("-p", type=int, required=True, help="number of facilities")
    _add_backend_flags(disc)
    disc.add_argument("--cover-radius", type=float, default=3.0)
    disc.add_argument("--pop", type=int, default=100, help="population size")
    disc.add_argument("--generations", type=int, default=10_000)
    disc.add_argument("--parents", type=int, default=2,
                      help="potential second parents per selection")
    disc.add_argument("--improve-fraction", type=float, default=0.20)
    disc.add_argument("--seed", type=int, default=0)
    disc.add_argument("--enumerate", action="store_true",
                      help="exact enumeration instead of the genetic algorithm")
    disc.add_argument("--budget", type=int, default=2_000_000,
                      help="enumeration subset budget")
    disc.add_argument("--timing", action="store_true",
                      help="record wall time in the report (breaks byte-identical reruns)")
    disc.add_argument("--out", required=True, help="report JSON path")
    disc.set_defaults(func=cmd_solve_discrete)

    cont = sub.add_parser("solve-continuous", help="locate p facilities anywhere")
    cont.add_argument("instance", help="demand CSV")
    cont.add_argument("-p", type=int, default=None, help="number of facilities")
    _add_backend_flags(cont)
    cont.add_argument("--cover-radius", type=float, default=3.0)
    cont.add_argument("--starts", type=int, default=10, help="number of starts")
    cont.add_argument("--start-from", default=None,
                      help="report JSON whose facilities seed the search")
    cont.add_argument("--alpha", type=float, default=1.0)
    cont.add_argument("--beta", type=float, default=0.5)
    cont.add_argument("--gamma", type=float, default=2.0)
    cont.add_argument("--vertices", type=int, default=3)
    cont.add_argument("--epsilon", type=float, default=1e-6)
    cont.add_argument("--square-side", type=float, default=None)
    cont.add_argument("--max-iterations", type=int, default=500)
    cont.add_argument("--no-project", action="store_true",
                      help="skip the convex-hull projection post-step")
    cont.add_argument("--seed", type=int, default=0)
    cont.add_argument("--timing", action="store_true",
                      help="record wall time in the report (breaks byte-identical reruns)")
    cont.add_argument("--out", required=True, help="report JSON path")
    cont.add_argument("--plot-out", default=None,
                      help="CSV of demand and facility discs for plotting")
    cont.set_defaults(func=cmd_solve_continuous)

    gen = sub.add_parser("gen-instance", help="generate a synthetic instance")
    gen.add_argument("--n", type=int, required=True, help="demand points")
    gen.add_argument("--m", type=int, default=0, help="candidate sites")
    gen.add_argument("--box", type=float, nargs=4, default=[0.0, 0.0, 20.0, 20.0],
                     metavar=("XMIN", "YMIN", "XMAX", "YMAX"))
    gen.add_argument("--weight-range", type=float, nargs=2, default=[1.0, 10.0])
    gen.add_argument("--radius", type=float, default=1.0)
    gen.add_argument("--cover-radius", type=float, default=3.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out-demand", required=True)
    gen.add_argument("--out-sites", default=None)
    gen.set_defaults(func=cmd_gen_instance)

    bench = sub.add_parser("bench", help="backend comparison on the six-facility scene")
    bench.add_argument("--samples", type=int, default=10_000_000)
    bench.add_argument("--order", type=int, default=10)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out", default=None, help="output CSV (default stdout)")
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceParseError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
