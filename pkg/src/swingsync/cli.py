"""Command-line interface: analyze, reduce, simulate, compare.

Exit codes: 0 success, 2 invalid input (parse or validation failure),
3 numerical failure.  Diagnostics go to stderr, data to stdout or files.
"""

import argparse
import json
import sys

import numpy as np

from .aggregation import aggregate, build_P, lift, project_initial
from .errors import (
    NonFiniteState,
    SingularSystem,
    SwingSyncError,
)
from .io import (
    load_network,
    load_partition,
    save_network,
    write_trajectory_csv,
)
from .kron import kron_reduce
from .network import build_laplacian
from .simulate import compare, integrate
from .sync import (
    DEFAULT_TOL,
    coarsest_equitable_refinement,
    pair_sync,
    strong_sync,
    weak_sync,
)


def _report_to_dict(rep) -> dict:
    return {
        "verdict": rep.verdict,
        "branch": rep.branch,
        "violated": [
            {"condition": v.condition, "indices": list(v.indices), "residual": v.residual}
            for v in rep.violated
        ],
    }


def _parse_vector(text: str, name: str, n: int) -> np.ndarray:
    try:
        values = [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise SwingSyncError(f"{name} must be a comma-separated list of numbers") from exc
    if len(values) != n:
        raise SwingSyncError(f"{name} has {len(values)} entries, the network has {n} generators")
    return np.array(values)


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def cmd_analyze(args) -> int:
    net = load_network(args.network)
    blocks = build_laplacian(net)
    ks = kron_reduce(net, blocks)
    tol = args.tol
    pairs = [
        [i, j]
        for i in range(1, net.n + 1)
        for j in range(i + 1, net.n + 1)
        if pair_sync(net, ks, i, j, tol).verdict
    ]
    report = {"n": net.n, "tol": tol, "synchronized_pairs": pairs}
    if args.partition:
        part = load_partition(args.partition)
        report["partition"] = {
            "clusters": [list(c) for c in part.clusters],
            "strong": _report_to_dict(strong_sync(net, ks, part, tol)),
            "weak": _report_to_dict(weak_sync(net, ks, part, tol)),
        }
    if args.seed:
        seed = load_partition(args.seed)
        refined = coarsest_equitable_refinement(ks, net, seed, tol)
        report["refinement"] = {
            "seed": [list(c) for c in seed.clusters],
            "clusters": [list(c) for c in refined.clusters],
        }
    _emit(report)
    return 0


def cmd_reduce(args) -> int:
    net = load_network(args.network)
    part = load_partition(args.partition)
    reduced = aggregate(net, part)
    save_network(reduced, args.output)
    agg = build_P(part, net.n)
    projector = (agg.P / agg.cluster_sizes).T  # (P^T P)^{-1} P^T
    sidecar = {
        "clusters": [list(c) for c in part.clusters],
        "cluster_sizes": [int(s) for s in agg.cluster_sizes],
        "P": agg.P.tolist(),
        "projector": projector.tolist(),
    }
    with open(str(args.output) + ".projection.json", "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return 0


def cmd_simulate(args) -> int:
    net = load_network(args.network)
    blocks = build_laplacian(net)
    ks = kron_reduce(net, blocks)
    delta0 = _parse_vector(args.delta0, "--delta0", net.n)
    omega0 = _parse_vector(args.omega0, "--omega0", net.n) if args.omega0 else None
    traj = integrate(
        ks,
        net,
        delta0,
        omega0,
        t_end=args.t_end,
        dt=args.dt,
        with_voltages=args.with_voltages,
        blocks=blocks,
    )
    write_trajectory_csv(traj, args.output)
    return 0


def cmd_compare(args) -> int:
    net = load_network(args.network)
    part = load_partition(args.partition)
    blocks = build_laplacian(net)
    ks = kron_reduce(net, blocks)
    delta0 = _parse_vector(args.delta0, "--delta0", net.n)
    omega0 = (
        _parse_vector(args.omega0, "--omega0", net.n)
        if args.omega0
        else np.zeros(net.n)
    )

    full = integrate(
        ks, net, delta0, omega0, t_end=args.t_end, dt=args.dt,
        with_voltages=True, blocks=blocks,
    )
    reduced_net = aggregate(net, part)
    rblocks = build_laplacian(reduced_net)
    rks = kron_reduce(reduced_net, rblocks)
    agg = build_P(part, net.n)
    d0h, w0h = project_initial(agg, delta0, omega0)
    reduced = integrate(
        rks, reduced_net, d0h, w0h, t_end=args.t_end, dt=args.dt,
        with_voltages=True, blocks=rblocks,
    )
    write_trajectory_csv(full, args.output_full)
    write_trajectory_csv(reduced, args.output_reduced)
    _emit(compare(full, lift(agg, reduced)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swingsync",
        description="Synchronization analysis, aggregation and simulation of "
        "swing-equation power networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="synchronized pairs, partition verdicts, refinement")
    p.add_argument("network", help="network JSON file")
    p.add_argument("--partition", help="partition JSON file to test strong/weak verdicts")
    p.add_argument("--seed", help="seed partition JSON file for equitable refinement")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tolerance")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reduce", help="aggregate a network cluster-wise")
    p.add_argument("network")
    p.add_argument("partition")
    p.add_argument("--output", required=True, help="reduced network JSON path")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("simulate", help="integrate the swing dynamics to CSV")
    p.add_argument("network")
    p.add_argument("--delta0", required=True, help="comma-separated initial angles")
    p.add_argument("--omega0", help="comma-separated initial velocities (default 0)")
    p.add_argument("--t-end", type=float, default=10.0, dest="t_end")
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--with-voltages", action="store_true", dest="with_voltages")
    p.add_argument("--output", required=True, help="trajectory CSV path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser(
        "compare", help="full vs aggregated simulation, error metrics to stdout"
    )
    p.add_argument("network")
    p.add_argument("partition")
    p.add_argument("--delta0", required=True)
    p.add_argument("--omega0")
    p.add_argument("--t-end", type=float, default=10.0, dest="t_end")
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--output-full", required=True, dest="output_full")
    p.add_argument("--output-reduced", required=True, dest="output_reduced")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NonFiniteState, SingularSystem) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SwingSyncError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
