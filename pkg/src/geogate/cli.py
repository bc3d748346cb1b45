"""Command-line entry point: ``geogate <command> [flags]``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (
    analyze, geodesic_deviation, group_map_series, velocity_acceleration,
    discrete_log_velocities,
)
from .io import (
    DataError, read_json, read_metrics, read_trajectory, write_csv, write_json, write_metrics,
    write_trajectory,
)
from .lie import LogBranchError, killing_norm
from .report import auto_stride, compare, comparison_header, comparison_records, format_table
from .sim import AnsatzConfig, bloch_sweep, plus_state, zero_state
from .train import NetworkConfig, TrainConfig, gradient_variance_scan, train

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3
SEED_ENV = "GEOGATE_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _qubit_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = (int(p) for p in text.split("..", 1))
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'A..B' or a comma list of integers, got {text!r}")


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={env!r} is not an integer")


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = time.gmtime(int(epoch)) if epoch else time.gmtime()
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", t)


def _manifest_path(out: Path) -> Path:
    return out.with_name(out.stem + ".manifest.json")


def _write_manifest(argv, out: Path, outputs, seed=None, config=None) -> Path:
    path = _manifest_path(out)
    outputs = [str(p) for p in outputs] + [str(path)]
    write_json(path, {
        "argv": list(argv), "seed": seed, "config": config, "outputs": outputs,
        "version": __version__, "timestamp": _timestamp(),
    })
    return path


def _axis_schedule(text: str) -> tuple[str, ...] | str:
    parts = [p.strip().upper() for p in text.split(",") if p.strip()]
    return parts[0] if len(parts) == 1 else tuple(parts)


# -- commands --------------------------------------------------------------

def cmd_train(args, argv) -> int:
    seed = _seed(args)
    ansatz = AnsatzConfig(args.qubits, args.layers, _axis_schedule(args.axes), args.entangler)
    network = NetworkConfig(args.nn_input, args.nn_hidden, args.nn_output_gain, args.nn_lr_scale)
    config = TrainConfig(ansatz, args.iters, args.lr, args.optimizer, args.mode, seed, network)
    traj = train(config)
    out = Path(args.out)
    csv_path, meta_path = write_trajectory(out, traj, config)
    outputs = [csv_path, meta_path]
    if args.mode == "nn" and args.save_weights:
        outputs.append(write_json(out.with_name(out.stem + ".weights.json"),
                                  traj.meta["weights"].to_dict()))
    _write_manifest(argv, out, outputs, seed, config.to_dict())
    return EXIT_OK


def _normalize_flag(value: str):
    return {"auto": "auto", "on": True, "off": False}[value]


def cmd_analyze(args, argv) -> int:
    traj = read_trajectory(args.trace)
    metrics = analyze(traj, args.dt, _normalize_flag(args.normalize),
                      absolute=not args.signed, ddof=args.ddof)
    write_metrics(args.out, metrics)
    return EXIT_OK


def cmd_groupmap(args, argv) -> int:
    traj = read_trajectory(args.trace)
    if args.stride == "auto":
        if traj.num_qubits is None:
            raise DataError(f"{args.trace}: stride 'auto' needs the sidecar qubit count")
        stride = auto_stride(traj.num_qubits)
    else:
        try:
            stride = int(args.stride)
        except ValueError:
            raise UsageError(f"--stride must be 'auto' or an integer, got {args.stride!r}")
    try:
        series = group_map_series(traj, args.column, args.axis, stride)
    except IndexError as exc:
        raise UsageError(str(exc))
    write_csv(args.out, ["k", "y"], zip((int(k) for k in series.iterations), series.values))
    return EXIT_OK


def cmd_curves(args, argv) -> int:
    traj = read_trajectory(args.trace)
    try:
        k, v, a = velocity_acceleration(traj, args.column, args.dt, _normalize_flag(args.normalize))
    except IndexError as exc:
        raise UsageError(str(exc))
    write_csv(args.out, ["k", "v", "a"], zip((int(i) for i in k), v, a))
    return EXIT_OK


def cmd_deviation(args, argv) -> int:
    traj = read_trajectory(args.trace)
    try:
        steps = discrete_log_velocities(traj, args.column, args.axis)
    except IndexError as exc:
        raise UsageError(str(exc))
    norms = [killing_norm(w) for w in steps]
    write_json(args.out, {
        "trace": str(args.trace), "column": args.column, "axis": args.axis.upper(),
        "deviation": geodesic_deviation(traj, args.column, args.axis),
        "mean_step_norm": float(np.mean(norms)), "steps": len(norms),
    })
    return EXIT_OK


def cmd_bloch(args, argv) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    start = zero_state(1) if args.state == "zero" else plus_state()
    thetas = np.linspace(0.0, 2 * np.pi, args.samples)
    xyz = bloch_sweep(args.gate[1].upper(), start, thetas)
    write_csv(args.out, ["t", "x", "y", "z"], (np.concatenate(([t], p)) for t, p in zip(thetas, xyz)))
    return EXIT_OK


def cmd_plateau(args, argv) -> int:
    seed = _seed(args)
    if args.samples < 30:
        raise UsageError("--samples must be at least 30")
    if min(args.qubits) < 2:
        raise UsageError("--qubits must start at 2 or more (the cost reads qubits 0 and 1)")
    template = AnsatzConfig(2, None, _axis_schedule(args.axes), args.entangler)
    scan = gradient_variance_scan(args.qubits, args.samples, template, seed, args.all_components)
    out = Path(args.out)
    write_csv(out, ["n", "variance"], scan)
    _write_manifest(argv, out, [out], seed)
    return EXIT_OK


def cmd_compare(args, argv) -> int:
    with_nn = [read_metrics(p) for p in args.with_paths]
    without_nn = [read_metrics(p) for p in args.without_paths]
    if not with_nn or not without_nn:
        raise UsageError("both --with and --without need at least one metrics file")
    rows = compare(with_nn, without_nn)
    out = Path(args.out)
    write_csv(out, comparison_header(), comparison_records(rows))
    text = format_table(rows) + "\n"
    out.with_suffix(".txt").write_text(text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_replay(args, argv) -> int:
    manifest = read_json(args.manifest)
    if "argv" not in manifest:
        raise DataError(f"{args.manifest}: no argv recorded")
    return main(manifest["argv"])


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="geogate", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"geogate {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("train", help="train one circuit and record its angle trajectory")
    t.add_argument("--qubits", type=int, required=True)
    t.add_argument("--mode", choices=("direct", "nn"), required=True)
    t.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    t.add_argument("--iters", type=int, default=500)
    t.add_argument("--lr", type=float, default=0.05)
    t.add_argument("--optimizer", choices=("gd", "adam"), default="gd")
    t.add_argument("--layers", type=int, default=None, help="default: number of qubits")
    t.add_argument("--axes", default="Y", help="rotation axis, or comma list with one per layer")
    t.add_argument("--entangler", choices=("ring", "line"), default="ring")
    t.add_argument("--nn-input", type=int, default=NetworkConfig.input_dim)
    t.add_argument("--nn-hidden", type=int, default=NetworkConfig.hidden_dim)
    t.add_argument("--nn-output-gain", type=float, default=NetworkConfig.output_gain)
    t.add_argument("--nn-lr-scale", type=float, default=NetworkConfig.lr_scale)
    t.add_argument("--save-weights", action="store_true")
    t.add_argument("--out", required=True)
    t.set_defaults(func=cmd_train)

    a = sub.add_parser("analyze", help="velocity/acceleration/energy/length metrics as JSON")
    a.add_argument("--trace", required=True)
    a.add_argument("--dt", type=_positive_int, default=5)
    a.add_argument("--normalize", choices=("auto", "on", "off"), default="auto")
    a.add_argument("--signed", action="store_true", help="reduce signed v, a instead of |v|, |a|")
    a.add_argument("--ddof", type=int, choices=(0, 1), default=0)
    a.add_argument("--out", required=True)
    a.set_defaults(func=cmd_analyze, reads_data=True)

    g = sub.add_parser("groupmap", help="group-mapped value y = Re tr(exp(theta G)) / 2 series")
    g.add_argument("--trace", required=True)
    g.add_argument("--column", type=int, default=0)
    g.add_argument("--axis", choices=("x", "y", "z", "X", "Y", "Z"), default="z")
    g.add_argument("--stride", default="auto")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_groupmap, reads_data=True)

    c = sub.add_parser("curves", help="velocity and acceleration series of one column")
    c.add_argument("--trace", required=True)
    c.add_argument("--column", type=int, default=0)
    c.add_argument("--dt", type=_positive_int, default=5)
    c.add_argument("--normalize", choices=("auto", "on", "off"), default="auto")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_curves, reads_data=True)

    d = sub.add_parser("deviation", help="geodesic deviation of one lifted column")
    d.add_argument("--trace", required=True)
    d.add_argument("--column", type=int, default=0)
    d.add_argument("--axis", choices=("x", "y", "z", "X", "Y", "Z"), default="z")
    d.add_argument("--out", required=True)
    d.set_defaults(func=cmd_deviation, reads_data=True)

    b = sub.add_parser("bloch", help="Bloch-sphere sweep of a rotation gate")
    b.add_argument("--gate", choices=("rx", "ry", "rz"), required=True)
    b.add_argument("--state", choices=("zero", "plus"), default="zero")
    b.add_argument("--samples", type=int, default=100)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_bloch)

    v = sub.add_parser("plateau", help="gradient variance versus qubit count")
    v.add_argument("--qubits", type=_qubit_range, default=_qubit_range("2..9"))
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--axes", default="Y")
    v.add_argument("--entangler", choices=("ring", "line"), default="ring")
    v.add_argument("--all-components", action="store_true")
    v.add_argument("--out", required=True)
    v.set_defaults(func=cmd_plateau)

    m = sub.add_parser("compare", help="with/without-network comparison table")
    m.add_argument("--with", dest="with_paths", nargs="+", required=True)
    m.add_argument("--without", dest="without_paths", nargs="+", required=True)
    m.add_argument("--out", required=True)
    m.set_defaults(func=cmd_compare, reads_data=True)

    r = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    r.add_argument("--manifest", required=True)
    r.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, argv)
    except UsageError as exc:
        print(f"geogate {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LogBranchError as exc:
        print(f"geogate {args.command}: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DataError as exc:
        print(f"geogate {args.command}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"geogate {args.command}: cannot write output: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        if getattr(args, "reads_data", False):
            print(f"geogate {args.command}: data error: {exc}", file=sys.stderr)
            return EXIT_DATA
        print(f"geogate {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
