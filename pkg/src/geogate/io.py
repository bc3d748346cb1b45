"""CSV / JSON interchange for trajectories, metrics and figure data.

Floats are written with ``repr`` so every file round-trips losslessly and is
byte-identical across runs.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .analysis import TrajectoryMetrics
from .train import ParameterTrajectory


class DataError(ValueError):
    """Malformed or missing input data."""


def _fmt(x) -> str:
    return repr(float(x))


def sidecar_path(trace_path) -> Path:
    p = Path(trace_path)
    return p.with_name(p.stem + ".meta.json")


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([v if isinstance(v, (str, int, np.integer)) else _fmt(v) for v in row])
    return path


def write_json(path, obj) -> Path:
    path = Path(path)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n")
    return path


def _json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def read_json(path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise DataError(f"{path}: file not found") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


# -- trajectories ----------------------------------------------------------

def trajectory_metadata(traj: ParameterTrajectory, config=None) -> dict:
    meta = {
        "mode": traj.mode,
        "seed": int(traj.seed),
        "qubits": int(traj.num_qubits),
        "layers": None if traj.num_layers is None else int(traj.num_layers),
        "iterations": traj.iteration_count,
        "parameters": traj.num_params,
    }
    if config is not None:
        meta.update(
            optimizer=config.optimizer,
            learning_rate=float(config.learning_rate),
            rotation_axis_schedule=list(config.ansatz.rotation_axis_schedule),
            entangler=config.ansatz.entangler,
            observable=list(config.ansatz.observable),
        )
        if config.mode == "nn":
            net = config.network
            meta["network"] = {
                "input_dim": net.input_dim, "hidden_dim": net.hidden_dim,
                "output_gain": net.output_gain, "lr_scale": net.lr_scale,
            }
    return meta


def write_trajectory(path, traj: ParameterTrajectory, config=None) -> tuple[Path, Path]:
    """Write ``iter,theta_0,...`` CSV plus its ``.meta.json`` sidecar."""
    header = ["iter"] + [f"theta_{j}" for j in range(traj.num_params)]
    rows = ([k] + list(r) for k, r in enumerate(traj.rows))
    csv_path = write_csv(path, header, rows)
    meta_path = write_json(sidecar_path(path), trajectory_metadata(traj, config))
    return csv_path, meta_path


def read_trajectory(path) -> ParameterTrajectory:
    """Load a trajectory CSV; metadata comes from the sidecar when present."""
    path = Path(path)
    try:
        fh = path.open(newline="")
    except FileNotFoundError as exc:
        raise DataError(f"{path}: file not found") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header:
            raise DataError(f"{path}: empty file, expected header 'iter,theta_0,...'")
        expected = ["iter"] + [f"theta_{j}" for j in range(len(header) - 1)]
        if len(header) < 2 or [h.strip() for h in header] != expected:
            raise DataError(f"{path}: line 1: bad header {','.join(header)!r}, "
                            f"expected 'iter,theta_0,...'")
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            if len(rec) != len(header):
                raise DataError(f"{path}: line {lineno}: expected {len(header)} fields, got {len(rec)}")
            try:
                values = [float(v) for v in rec[1:]]
                int(rec[0])
            except ValueError as exc:
                raise DataError(f"{path}: line {lineno}: {exc}") from exc
            if not np.all(np.isfinite(values)):
                raise DataError(f"{path}: line {lineno}: non-finite value")
            rows.append(values)
    if not rows:
        raise DataError(f"{path}: no data rows")
    meta = read_json(sidecar_path(path)) if sidecar_path(path).exists() else {}
    return ParameterTrajectory(
        rows=np.array(rows), mode=meta.get("mode", "unknown"),
        num_qubits=meta.get("qubits"), seed=meta.get("seed"), num_layers=meta.get("layers"),
        meta={"sidecar": meta},
    )


# -- metrics ---------------------------------------------------------------

def write_metrics(path, metrics: TrajectoryMetrics) -> Path:
    return write_json(path, metrics.to_dict())


def read_metrics(path) -> TrajectoryMetrics:
    d = read_json(path)
    try:
        return TrajectoryMetrics.from_dict(d)
    except TypeError as exc:
        raise DataError(f"{path}: not a metrics file ({exc})") from exc
