"""Geometric diagnostics for recorded angle trajectories.

Velocities and accelerations are central differences with an integer index
offset ``delta_t``; endpoints lacking both neighbours are dropped.  Summary
statistics follow the table layout used for the with/without-network
comparison: mean |v|, mean |a|, energy, path length and the relative standard
deviations of |v| and |a| (in percent).
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .lie import AlgebraElement, GroupElement, axis_index, exp_map, killing_norm, log_map
from .train import ParameterTrajectory

DEFAULT_DELTA_T = 5


class UndefinedRSDError(ValueError):
    """The series has zero mean, so sigma / mu is undefined."""


def normalize_trace(traj: ParameterTrajectory) -> ParameterTrajectory:
    """Map every column affinely onto [-1, 1]; constant columns become zeros.

    Columns whose range is already exactly [-1, 1] are left untouched, which
    makes the map idempotent bit-for-bit.
    """
    rows = traj.rows
    if rows.shape[0] < 2:
        raise ValueError("normalisation needs at least two recorded iterations")
    lo, hi = rows.min(axis=0), rows.max(axis=0)
    span = hi - lo
    out = np.zeros_like(rows)
    for j in range(rows.shape[1]):
        if lo[j] == -1.0 and hi[j] == 1.0:
            out[:, j] = rows[:, j]
        elif span[j] > 0:
            out[:, j] = 2 * (rows[:, j] - lo[j]) / span[j] - 1
    return traj.replace(rows=out, normalized=True)


def central_velocity(series, delta_t: int) -> np.ndarray:
    """``(x[k+dt] - x[k-dt]) / (2 dt)`` for every k with both neighbours."""
    x = np.asarray(series, dtype=float)
    if isinstance(delta_t, bool) or not isinstance(delta_t, (int, np.integer)) or delta_t < 1:
        raise ValueError(f"delta_t must be a positive integer, got {delta_t!r}")
    if x.ndim != 1 or x.size <= 2 * delta_t:
        raise ValueError(
            f"series of length {x.size} too short for central differences with delta_t={delta_t}"
        )
    return (x[2 * delta_t:] - x[:-2 * delta_t]) / (2 * delta_t)


def central_acceleration(velocity, delta_t: int) -> np.ndarray:
    return central_velocity(velocity, delta_t)


def rsd(series, ddof: int = 0) -> float:
    """Relative standard deviation ``sigma / mu`` in percent (population sigma by default)."""
    x = np.asarray(series, dtype=float)
    if x.size == 0:
        raise ValueError("rsd of an empty series")
    mu = x.mean()
    if abs(mu) <= 1e-300:
        raise UndefinedRSDError("relative standard deviation undefined for a zero-mean series")
    return float(100.0 * x.std(ddof=ddof) / mu)


def energy_and_length(series) -> tuple[float, float]:
    """Energy ``mean(x**2)`` and path length ``sum |x[i+1] - x[i]|``."""
    x = np.asarray(series, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("energy/length need a series of at least two points")
    return float(np.mean(x**2)), float(np.sum(np.abs(np.diff(x))))


@dataclass
class ColumnMetrics:
    v_bar: float
    a_bar: float
    energy: float
    length: float
    tau_v_percent: float | None
    tau_a_percent: float | None


@dataclass
class TrajectoryMetrics:
    v_bar: float
    a_bar: float
    energy: float
    length: float
    tau_v_percent: float | None
    tau_a_percent: float | None
    delta_t: int
    normalized: bool
    per_parameter: list[ColumnMetrics] = field(default_factory=list)
    num_qubits: int | None = None
    mode: str | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "TrajectoryMetrics":
        d = dict(d)
        d["per_parameter"] = [ColumnMetrics(**c) for c in d.get("per_parameter", [])]
        return cls(**d)


def _tau(series, absolute: bool, ddof: int) -> float | None:
    try:
        return rsd(np.abs(series) if absolute else series, ddof=ddof)
    except UndefinedRSDError:
        return None


def column_metrics(theta, delta_t: int = DEFAULT_DELTA_T, absolute: bool = True,
                   ddof: int = 0) -> ColumnMetrics:
    v = central_velocity(theta, delta_t)
    a = central_acceleration(v, delta_t)
    reduce_v = np.abs(v) if absolute else v
    reduce_a = np.abs(a) if absolute else a
    energy, length = energy_and_length(theta)
    return ColumnMetrics(
        v_bar=float(reduce_v.mean()), a_bar=float(reduce_a.mean()),
        energy=energy, length=length,
        tau_v_percent=_tau(v, absolute, ddof), tau_a_percent=_tau(a, absolute, ddof),
    )


def _mean_defined(values) -> float | None:
    vals = [v for v in values if v is not None]
    return float(np.mean(vals)) if vals else None


def analyze(traj: ParameterTrajectory, delta_t: int = DEFAULT_DELTA_T, normalize="auto",
            absolute: bool = True, ddof: int = 0) -> TrajectoryMetrics:
    """Per-column and column-averaged trajectory statistics.

    ``normalize`` is ``True``, ``False`` or ``"auto"`` (normalise direct-mode
    traces only).  ``absolute`` reduces |v| and |a| rather than signed values.
    A column whose |v| (or |a|) has zero mean reports ``None`` for the RSD.
    """
    if normalize == "auto":
        normalize = traj.mode == "direct"
    if traj.rows.shape[0] <= 4 * delta_t:
        raise ValueError(
            f"trajectory with {traj.rows.shape[0]} rows too short for delta_t={delta_t} "
            f"(need more than {4 * delta_t})"
        )
    t = normalize_trace(traj) if normalize and not traj.normalized else traj
    cols = [column_metrics(t.rows[:, j], delta_t, absolute, ddof) for j in range(t.num_params)]
    return TrajectoryMetrics(
        v_bar=float(np.mean([c.v_bar for c in cols])),
        a_bar=float(np.mean([c.a_bar for c in cols])),
        energy=float(np.mean([c.energy for c in cols])),
        length=float(np.mean([c.length for c in cols])),
        tau_v_percent=_mean_defined(c.tau_v_percent for c in cols),
        tau_a_percent=_mean_defined(c.tau_a_percent for c in cols),
        delta_t=int(delta_t), normalized=bool(t.normalized), per_parameter=cols,
        num_qubits=traj.num_qubits, mode=traj.mode, seed=traj.seed,
    )


def velocity_acceleration(traj: ParameterTrajectory, column: int, delta_t: int = DEFAULT_DELTA_T,
                          normalize="auto") -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Iteration index, velocity and acceleration series for one column.

    The index is aligned with the acceleration; velocity is cropped to match.
    """
    if normalize == "auto":
        normalize = traj.mode == "direct"
    t = normalize_trace(traj) if normalize and not traj.normalized else traj
    _check_column(t, column)
    v = central_velocity(t.rows[:, column], delta_t)
    a = central_acceleration(v, delta_t)
    k = np.arange(2 * delta_t, 2 * delta_t + a.size)
    return k, v[delta_t:-delta_t], a


@dataclass(frozen=True, eq=False)
class GroupMapSeries:
    iterations: np.ndarray
    values: np.ndarray
    generator_axis: str
    stride: int


def _check_column(traj: ParameterTrajectory, column) -> int:
    if isinstance(column, bool) or not isinstance(column, (int, np.integer)) \
            or not 0 <= column < traj.num_params:
        raise IndexError(f"column {column!r} out of range for {traj.num_params} parameters")
    return int(column)


def _generator(axis) -> np.ndarray:
    coeffs = np.zeros(3)
    coeffs[axis_index(axis)] = 1.0
    return coeffs


def lift(theta: float, axis) -> np.ndarray:
    """``exp(theta * G)`` for the unit basis generator of ``axis``, as a matrix."""
    return exp_map(AlgebraElement.from_coeffs(theta * _generator(axis))).matrix


def group_map_series(traj: ParameterTrajectory, column: int, axis="Z",
                     stride: int = 1) -> GroupMapSeries:
    """Half the real trace of the lifted group element, sampled every ``stride`` iterations."""
    column = _check_column(traj, column)
    if isinstance(stride, bool) or not isinstance(stride, (int, np.integer)) or stride < 1:
        raise ValueError(f"stride must be a positive integer, got {stride!r}")
    ks = np.arange(0, traj.rows.shape[0], stride)
    ys = np.array([np.trace(lift(th, axis)).real / 2 for th in traj.rows[ks, column]])
    return GroupMapSeries(ks, np.clip(ys, -1.0, 1.0), "XYZ"[axis_index(axis)], int(stride))


def discrete_log_velocities(traj: ParameterTrajectory, column: int, axis="Z") -> list[AlgebraElement]:
    """``log(U_k^-1 U_{k+1})`` along the lifted column; raises ``LogBranchError`` at -I."""
    column = _check_column(traj, column)
    lifted = [GroupElement(lift(th, axis)) for th in traj.rows[:, column]]
    return [log_map(u.inv() @ w) for u, w in zip(lifted[:-1], lifted[1:])]


def geodesic_deviation(traj: ParameterTrajectory, column: int, axis="Z") -> float:
    """Population std of the Killing norms of consecutive discrete velocities.

    Zero exactly when the lifted samples are evenly spaced along a geodesic.
    """
    if traj.rows.shape[0] < 3:
        raise ValueError("geodesic deviation needs at least three recorded iterations")
    norms = [killing_norm(w) for w in discrete_log_velocities(traj, column, axis)]
    return float(np.std(norms))
