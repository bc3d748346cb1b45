"""Table-style comparison of the with-network and without-network arms."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .analysis import TrajectoryMetrics

METRIC_FIELDS = ("v_bar", "a_bar", "energy", "length", "tau_v_percent", "tau_a_percent")
METRIC_LABELS = ("v_bar", "a_bar", "E", "L", "tau_V", "tau_A")
ARMS = ("with", "without")


def auto_stride(num_qubits: int) -> int:
    """Plot sampling stride by qubit count: 25 for 9, 20 for 8, 10 for 6-7, 5 for 4-5.

    Smaller systems use 5, larger ones 25.
    """
    if num_qubits >= 9:
        return 25
    if num_qubits == 8:
        return 20
    if num_qubits >= 6:
        return 10
    return 5


def _median(values) -> float | None:
    vals = [v for v in values if v is not None]
    return float(np.median(vals)) if vals else None


@dataclass
class ComparisonRow:
    qubits: int | None
    with_nn: dict
    without_nn: dict
    runs_with: int
    runs_without: int

    @property
    def energy_ratio(self) -> float | None:
        return _ratio(self.with_nn["energy"], self.without_nn["energy"])

    @property
    def length_ratio(self) -> float | None:
        return _ratio(self.with_nn["length"], self.without_nn["length"])


def _ratio(a, b) -> float | None:
    if a is None or b is None:
        return None
    if b == 0:
        return 1.0 if a == 0 else float("inf")
    return a / b


def _group(metrics: list[TrajectoryMetrics]) -> dict:
    out = defaultdict(list)
    for m in metrics:
        out[m.num_qubits].append(m)
    return out


def compare(with_nn: list[TrajectoryMetrics], without_nn: list[TrajectoryMetrics]) -> list[ComparisonRow]:
    """Per-qubit-count medians of every metric for both arms."""
    if not with_nn or not without_nn:
        raise ValueError("both arms need at least one metrics file")
    gw, go = _group(with_nn), _group(without_nn)
    rows = []
    for q in sorted(set(gw) | set(go), key=lambda v: (v is None, v)):
        if q not in gw or q not in go:
            missing = "with" if q not in gw else "without"
            raise ValueError(f"no '{missing}' runs for {q} qubits")
        med = lambda ms: {f: _median(getattr(m, f) for m in ms) for f in METRIC_FIELDS}
        rows.append(ComparisonRow(q, med(gw[q]), med(go[q]), len(gw[q]), len(go[q])))
    return rows


def comparison_header() -> list[str]:
    cols = ["qubits"]
    for arm in ARMS:
        cols += [f"{arm}_{f}" for f in METRIC_FIELDS]
    return cols + ["E_ratio", "L_ratio", "runs_with", "runs_without"]


def comparison_records(rows: list[ComparisonRow]) -> list[list]:
    out = []
    for r in rows:
        rec = ["" if r.qubits is None else int(r.qubits)]
        for arm in (r.with_nn, r.without_nn):
            rec += ["" if arm[f] is None else arm[f] for f in METRIC_FIELDS]
        rec += ["" if v is None else v for v in (r.energy_ratio, r.length_ratio)]
        rec += [r.runs_with, r.runs_without]
        out.append(rec)
    return out


def _cell(v, pct=False) -> str:
    if v is None:
        return "-"
    return f"{v:.2f}%" if pct else f"{v:.3g}"


def format_table(rows: list[ComparisonRow]) -> str:
    """Aligned text with two rows per qubit count, one per arm."""
    header = ["Qubits", "Label", *METRIC_LABELS, "E_ratio", "L_ratio"]
    lines = [header]
    for r in rows:
        for label, arm in (("With NN", r.with_nn), ("Without NN", r.without_nn)):
            cells = [str(r.qubits) if label == "With NN" else "", label]
            cells += [_cell(arm[f], pct=f.startswith("tau")) for f in METRIC_FIELDS]
            if label == "With NN":
                cells += [_cell(r.energy_ratio), _cell(r.length_ratio)]
            else:
                cells += ["", ""]
            lines.append(cells)
    widths = [max(len(row[i]) for row in lines) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in lines)
