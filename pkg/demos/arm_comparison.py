"""
With and without the generator network
======================================

Train the same circuit twice per seed: once updating the angles directly and
once letting a small MLP emit them. Analyse each trajectory (dt = 5, direct
traces normalized to [-1, 1]) and compare per-qubit medians.

The full recipe (n = 4..9, 10 seeds, 500 iterations) takes about ten minutes
on one core; pass smaller numbers for a quick look::

    python3 demos/arm_comparison.py --qubits 4 5 --seeds 3 --iters 200
"""
import argparse

from geogate.analysis import analyze
from geogate.report import compare, format_table
from geogate.sim import AnsatzConfig
from geogate.train import TrainConfig, train

p = argparse.ArgumentParser()
p.add_argument("--qubits", type=int, nargs="+", default=list(range(4, 10)))
p.add_argument("--seeds", type=int, default=10)
p.add_argument("--iters", type=int, default=500)
args = p.parse_args()

runs = {"nn": [], "direct": []}
for n in args.qubits:
    for seed in range(args.seeds):
        for mode in runs:
            traj = train(TrainConfig(AnsatzConfig(n), args.iters, mode=mode, seed=seed))
            runs[mode].append(analyze(traj, 5))
    print(f"finished n={n}")

###############################################################################
# The table lists medians over seeds. E_ratio and L_ratio below 1 mean the
# network arm moved less and along a shorter path.
rows = compare(runs["nn"], runs["direct"])
print(format_table(rows))
for r in rows:
    print(f"n={r.qubits}: E_ratio={r.energy_ratio:.3g}  L_ratio={r.length_ratio:.3g}")

###############################################################################
# A "representative" run per arm is the one whose length is the median of its
# group; here we just name it.
for mode, ms in runs.items():
    for n in args.qubits:
        group = sorted((m for m in ms if m.num_qubits == n), key=lambda m: m.length)
        rep = group[len(group) // 2]
        print(f"{mode:6s} n={n}: representative seed {rep.seed} (L={rep.length:.3g})")
