"""
Group-mapped values, velocity and acceleration
==============================================

Lift one trained angle into SU(2) through exp(theta G) and read the bounded
value Re tr / 2 = cos(theta). Then look at the central-difference velocity and
acceleration of the same column in both training modes.
"""
import sys
from pathlib import Path

import numpy as np

from geogate.analysis import group_map_series, velocity_acceleration
from geogate.report import auto_stride
from geogate.sim import AnsatzConfig
from geogate.train import TrainConfig, train

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)
n = 5

for mode in ("nn", "direct"):
    traj = train(TrainConfig(AnsatzConfig(n), 500, mode=mode, seed=0))

    ###########################################################################
    # Sampled every ``auto_stride(n)`` iterations, as in the plotting recipe.
    gm = group_map_series(traj, 0, "Z", auto_stride(n))
    np.savetxt(out / f"groupmap_{mode}.csv", np.column_stack([gm.iterations, gm.values]),
               delimiter=",", header="k,y", comments="")
    print(f"{mode:6s} y range [{gm.values.min():+.3f}, {gm.values.max():+.3f}], "
          f"std {gm.values.std():.2e}")

    ###########################################################################
    # Velocity and acceleration at dt = 5 on the normalized (direct) or raw
    # (network) trace.
    k, v, a = velocity_acceleration(traj, 0, 5)
    np.savetxt(out / f"curves_{mode}.csv", np.column_stack([k, v, a]),
               delimiter=",", header="k,v,a", comments="")
    print(f"{mode:6s} mean|v| {np.abs(v).mean():.2e}, mean|a| {np.abs(a).mean():.2e}")
