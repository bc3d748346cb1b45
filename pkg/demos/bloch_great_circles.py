"""
Single-qubit rotations as great circles
=======================================

Each rotation gate sweeps a pure state around a great circle of the Bloch
sphere. Rx and Ry start from |0>, Rz starts from |+> so that it moves at all.
The script writes one ``t,x,y,z`` CSV per gate, ready for any 3-D plotter.
"""
import sys
from pathlib import Path

import numpy as np

from geogate.sim import bloch_sweep, plus_state, zero_state

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)

thetas = np.linspace(0, 2 * np.pi, 181)

###############################################################################
# Sweep the three gates and check the geometry on the fly.
for axis, start, label, normal in (("X", zero_state(1), "|0>", 0),
                                   ("Y", zero_state(1), "|0>", 1),
                                   ("Z", plus_state(), "|+>", 2)):
    xyz = bloch_sweep(axis, start, thetas)
    radius = np.linalg.norm(xyz, axis=1)
    print(f"R{axis.lower()} on {label}: max |r - 1| = {np.abs(radius - 1).max():.1e}, "
          f"max |{'xyz'[normal]}| = {np.abs(xyz[:, normal]).max():.1e}")
    np.savetxt(out / f"bloch_r{axis.lower()}.csv", np.column_stack([thetas, xyz]),
               delimiter=",", header="t,x,y,z", comments="")

###############################################################################
# A quarter turn of Rz takes |+> to the +y pole: exp(-i t Z / 2) rotates the
# Bloch vector counter-clockwise about z.
print("Rz(pi/2)|+> ->", np.round(bloch_sweep("Z", plus_state(), [np.pi / 2])[0], 12))

###############################################################################
# To draw it (matplotlib is not a dependency of the package)::
#
#     import matplotlib.pyplot as plt
#     ax = plt.figure().add_subplot(projection="3d")
#     for g in "xyz":
#         d = np.loadtxt(f"demo_out/bloch_r{g}.csv", delimiter=",", skiprows=1)
#         ax.plot(d[:, 1], d[:, 2], d[:, 3], label=f"R{g}")
