"""
Gradient variance versus qubit count
====================================

Random parameter vectors for the layered Ry + ring-CNOT circuit, one gradient
component each, evaluated with the parameter-shift rule. The variance should
fall off roughly exponentially in the number of qubits.
"""
import sys

import numpy as np

from geogate.train import gradient_variance_scan

samples = int(sys.argv[1]) if len(sys.argv) > 1 else 200

scan = gradient_variance_scan(range(2, 10), samples, seed=0)
for n, var in scan:
    print(f"n={n}  Var[dC/dtheta_0] = {var:.3e}")

###############################################################################
# Fit log(Var) = a + b n. A negative slope b is the plateau signature; exp(b)
# is the per-qubit shrink factor.
ns = np.array([n for n, _ in scan], dtype=float)
logv = np.log([v for _, v in scan])
b, a = np.polyfit(ns, logv, 1)
print(f"slope {b:.3f} per qubit, shrink factor {np.exp(b):.3f}")

###############################################################################
# Averaging over every component instead of only the first one gives a
# smoother curve at a higher cost per sample.
for n, var in gradient_variance_scan([2, 4, 6], 50, seed=0, all_components=True):
    print(f"n={n}  mean component variance = {var:.3e}")
