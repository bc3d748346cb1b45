"""
Geodesics on SU(2)
==================

Curves U0 exp(t A) are geodesics of the bi-invariant metric. Sampled at equal
steps their discrete log-velocities log(U_k^-1 U_{k+1}) are all the same
algebra element. A trained angle trace is compared against that ideal with
``geodesic_deviation``: the spread of step lengths, zero for a uniform
geodesic.
"""
import numpy as np

from geogate.analysis import geodesic_deviation
from geogate.lie import GeodesicCurve, adjoint, killing_inner, log_map, random_algebra, random_group
from geogate.sim import AnsatzConfig
from geogate.train import ParameterTrajectory, TrainConfig, train

rng = np.random.default_rng(0)

###############################################################################
# Bi-invariance of the Killing form under conjugation.
g, x, y = random_group(rng), random_algebra(rng), random_algebra(rng)
print("<X,Y> =", killing_inner(x, y), " <Ad X, Ad Y> =", killing_inner(adjoint(g, x), adjoint(g, y)))

###############################################################################
# Constant log-velocity along a sampled geodesic.
curve = GeodesicCurve(random_group(rng), random_algebra(rng, scale=0.8))
us = [curve.sample(t) for t in np.linspace(0, 2, 21)]
vel = np.array([log_map(a.inv() @ b).coeffs for a, b in zip(us[:-1], us[1:])])
print("velocity spread:", np.abs(vel - vel[0]).max())

###############################################################################
# Linear traces are geodesics; trained traces are only close to one.
k = np.arange(300.0)
line = ParameterTrajectory(rows=(0.3 + 0.01 * k)[:, None], mode="nn", num_qubits=1, seed=0)
print("linear trace deviation:", geodesic_deviation(line, 0))
for mode in ("nn", "direct"):
    traj = train(TrainConfig(AnsatzConfig(4), 300, mode=mode, seed=1))
    devs = [geodesic_deviation(traj, j) for j in range(traj.num_params)]
    print(f"{mode:6s} mean deviation over columns: {np.mean(devs):.2e}")
