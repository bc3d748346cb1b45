"""Lie-group diagnostics for variational-circuit parameter trajectories.

Single-qubit gates are read as SU(2) elements; recorded training angles are
lifted through the exponential map and scored by how closely they follow a
geodesic (velocity, acceleration, energy, path length, RSD).
"""
from .analysis import (
    GroupMapSeries, TrajectoryMetrics, UndefinedRSDError, analyze, central_acceleration,
    central_velocity, energy_and_length, geodesic_deviation, group_map_series, normalize_trace,
    rsd,
)
from .lie import (
    AlgebraElement, GeodesicCurve, GroupElement, LogBranchError, adjoint, exp_map,
    geodesic_sample, killing_inner, lie_bracket, log_map, pauli_basis, rotation_gate,
)
from .nn import NetworkWeights, network_backward, network_forward, network_init
from .sim import (
    AnsatzConfig, StateVector, apply_ansatz, apply_cnot, apply_single_qubit, bloch_coordinates,
    cost, expectation_zz, zero_state,
)
from .train import (
    NetworkConfig, ParameterTrajectory, TrainConfig, gradient_variance_scan,
    parameter_shift_grad, train, train_direct, train_nn,
)

__version__ = "0.1.0"
