"""Small n-qubit statevector simulator and the layered rotation/CNOT ansatz.

Basis ordering: qubit 0 is the least significant bit of the basis index, so
amplitude ``b`` has qubit ``q`` in state ``(b >> q) & 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lie import GROUP_TOL, PAULI_X, PAULI_Y, PAULI_Z, GroupElement, axis_index, rotation_gate

MAX_QUBITS = 12
ENTANGLERS = ("ring", "line")
_PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray
    num_qubits: int

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2**self.num_qubits:
            raise ValueError(
                f"{self.num_qubits} qubits need {2**self.num_qubits} amplitudes, got {amps.size}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def _check_n(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"number of qubits must be an integer in [1, {MAX_QUBITS}], got {n!r}")
    return int(n)


def _check_qubit(q, n: int) -> int:
    if not isinstance(q, (int, np.integer)) or not 0 <= q < n:
        raise IndexError(f"qubit index {q!r} out of range for {n} qubits")
    return int(q)


def zero_state(n: int) -> StateVector:
    n = _check_n(n)
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = 1.0
    return StateVector(amps, n)


def plus_state() -> StateVector:
    return StateVector(np.array([1, 1]) / np.sqrt(2), 1)


# -- batched kernels -------------------------------------------------------
# States are (batch, 2**n) arrays; gates are (batch, 2, 2) or (2, 2).

def _apply_1q(states: np.ndarray, gates: np.ndarray, qubit: int, n: int) -> np.ndarray:
    batch = states.shape[0]
    s = states.reshape(batch, 2 ** (n - 1 - qubit), 2, 2**qubit)
    g = np.broadcast_to(gates, (batch, 2, 2))[:, :, :, None, None]
    s0, s1 = s[:, :, 0], s[:, :, 1]
    out = np.stack((g[:, 0, 0] * s0 + g[:, 0, 1] * s1, g[:, 1, 0] * s0 + g[:, 1, 1] * s1), axis=2)
    return out.reshape(batch, 2**n)


@lru_cache(maxsize=None)
def _cnot_perm(n: int, pairs: tuple[tuple[int, int], ...]) -> np.ndarray:
    """Gather index realizing the CNOT sequence ``pairs`` as ``new = old[perm]``."""
    perm = np.arange(2**n)
    for control, target in pairs:
        idx = np.arange(2**n)
        src = np.where((idx >> control) & 1, idx ^ (1 << target), idx)
        perm = perm[src]
    perm.setflags(write=False)
    return perm


def _rotation_matrices(axis: int, thetas: np.ndarray) -> np.ndarray:
    """Vectorised ``cos(t/2) I - i sin(t/2) P``, matching ``rotation_gate``.

    Y rotations come back real so all-Y circuits can run in real arithmetic.
    """
    half = np.asarray(thetas, dtype=float) / 2
    c, s = np.cos(half), np.sin(half)
    if axis == 1:
        return np.stack((np.stack((c, -s), -1), np.stack((s, c), -1)), -2)
    return c[:, None, None] * np.eye(2) - 1j * s[:, None, None] * _PAULIS[axis]


@lru_cache(maxsize=None)
def _parity_signs(n: int, qubits: tuple[int, ...]) -> np.ndarray:
    """+1/-1 eigenvalues of the Z-string on ``qubits`` for every basis index."""
    idx = np.arange(2**n)
    parity = np.zeros_like(idx)
    for q in qubits:
        parity ^= (idx >> q) & 1
    signs = 1.0 - 2.0 * parity
    signs.setflags(write=False)
    return signs


# -- public single-state operations ----------------------------------------

def apply_single_qubit(state: StateVector, gate: GroupElement, qubit: int) -> StateVector:
    n = state.num_qubits
    qubit = _check_qubit(qubit, n)
    m = gate.matrix if isinstance(gate, GroupElement) else np.asarray(gate, dtype=complex)
    out = _apply_1q(state.amplitudes[None, :], m, qubit, n)
    return StateVector(out[0], n)


def apply_cnot(state: StateVector, control: int, target: int) -> StateVector:
    n = state.num_qubits
    control, target = _check_qubit(control, n), _check_qubit(target, n)
    if control == target:
        raise ValueError("CNOT control and target must differ")
    perm = _cnot_perm(n, ((control, target),))
    return StateVector(state.amplitudes[perm], n)


def expectation_zz(state: StateVector, q0: int, q1: int) -> float:
    n = state.num_qubits
    q0, q1 = _check_qubit(q0, n), _check_qubit(q1, n)
    if q0 == q1:
        raise ValueError("ZZ expectation needs two distinct qubits")
    return float(np.dot(_parity_signs(n, (q0, q1)), state.probabilities()))


def bloch_coordinates(state: StateVector) -> tuple[float, float, float]:
    """``(<X>, <Y>, <Z>)`` of a single-qubit state."""
    if state.num_qubits != 1:
        raise ValueError(f"Bloch coordinates need a 1-qubit state, got {state.num_qubits}")
    a0, a1 = state.amplitudes
    cross = np.conj(a0) * a1
    return float(2 * cross.real), float(2 * cross.imag), float(abs(a0) ** 2 - abs(a1) ** 2)


# -- ansatz ----------------------------------------------------------------

@dataclass(frozen=True)
class AnsatzConfig:
    """Layered ansatz: one rotation per qubit per layer, then CNOT entanglers.

    ``num_layers`` defaults to ``num_qubits``; ``rotation_axis_schedule`` holds
    one axis per layer (a single axis string is broadcast to every layer).
    """

    num_qubits: int
    num_layers: int | None = None
    rotation_axis_schedule: tuple[str, ...] | str = "Y"
    entangler: str = "ring"
    observable: tuple[int, ...] | None = None

    def __post_init__(self):
        n = _check_n(self.num_qubits)
        layers = n if self.num_layers is None else self.num_layers
        if isinstance(layers, bool) or not isinstance(layers, (int, np.integer)) or layers < 1:
            raise ValueError(f"num_layers must be a positive integer, got {layers!r}")
        object.__setattr__(self, "num_layers", int(layers))
        sched = self.rotation_axis_schedule
        if isinstance(sched, str):
            sched = (sched,) * layers
        sched = tuple("XYZ"[axis_index(a)] for a in sched)
        if len(sched) != layers:
            raise ValueError(f"axis schedule has {len(sched)} entries for {layers} layers")
        object.__setattr__(self, "rotation_axis_schedule", sched)
        if self.entangler not in ENTANGLERS:
            raise ValueError(f"entangler must be one of {ENTANGLERS}, got {self.entangler!r}")
        obs = ((0, 1) if n > 1 else (0,)) if self.observable is None else tuple(self.observable)
        if not obs or len(set(obs)) != len(obs) or not all(0 <= q < n for q in obs):
            raise ValueError(f"observable qubits {obs} invalid for {n} qubits")
        object.__setattr__(self, "observable", tuple(int(q) for q in obs))

    @property
    def parameter_count(self) -> int:
        return self.num_qubits * self.num_layers

    def entangler_pairs(self) -> tuple[tuple[int, int], ...]:
        n = self.num_qubits
        pairs = tuple((q, q + 1) for q in range(n - 1))
        if self.entangler == "ring" and n > 1:
            pairs += ((n - 1, 0),)
        return pairs


def _check_params(params, config: AnsatzConfig) -> np.ndarray:
    p = np.asarray(params, dtype=float)
    if p.shape[-1] != config.parameter_count:
        raise ValueError(
            f"expected {config.parameter_count} parameters "
            f"({config.num_qubits} qubits x {config.num_layers} layers), got {p.shape[-1]}"
        )
    return p


def ansatz_states(params_batch, config: AnsatzConfig) -> np.ndarray:
    """Run the ansatz for every row of ``params_batch``; returns (batch, 2**n)."""
    p = np.atleast_2d(_check_params(params_batch, config))
    n, batch = config.num_qubits, p.shape[0]
    real = all(a == "Y" for a in config.rotation_axis_schedule)
    states = np.zeros((batch, 2**n), dtype=float if real else complex)
    states[:, 0] = 1.0
    perm = _cnot_perm(n, config.entangler_pairs())
    for layer, axis in enumerate(config.rotation_axis_schedule):
        ax = axis_index(axis)
        for q in range(n):
            gates = _rotation_matrices(ax, p[:, layer * n + q])
            states = _apply_1q(states, gates, q, n)
        states = states[:, perm]
    return states


def _apply_1q_inplace(states: np.ndarray, gates: np.ndarray, qubit: int, n: int) -> None:
    s = states.reshape(states.shape[0], 2 ** (n - 1 - qubit), 2, 2**qubit)
    g = gates[:, :, :, None, None]
    s0, s1 = s[:, :, 0], s[:, :, 1]
    t0 = s0.copy()
    s0 *= g[:, 0, 0]
    s0 += g[:, 0, 1] * s1
    s1 *= g[:, 1, 1]
    s1 += g[:, 1, 0] * t0


def shifted_costs(params, config: AnsatzConfig, indices, shift: float) -> tuple[np.ndarray, np.ndarray]:
    """Costs with ``params[j] +/- shift`` for each ``j`` in ``indices``.

    Equivalent to ``cost_batch`` on the explicitly shifted vectors, but each
    shifted circuit branches off the unshifted one at gate ``j`` so the common
    prefix is simulated once.
    """
    p = _check_params(params, config)
    idx = np.asarray(indices, dtype=int)
    order = np.argsort(idx, kind="stable")
    n, m, k = config.num_qubits, config.parameter_count, len(idx)
    real = all(a == "Y" for a in config.rotation_axis_schedule)
    # row 0 is unshifted; rows 2i+1 / 2i+2 carry +shift / -shift of idx[order[i]]
    states = np.zeros((2 * k + 1, 2**n), dtype=float if real else complex)
    states[0, 0] = 1.0
    angles = np.full(2 * k + 1, np.nan)
    branch_at = np.full(m, -1)
    branch_at[idx[order]] = np.arange(k)
    active = 1
    perm = _cnot_perm(n, config.entangler_pairs())
    for layer, axis in enumerate(config.rotation_axis_schedule):
        ax = axis_index(axis)
        for q in range(n):
            g = layer * n + q
            angles[:active] = p[g]
            if branch_at[g] >= 0:
                states[active:active + 2] = states[0]
                angles[active:active + 2] = p[g] + shift, p[g] - shift
                active += 2
            _apply_1q_inplace(states[:active], _rotation_matrices(ax, angles[:active]), q, n)
        states[:active] = states[:active, perm]
    values = (np.abs(states) ** 2) @ _parity_signs(n, config.observable)
    plus, minus = np.empty(k), np.empty(k)
    plus[order], minus[order] = values[1::2], values[2::2]
    return plus, minus


def apply_ansatz(params, config: AnsatzConfig) -> StateVector:
    p = _check_params(params, config)
    if p.ndim != 1:
        raise ValueError("apply_ansatz takes a single parameter vector")
    return StateVector(ansatz_states(p, config)[0], config.num_qubits)


def cost_batch(params_batch, config: AnsatzConfig) -> np.ndarray:
    """Vectorised ``cost`` over rows of ``params_batch``."""
    states = ansatz_states(params_batch, config)
    signs = _parity_signs(config.num_qubits, config.observable)
    return (np.abs(states) ** 2) @ signs


def cost(params, config: AnsatzConfig) -> float:
    """``<Z_0 Z_1>`` after the ansatz.

    The observable is a Z-string on ``config.observable``; a single qubit
    (the only choice for 1-qubit configs) gives ``<Z_q>``.
    """
    state = apply_ansatz(params, config)
    if len(config.observable) == 2:
        return expectation_zz(state, *config.observable)
    return float(np.dot(_parity_signs(state.num_qubits, config.observable), state.probabilities()))


def bloch_sweep(axis, start: StateVector, thetas) -> np.ndarray:
    """Bloch vectors of ``R_axis(theta)|start>`` for each theta; shape (len, 3)."""
    out = np.empty((len(thetas), 3))
    for i, t in enumerate(thetas):
        out[i] = bloch_coordinates(apply_single_qubit(start, rotation_gate(axis, t), 0))
    return out


def is_normalized(state: StateVector, tol: float = GROUP_TOL) -> bool:
    return abs(state.norm() - 1) <= tol
