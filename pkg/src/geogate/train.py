"""Training loops for the two parameterisation modes and the gradient-variance scan.

``direct`` optimises the circuit angles themselves.  ``nn`` optimises the
weights of a small perceptron whose output is the angle vector; the circuit
gradient from the parameter-shift rule is pushed through the network by
``network_backward``.  Both record the full angle vector at every iteration.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .nn import NetworkWeights, network_backward, network_forward, network_init
from .sim import AnsatzConfig, cost_batch, shifted_costs

MODES = ("direct", "nn")
OPTIMIZERS = ("gd", "adam")
SHIFT = np.pi / 2


@dataclass(frozen=True)
class NetworkConfig:
    """Generator network settings for ``nn`` mode.

    ``output_gain`` shrinks the output layer's init so the first emitted
    angles sit near zero.  ``lr_scale`` multiplies the learning rate in weight
    space: a gd step on the weights moves the angles by the angle gradient
    times roughly ``lr * pi**2 * (|hidden|**2 + 1)``, so the same nominal rate
    takes far larger angle steps than in direct mode.
    """

    input_dim: int = 8
    hidden_dim: int = 32
    output_gain: float = 0.01
    lr_scale: float = 0.1


@dataclass(frozen=True)
class TrainConfig:
    ansatz: AnsatzConfig
    iterations: int = 500
    learning_rate: float = 0.05
    optimizer: str = "gd"
    mode: str = "direct"
    seed: int = 0
    network: NetworkConfig = field(default_factory=NetworkConfig)

    def __post_init__(self):
        if isinstance(self.iterations, bool) or not isinstance(self.iterations, (int, np.integer)) \
                or self.iterations < 2:
            raise ValueError(f"iterations must be an integer >= 2, got {self.iterations!r}")
        if not self.learning_rate > 0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate!r}")
        if self.optimizer not in OPTIMIZERS:
            raise ValueError(f"optimizer must be one of {OPTIMIZERS}, got {self.optimizer!r}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class ParameterTrajectory:
    """Angles recorded during training; row 0 is the initial vector."""

    rows: np.ndarray
    mode: str
    num_qubits: int
    seed: int
    num_layers: int | None = None
    normalized: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        rows = np.array(self.rows, dtype=float)
        if rows.ndim != 2 or rows.shape[0] == 0 or rows.shape[1] == 0:
            raise ValueError(f"trajectory must be a non-empty 2-D array, got shape {rows.shape}")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @property
    def iteration_count(self) -> int:
        return self.rows.shape[0] - 1

    @property
    def num_params(self) -> int:
        return self.rows.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.rows[:, j]

    def replace(self, **changes) -> "ParameterTrajectory":
        fields = dict(rows=self.rows, mode=self.mode, num_qubits=self.num_qubits, seed=self.seed,
                      num_layers=self.num_layers, normalized=self.normalized, meta=self.meta)
        fields.update(changes)
        return ParameterTrajectory(**fields)


def parameter_shift_grad(params, config: AnsatzConfig, indices=None) -> np.ndarray:
    """Exact gradient ``[C(theta_j + pi/2) - C(theta_j - pi/2)] / 2``.

    ``indices`` restricts the evaluation to a subset of components; the result
    then has one entry per requested index.
    """
    idx = np.arange(config.parameter_count) if indices is None else np.asarray(indices, dtype=int)
    plus, minus = shifted_costs(params, config, idx, SHIFT)
    return (plus - minus) / 2


class _Adam:
    def __init__(self, lr: float, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.lr, self.beta1, self.beta2, self.eps = lr, beta1, beta2, eps
        self.m = self.v = None
        self.t = 0

    def step(self, grad: np.ndarray) -> np.ndarray:
        if self.m is None:
            self.m, self.v = np.zeros_like(grad), np.zeros_like(grad)
        self.t += 1
        self.m = self.beta1 * self.m + (1 - self.beta1) * grad
        self.v = self.beta2 * self.v + (1 - self.beta2) * grad**2
        m_hat = self.m / (1 - self.beta1**self.t)
        v_hat = self.v / (1 - self.beta2**self.t)
        return self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


class _GD:
    def __init__(self, lr: float):
        self.lr = lr

    def step(self, grad: np.ndarray) -> np.ndarray:
        return self.lr * grad


def _optimizer(config: TrainConfig, lr_scale: float = 1.0):
    lr = config.learning_rate * lr_scale
    return _Adam(lr) if config.optimizer == "adam" else _GD(lr)


def _trajectory(rows, config: TrainConfig, costs) -> ParameterTrajectory:
    a = config.ansatz
    return ParameterTrajectory(
        rows=np.asarray(rows), mode=config.mode, num_qubits=a.num_qubits, seed=config.seed,
        num_layers=a.num_layers, meta={"costs": np.asarray(costs)},
    )


def initial_params(config: TrainConfig) -> np.ndarray:
    rng = np.random.default_rng(config.seed)
    return rng.uniform(-np.pi, np.pi, size=config.ansatz.parameter_count)


def train_direct(config: TrainConfig) -> ParameterTrajectory:
    """Optimise the angles directly from a uniform [-pi, pi] start."""
    if config.mode != "direct":
        raise ValueError(f"train_direct needs mode 'direct', got {config.mode!r}")
    theta = initial_params(config)
    opt = _optimizer(config)
    rows = [theta.copy()]
    for _ in range(config.iterations):
        grad = parameter_shift_grad(theta, config.ansatz)
        theta = theta - opt.step(grad)
        rows.append(theta.copy())
    costs = cost_batch(np.array(rows), config.ansatz)
    return _trajectory(rows, config, costs)


def initial_network(config: TrainConfig) -> NetworkWeights:
    net = config.network
    return network_init(config.seed, net.input_dim, net.hidden_dim,
                        config.ansatz.parameter_count, output_gain=net.output_gain)


def train_nn(config: TrainConfig, weights: NetworkWeights | None = None) -> ParameterTrajectory:
    """Optimise perceptron weights; the recorded rows are the emitted angles.

    The final weights are kept in ``meta["weights"]``.
    """
    if config.mode != "nn":
        raise ValueError(f"train_nn needs mode 'nn', got {config.mode!r}")
    w = initial_network(config) if weights is None else weights
    x = np.ones(w.input_dim)
    opt = _optimizer(config, config.network.lr_scale)
    theta = network_forward(w, x)
    rows = [theta]
    for _ in range(config.iterations):
        grad_theta = parameter_shift_grad(theta, config.ansatz)
        grad_w = network_backward(w, x, grad_theta).flat()
        w = w.with_flat(w.flat() - opt.step(grad_w))
        theta = network_forward(w, x)
        rows.append(theta)
    traj = _trajectory(rows, config, cost_batch(np.array(rows), config.ansatz))
    traj.meta["weights"] = w
    return traj


def train(config: TrainConfig) -> ParameterTrajectory:
    if config.mode == "nn":
        return train_nn(config)
    return train_direct(config)


def gradient_variance_scan(qubit_range, samples: int, template: AnsatzConfig | None = None,
                           seed: int = 0, all_components: bool = False) -> list[tuple[int, float]]:
    """Population variance of dC/dtheta_0 over uniform random angle vectors.

    ``template`` supplies every ansatz field except ``num_qubits`` (and
    ``num_layers`` when the template leaves it tied to the qubit count).
    ``all_components`` pools every gradient component instead of theta_0.
    """
    if isinstance(samples, bool) or not isinstance(samples, (int, np.integer)) or samples < 30:
        raise ValueError(f"samples must be an integer >= 30, got {samples!r}")
    out = []
    for n in qubit_range:
        config = _config_for(n, template)
        rng = np.random.default_rng([seed, n])
        grads = []
        for _ in range(samples):
            p = rng.uniform(-np.pi, np.pi, size=config.parameter_count)
            grads.append(parameter_shift_grad(p, config, None if all_components else [0]))
        out.append((int(n), float(np.var(np.concatenate(grads)))))
    return out


def _config_for(n: int, template: AnsatzConfig | None) -> AnsatzConfig:
    if template is None:
        return AnsatzConfig(n)
    tied = template.num_layers == template.num_qubits
    sched = template.rotation_axis_schedule
    layers = n if tied else template.num_layers
    if len(set(sched)) == 1:
        sched = sched[0]
    return AnsatzConfig(n, layers, sched, template.entangler, template.observable)
