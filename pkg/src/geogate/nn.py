"""Two-layer tanh perceptron that emits circuit angles in (-pi, pi).

    theta = pi * tanh(W2 @ tanh(W1 @ x + b1) + b2)

Gradients are propagated by hand from an upstream dC/dtheta, so the network
can be trained against any externally computed circuit gradient.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Layer:
    weight: np.ndarray  # (fan_out, fan_in)
    bias: np.ndarray  # (fan_out,)


@dataclass(frozen=True)
class NetworkWeights:
    layers: tuple[Layer, Layer]

    @property
    def input_dim(self) -> int:
        return self.layers[0].weight.shape[1]

    @property
    def hidden_dim(self) -> int:
        return self.layers[0].weight.shape[0]

    @property
    def output_dim(self) -> int:
        return self.layers[1].weight.shape[0]

    def flat(self) -> np.ndarray:
        return np.concatenate([np.concatenate([l.weight.ravel(), l.bias]) for l in self.layers])

    def with_flat(self, vec) -> "NetworkWeights":
        vec = np.asarray(vec, dtype=float)
        layers, pos = [], 0
        for l in self.layers:
            nw, nb = l.weight.size, l.bias.size
            w = vec[pos:pos + nw].reshape(l.weight.shape)
            b = vec[pos + nw:pos + nw + nb]
            layers.append(Layer(w.copy(), b.copy()))
            pos += nw + nb
        if pos != vec.size:
            raise ValueError(f"flat vector has {vec.size} entries, network needs {pos}")
        return NetworkWeights(tuple(layers))

    def to_dict(self) -> dict:
        return {
            "layers": [
                {"weight": l.weight.tolist(), "bias": l.bias.tolist()} for l in self.layers
            ]
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NetworkWeights":
        return cls(tuple(
            Layer(np.array(l["weight"], dtype=float), np.array(l["bias"], dtype=float))
            for l in d["layers"]
        ))


def network_init(seed: int, input_dim: int, hidden_dim: int, output_dim: int,
                 output_gain: float = 1.0) -> NetworkWeights:
    """Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, zero biases.

    ``output_gain`` (<= 1) shrinks the last layer's init range.
    """
    dims = (input_dim, hidden_dim, output_dim)
    if any(isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 1 for d in dims):
        raise ValueError(f"network dimensions must be positive integers, got {dims}")
    if not 0 < output_gain <= 1:
        raise ValueError("output_gain must lie in (0, 1]")
    rng = np.random.default_rng(seed)
    layers = []
    for i, (fan_in, fan_out) in enumerate(zip(dims[:-1], dims[1:])):
        bound = 1.0 / np.sqrt(fan_in)
        if i == len(dims) - 2:
            bound *= output_gain
        layers.append(Layer(rng.uniform(-bound, bound, size=(fan_out, fan_in)), np.zeros(fan_out)))
    return NetworkWeights(tuple(layers))


def _forward(w: NetworkWeights, x: np.ndarray):
    l1, l2 = w.layers
    h = np.tanh(l1.weight @ x + l1.bias)
    u = np.tanh(l2.weight @ h + l2.bias)
    return h, u


def _check_input(w: NetworkWeights, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (w.input_dim,):
        raise ValueError(f"network expects input of length {w.input_dim}, got shape {x.shape}")
    return x


def network_forward(w: NetworkWeights, x) -> np.ndarray:
    _, u = _forward(w, _check_input(w, x))
    return np.pi * u


def network_backward(w: NetworkWeights, x, upstream) -> NetworkWeights:
    """Gradient of C w.r.t. every weight and bias, given ``upstream = dC/dtheta``.

    Returned in the same structure as the weights.
    """
    x = _check_input(w, x)
    g = np.asarray(upstream, dtype=float)
    if g.shape != (w.output_dim,):
        raise ValueError(f"upstream gradient must have length {w.output_dim}, got shape {g.shape}")
    h, u = _forward(w, x)
    dz2 = g * np.pi * (1 - u**2)
    dz1 = (w.layers[1].weight.T @ dz2) * (1 - h**2)
    return NetworkWeights((
        Layer(np.outer(dz1, x), dz1),
        Layer(np.outer(dz2, h), dz2),
    ))
