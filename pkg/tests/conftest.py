import numpy as np
import pytest

from geogate.lie import GroupElement


def series_exp(mat: np.ndarray, terms: int = 30) -> np.ndarray:
    """Truncated power series sum_k A^k / k!."""
    out = np.eye(mat.shape[0], dtype=complex)
    term = np.eye(mat.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ mat / k
        out = out + term
    return out


def kron_embed(gate: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Dense 2^n operator for ``gate`` on ``qubit`` (qubit 0 = least significant)."""
    ops = [np.eye(2)] * n
    ops[n - 1 - qubit] = gate
    full = np.array([[1.0 + 0j]])
    for op in ops:
        full = np.kron(full, op)
    return full


def dense_cnot(control: int, target: int, n: int) -> np.ndarray:
    dim = 2**n
    m = np.zeros((dim, dim))
    for b in range(dim):
        out = b ^ (1 << target) if (b >> control) & 1 else b
        m[out, b] = 1
    return m


def random_state(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def haar_su2(rng) -> GroupElement:
    from geogate.lie import random_group

    return random_group(rng)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
