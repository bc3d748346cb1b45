"""SU(2) and its Lie algebra su(2).

Algebra elements are stored as real coefficients ``(alpha, beta, gamma)`` over
the basis ``{iX, iY, iZ}``; the 2x2 matrix is a derived view.  Group elements
wrap a 2x2 complex unitary with unit determinant.

Everything here is a pure function on immutable values.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

GROUP_TOL = 1e-10
ALGEBRA_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

AXES = ("X", "Y", "Z")


class LogBranchError(ValueError):
    """Raised when the principal logarithm is undefined (the element is -I)."""


def axis_index(axis) -> int:
    """Map ``'x' | 'X' | 0`` style axis labels to 0, 1, 2."""
    if isinstance(axis, (int, np.integer)):
        if 0 <= axis < 3:
            return int(axis)
    elif isinstance(axis, str) and axis.upper() in AXES:
        return AXES.index(axis.upper())
    raise ValueError(f"unknown rotation axis {axis!r}; expected one of X, Y, Z")


@dataclass(frozen=True)
class AlgebraElement:
    """``i(alpha X + beta Y + gamma Z)`` in su(2)."""

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    @classmethod
    def from_coeffs(cls, coeffs) -> "AlgebraElement":
        a, b, c = (float(x) for x in coeffs)
        return cls(a, b, c)

    @classmethod
    def from_matrix(cls, mat) -> "AlgebraElement":
        """Project a 2x2 matrix onto su(2) coordinates.

        Exact for traceless skew-Hermitian input; for anything else this
        returns the coefficients of its su(2) component.
        """
        m = np.asarray(mat, dtype=complex)
        gamma = (m[0, 0].imag - m[1, 1].imag) / 2
        alpha = (m[0, 1].imag + m[1, 0].imag) / 2
        beta = (m[0, 1].real - m[1, 0].real) / 2
        return cls(float(alpha), float(beta), float(gamma))

    @property
    def coeffs(self) -> np.ndarray:
        return np.array([self.alpha, self.beta, self.gamma])

    @property
    def matrix(self) -> np.ndarray:
        a, b, c = self.alpha, self.beta, self.gamma
        return np.array([[1j * c, b + 1j * a], [-b + 1j * a, -1j * c]])

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector (the rotation angle r)."""
        return float(np.sqrt(self.alpha**2 + self.beta**2 + self.gamma**2))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement.from_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement.from_coeffs(self.coeffs - other.coeffs)

    def __mul__(self, s: float) -> "AlgebraElement":
        return AlgebraElement.from_coeffs(float(s) * self.coeffs)

    __rmul__ = __mul__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement.from_coeffs(-self.coeffs)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A member of SU(2), held as its 2x2 matrix."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"SU(2) element must be 2x2, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(I2)

    @property
    def matrix(self) -> np.ndarray:
        return self.entries

    def unitarity_error(self) -> float:
        m = self.entries
        return float(np.linalg.norm(m.conj().T @ m - I2))

    def det_error(self) -> float:
        return float(abs(np.linalg.det(self.entries) - 1))

    def is_valid(self, tol: float = GROUP_TOL) -> bool:
        return self.unitarity_error() <= tol and self.det_error() <= tol

    def inv(self) -> "GroupElement":
        return GroupElement(self.entries.conj().T)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.entries @ other.entries)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))


def pauli_basis() -> tuple[AlgebraElement, AlgebraElement, AlgebraElement]:
    """The basis ``iX, iY, iZ`` of su(2)."""
    return AlgebraElement(1, 0, 0), AlgebraElement(0, 1, 0), AlgebraElement(0, 0, 1)


def lie_bracket(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Matrix commutator ``AB - BA`` mapped back to coefficients."""
    A, B = a.matrix, b.matrix
    return AlgebraElement.from_matrix(A @ B - B @ A)


def killing_inner(a: AlgebraElement, b: AlgebraElement) -> float:
    """Ad-invariant inner product ``-tr(AB)``; equals ``2 * dot(coeffs)``."""
    return float(-np.trace(a.matrix @ b.matrix).real)


def killing_norm(a: AlgebraElement) -> float:
    return float(np.sqrt(killing_inner(a, a)))


def exp_map(a: AlgebraElement) -> GroupElement:
    """Closed-form exponential ``cos(r) I + sin(r)/r A``."""
    r = a.norm()
    sinc = 1.0 if r == 0.0 else np.sin(r) / r
    return GroupElement(np.cos(r) * I2 + sinc * a.matrix)


def log_map(u: GroupElement, tol: float = GROUP_TOL) -> AlgebraElement:
    """Principal logarithm, the unique preimage with rotation angle ``r < pi``.

    Raises ``LogBranchError`` for ``-I`` and ``ValueError`` for input that is
    not in SU(2).
    """
    if not u.is_valid(tol):
        raise ValueError(
            f"log_map needs an SU(2) element (unitarity error {u.unitarity_error():.2e}, "
            f"det error {u.det_error():.2e})"
        )
    m = u.matrix
    half_trace = (m[0, 0] + m[1, 1]).real / 2
    v = AlgebraElement.from_matrix((m - m.conj().T) / 2).coeffs  # sin(r) * axis
    s = float(np.linalg.norm(v))
    if s < ALGEBRA_TOL:
        if half_trace < 0:
            raise LogBranchError("log_map is undefined at -I (trace = -2)")
        return AlgebraElement()
    r = np.arctan2(s, half_trace)
    return AlgebraElement.from_coeffs(v * (r / s))


def adjoint(g: GroupElement, a: AlgebraElement) -> AlgebraElement:
    """``Ad_g(A) = g A g^-1``."""
    m = g.matrix
    return AlgebraElement.from_matrix(m @ a.matrix @ m.conj().T)


@dataclass(frozen=True, eq=False)
class GeodesicCurve:
    """``t -> base @ exp(t * direction)``."""

    base: GroupElement
    direction: AlgebraElement

    def sample(self, t: float) -> GroupElement:
        return geodesic_sample(self, t)


def geodesic_sample(curve: GeodesicCurve, t: float) -> GroupElement:
    return curve.base @ exp_map(t * curve.direction)


def rotation_gate(axis, theta: float) -> GroupElement:
    """``R_P(theta) = exp(-i P theta / 2)`` for ``P`` in X, Y, Z."""
    coeffs = np.zeros(3)
    coeffs[axis_index(axis)] = -theta / 2
    return exp_map(AlgebraElement.from_coeffs(coeffs))


def random_algebra(rng: np.random.Generator, scale: float = 1.0) -> AlgebraElement:
    return AlgebraElement.from_coeffs(rng.normal(scale=scale, size=3))


def random_group(rng: np.random.Generator) -> GroupElement:
    """Haar-random SU(2) element from a uniform unit quaternion."""
    q = rng.normal(size=4)
    a, b, c, d = q / np.linalg.norm(q)
    return GroupElement(np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]]))
