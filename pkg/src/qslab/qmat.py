"""Dense 2x2 and 4x4 Hermitian matrix helpers.

Convention fixed for the whole package: the Bloch vector (0, 0, 1) is the
excited state |1><1| = diag(0, 1), so

    rho = [[(1 - rz)/2, (rx - i ry)/2],
           [(rx + i ry)/2, (1 + rz)/2]].

Fidelity is computed through the closed two-dimensional form
F = tr(rho sigma) + 2 sqrt(det rho det sigma), exact for qubits; the matrix
square-root definition serves as the test oracle only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "SIGMA_MINUS",
    "IDENTITY_2",
    "BlochState",
    "bloch_to_rho",
    "rho_to_bloch",
    "purity",
    "relative_purity",
    "bures_fidelity",
    "bures_angle",
    "norms",
    "trace_norm_4",
]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
# lowering operator |0><1| in the basis where |1> = (0, 1)^T is excited
SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

# rounding slack on the Bloch-sphere boundary
_NORM_SLACK = 1e-12
# analytic zeros (pure-state determinants) contaminated by rounding
_EIG_CLAMP = 1e-12


@dataclass(frozen=True)
class BlochState:
    """A single-qubit state as a Bloch vector, validated on construction."""

    rx: float
    ry: float
    rz: float

    def __post_init__(self) -> None:
        for name in ("rx", "ry", "rz"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if self.norm_sq() > 1.0 + _NORM_SLACK:
            raise ValueError(f"Bloch vector length exceeds 1: |r|^2 = {self.norm_sq()!r}")

    def norm_sq(self) -> float:
        return self.rx * self.rx + self.ry * self.ry + self.rz * self.rz

    def is_pure(self, tol: float = 1e-9) -> bool:
        return abs(self.norm_sq() - 1.0) <= tol

    def as_array(self) -> np.ndarray:
        return np.array([self.rx, self.ry, self.rz])


def bloch_to_rho(state: BlochState) -> np.ndarray:
    r = state
    return np.array(
        [
            [(1.0 - r.rz) / 2.0, (r.rx - 1.0j * r.ry) / 2.0],
            [(r.rx + 1.0j * r.ry) / 2.0, (1.0 + r.rz) / 2.0],
        ],
        dtype=complex,
    )


def rho_to_bloch(rho: np.ndarray) -> BlochState:
    """Inverse of bloch_to_rho; validates shape, hermiticity, and unit trace."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {rho.shape}")
    if abs(rho[0, 0] + rho[1, 1] - 1.0) > 1e-9:
        raise ValueError("matrix trace must be 1")
    if abs(rho[0, 1] - np.conj(rho[1, 0])) > 1e-9:
        raise ValueError("matrix must be Hermitian")
    return BlochState(
        rx=float(2.0 * rho[0, 1].real),
        ry=float(-2.0 * rho[0, 1].imag),
        rz=float((rho[1, 1] - rho[0, 0]).real),
    )


def _as_2x2(mat: np.ndarray) -> np.ndarray:
    mat = np.asarray(mat, dtype=complex)
    if mat.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {mat.shape}")
    return mat


def purity(rho: np.ndarray) -> float:
    """tr(rho^2); lies in [1/2, 1] for a qubit density matrix."""
    rho = _as_2x2(rho)
    return float(np.trace(rho @ rho).real)


def relative_purity(rho0: np.ndarray, rho_t: np.ndarray) -> float:
    """Normalized overlap tr(rho_t rho0) / tr(rho0^2)."""
    rho0 = _as_2x2(rho0)
    rho_t = _as_2x2(rho_t)
    return float(np.trace(rho_t @ rho0).real / purity(rho0))


def _det_clamped(rho: np.ndarray) -> float:
    # pure states give an analytic zero; rounding may leave -1e-17
    d = float(np.linalg.det(rho).real)
    if d < 0.0:
        if d < -_EIG_CLAMP:
            raise ValueError(f"determinant {d!r} negative beyond rounding; not a state")
        d = 0.0
    return d


def bures_fidelity(rho0: np.ndarray, rho_tau: np.ndarray) -> float:
    """Uhlmann fidelity of two qubit states, in [0, 1]."""
    rho0 = _as_2x2(rho0)
    rho_tau = _as_2x2(rho_tau)
    val = float(np.trace(rho0 @ rho_tau).real) + 2.0 * math.sqrt(
        _det_clamped(rho0) * _det_clamped(rho_tau)
    )
    return min(max(val, 0.0), 1.0)


def bures_angle(rho0: np.ndarray, rho_tau: np.ndarray) -> float:
    """arccos sqrt(F), in [0, pi/2]."""
    return math.acos(min(1.0, math.sqrt(bures_fidelity(rho0, rho_tau))))


def norms(mat: np.ndarray) -> tuple[float, float, float]:
    """(operator, Hilbert-Schmidt, trace) norms of a Hermitian 2x2 matrix."""
    mat = _as_2x2(mat)
    ev = np.abs(np.linalg.eigvalsh(mat))
    return float(np.max(ev)), float(math.sqrt(np.sum(ev * ev))), float(np.sum(ev))


def trace_norm_4(mat: np.ndarray) -> float:
    """Sum of absolute eigenvalues of a Hermitian 4x4 matrix."""
    mat = np.asarray(mat, dtype=complex)
    if mat.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {mat.shape}")
    return float(np.sum(np.abs(np.linalg.eigvalsh(mat))))
