"""Independent transfer matrix by direct integration of the Helmholtz equation.

In slab units (z measured in L) the field obeys ``psi'' + K^2 n(z)^2 psi = 0``
with ``n = n1`` on [-1/2, 0] and ``n = n2`` on [0, 1/2]. Two independent
solutions are carried across with fixed-step RK4, and the resulting
fundamental matrix is matched to plane waves ``A e^{iKz} + B e^{-iKz}`` on
both faces. Nothing here uses the closed-form entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import SlabConfig, TransferMatrix, transfer_matrix
from .errors import DomainError, ResolutionError

MIN_STEPS = 100
#: largest K * h accepted, with h = 1 / steps
MAX_K_PER_STEP = 0.5


@dataclass(frozen=True)
class IntegrationGrid:
    """Fixed-step grid on z in [-1/2, 1/2]; ``steps`` must be even so the interface is a node."""

    steps: int
    z_range: tuple[float, float] = (-0.5, 0.5)

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < MIN_STEPS:
            raise DomainError(f"need an integer step count >= {MIN_STEPS}, got {self.steps!r}")
        if self.steps % 2:
            raise DomainError("step count must be even")
        object.__setattr__(self, "steps", int(self.steps))

    @property
    def h(self) -> float:
        return 1.0 / self.steps

    @staticmethod
    def required_steps(K: float) -> int:
        n = max(MIN_STEPS, math.ceil(K / MAX_K_PER_STEP))
        return n + (n % 2)


@dataclass(frozen=True)
class AsymptoticCoefficients:
    """Plane-wave amplitudes: A- e^{ikx} + B- e^{-ikx} on the left, A+, B+ on the right."""

    A_minus: complex
    B_minus: complex
    A_plus: complex
    B_plus: complex

    @classmethod
    def propagate(cls, M: TransferMatrix, A_minus: complex, B_minus: complex) -> "AsymptoticCoefficients":
        A_plus = M.m11 * A_minus + M.m12 * B_minus
        B_plus = M.m21 * A_minus + M.m22 * B_minus
        return cls(complex(A_minus), complex(B_minus), complex(A_plus), complex(B_plus))

    def residual(self, M: TransferMatrix) -> float:
        other = self.propagate(M, self.A_minus, self.B_minus)
        return max(abs(other.A_plus - self.A_plus), abs(other.B_plus - self.B_plus))


def _plane_wave_basis(K: float, z: float) -> np.ndarray:
    """Columns map (A, B) to (psi, psi') at z."""
    e, f = np.exp(1j * K * z), np.exp(-1j * K * z)
    return np.array([[e, f], [1j * K * e, -1j * K * f]], dtype=np.complex128)


def fundamental_matrix(config: SlabConfig, K: float, grid: IntegrationGrid) -> np.ndarray:
    if not K > 0:
        raise DomainError(f"K must be positive, got {K!r}")
    if K * grid.h > MAX_K_PER_STEP:
        need = IntegrationGrid.required_steps(K)
        raise ResolutionError(
            f"K/steps = {K * grid.h:.3g} exceeds {MAX_K_PER_STEP}; use at least {need} steps", need
        )
    return _kernels.rk4_fundamental(config.n1, config.n2, float(K), grid.steps // 2)


def integrate_transfer_matrix(config: SlabConfig, K: float, grid: IntegrationGrid) -> TransferMatrix:
    phi = fundamental_matrix(config, K, grid)
    P_left = _plane_wave_basis(K, -0.5)
    P_right = _plane_wave_basis(K, 0.5)
    M = np.linalg.solve(P_right, phi @ P_left)
    return TransferMatrix.from_array(M)


def oracle_deviation(config: SlabConfig, K: float, grid: IntegrationGrid) -> float:
    """Largest entrywise gap between integrated and closed-form M, relative to max |M_ij|.

    Scaling by the largest entry rather than entry by entry keeps the
    measure meaningful when an entry (say m21 at an invisible point) is
    itself near zero.
    """
    M_ode = integrate_transfer_matrix(config, K, grid).array
    M_cf = transfer_matrix(config, K).array
    return float(np.max(np.abs(M_ode - M_cf)) / np.max(np.abs(M_cf)))


def convergence_order(config: SlabConfig, K: float, steps: int) -> float:
    """log2 of the error ratio between ``steps`` and ``2 * steps``."""
    e1 = oracle_deviation(config, K, IntegrationGrid(steps))
    e2 = oracle_deviation(config, K, IntegrationGrid(2 * steps))
    return math.log2(e1 / e2)
