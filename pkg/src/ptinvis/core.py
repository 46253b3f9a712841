"""Exact scattering data for the two-layer slab.

The slab occupies ``|z| <= L/2``. The left half has refractive index
``n1``, the right half ``n2`` and outside both is vacuum. All formulas are
written in the dimensionless wavenumber ``K = L k``; physical lengths
enter only through :func:`wavelength_of`.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .errors import DomainError, RangeError, SingularPrefactorError, SpectralSingularityError

#: squared modulus below which a matrix entry counts as zero
ZERO_TOL = 1e-8
#: squared modulus above which a matrix entry counts as nonzero
NONZERO_TOL = 1e-4
#: largest |Im(a+-)| accepted before cosh/sinh overflow becomes a concern
IM_ARG_LIMIT = 50.0

DEFAULT_L = 300e-6


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"

    def mirrored(self) -> "Side":
        if self is Side.LEFT:
            return Side.RIGHT
        if self is Side.RIGHT:
            return Side.LEFT
        return Side.BOTH


@dataclass(frozen=True)
class SlabConfig:
    """Two complex refractive indices and the total thickness ``L`` in meters."""

    n1: complex
    n2: complex
    L: float = DEFAULT_L

    def __post_init__(self):
        object.__setattr__(self, "n1", complex(self.n1))
        object.__setattr__(self, "n2", complex(self.n2))
        object.__setattr__(self, "L", float(self.L))
        if self.n1 == 0 or self.n2 == 0:
            raise DomainError("refractive indices must be nonzero")
        if not self.L > 0:
            raise DomainError(f"slab thickness must be positive, got {self.L!r}")
        if not self.admissible:
            warnings.warn(
                f"exodic medium: Re(n) < 1 in ({self.n1}, {self.n2})", RuntimeWarning, stacklevel=3
            )

    @property
    def admissible(self) -> bool:
        """True for non-exodic media, Re(n1) >= 1 and Re(n2) >= 1."""
        return self.n1.real >= 1.0 and self.n2.real >= 1.0

    @property
    def is_pt_symmetric(self) -> bool:
        return self.n1 == self.n2.conjugate()

    @property
    def is_real(self) -> bool:
        return self.n1.imag == 0.0 and self.n2.imag == 0.0

    def rounded(self, decimals: int) -> "SlabConfig":
        """Copy with real and imaginary parts of both indices rounded."""

        def r(z):
            return complex(round(z.real, decimals), round(z.imag, decimals))

        return replace(self, n1=r(self.n1), n2=r(self.n2))


@dataclass(frozen=True)
class AuxQuantities:
    n_plus: complex
    n_minus: complex
    n_tilde_plus: complex
    n_tilde_minus: complex
    a_plus: complex
    a_minus: complex
    K: float


@dataclass(frozen=True)
class TransferMatrix:
    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @classmethod
    def from_array(cls, arr) -> "TransferMatrix":
        a = np.asarray(arr, dtype=np.complex128).reshape(2, 2)
        return cls(complex(a[0, 0]), complex(a[0, 1]), complex(a[1, 0]), complex(a[1, 1]))

    @property
    def array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=np.complex128)

    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    def inverse(self) -> "TransferMatrix":
        d = self.det()
        return TransferMatrix(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d)

    def conjugate(self) -> "TransferMatrix":
        return TransferMatrix(
            self.m11.conjugate(), self.m12.conjugate(), self.m21.conjugate(), self.m22.conjugate()
        )


@dataclass(frozen=True)
class ScatteringData:
    T: complex
    Rl: complex
    Rr: complex

    @property
    def tCoeff(self) -> float:
        return abs(self.T) ** 2

    @property
    def rlCoeff(self) -> float:
        return abs(self.Rl) ** 2

    @property
    def rrCoeff(self) -> float:
        return abs(self.Rr) ** 2

    def to_transfer_matrix(self) -> TransferMatrix:
        """Rebuild M from the amplitudes."""
        T, Rl, Rr = self.T, self.Rl, self.Rr
        return TransferMatrix(T - Rl * Rr / T, Rr / T, -Rl / T, 1.0 / T)


def _tristate(value: complex) -> str:
    sq = abs(value) ** 2
    if sq < ZERO_TOL:
        return "Z"
    if sq > NONZERO_TOL:
        return "N"
    return "G"


# required states of (m21, m12, m11 - 1, m22 - 1) for each side
_PATTERNS = {
    Side.LEFT: ("Z", "N", "Z", "Z"),
    Side.RIGHT: ("N", "Z", "Z", "Z"),
    Side.BOTH: ("Z", "Z", "Z", "Z"),
}


@dataclass(frozen=True)
class InvisibilityResiduals:
    """Residuals ``(m21, m12, m11 - 1, m22 - 1)`` with two-threshold classification.

    An entry is "zero" when its squared modulus is below :data:`ZERO_TOL`
    and "nonzero" above :data:`NONZERO_TOL`; the band in between makes the
    verdict indeterminate rather than guessing.
    """

    r_m21: complex
    r_m12: complex
    r_m11: complex
    r_m22: complex

    def _states(self):
        return tuple(_tristate(v) for v in (self.r_m21, self.r_m12, self.r_m11, self.r_m22))

    @property
    def side(self) -> Side | None:
        states = self._states()
        for side, pattern in _PATTERNS.items():
            if states == pattern:
                return side
        return None

    @property
    def indeterminate(self) -> bool:
        if self.side is not None:
            return False
        states = self._states()
        for pattern in _PATTERNS.values():
            if all(s == p or s == "G" for s, p in zip(states, pattern)):
                return True
        return False

    def as_dict(self) -> dict:
        return {
            "abs2_m21": abs(self.r_m21) ** 2,
            "abs2_m12": abs(self.r_m12) ** 2,
            "abs2_m11_minus_1": abs(self.r_m11) ** 2,
            "abs2_m22_minus_1": abs(self.r_m22) ** 2,
            "side": None if self.side is None else self.side.value,
            "indeterminate": self.indeterminate,
        }


# ---------------------------------------------------------------------------


def _check_K(K: float) -> float:
    K = float(K)
    if not K > 0 or not math.isfinite(K):
        raise DomainError(f"wavenumber K must be positive and finite, got {K!r}")
    return K


def aux_quantities(config: SlabConfig, K: float) -> AuxQuantities:
    K = _check_K(K)
    n1, n2 = config.n1, config.n2
    n_p, n_m = n1 + n2, n1 - n2
    return AuxQuantities(
        n_plus=n_p,
        n_minus=n_m,
        n_tilde_plus=n1 * n2 + 1,
        n_tilde_minus=n1 * n2 - 1,
        a_plus=n_p * K / 2,
        a_minus=n_m * K / 2,
        K=K,
    )


def _guard(n1: complex, n2: complex, K) -> None:
    if n1 * n2 == 0:
        raise SingularPrefactorError("n1*n2 = 0 makes the transfer-matrix prefactor diverge")
    im = max(abs((n1 + n2).imag), abs((n1 - n2).imag)) * np.max(K) / 2
    if im > IM_ARG_LIMIT:
        raise RangeError(f"|Im(a+-)| = {im:.3g} exceeds {IM_ARG_LIMIT}; cosh/sinh would overflow")


def transfer_matrix(config: SlabConfig, K: float) -> TransferMatrix:
    K = _check_K(K)
    _guard(config.n1, config.n2, K)
    row = _kernels.closed_form_numpy(config.n1, config.n2, np.array([K]))[0]
    return TransferMatrix(*(complex(v) for v in row))


def transfer_matrices(config: SlabConfig, K) -> np.ndarray:
    """Vectorised :func:`transfer_matrix`; returns an ``(N, 4)`` array of m11, m12, m21, m22."""
    K = np.atleast_1d(np.asarray(K, dtype=np.float64))
    if np.any(~(K > 0)) or not np.all(np.isfinite(K)):
        raise DomainError("all wavenumbers must be positive and finite")
    _guard(config.n1, config.n2, K)
    return _kernels.closed_form(config.n1, config.n2, K)


def scattering_data(M: TransferMatrix) -> ScatteringData:
    if M.m22 == 0:
        raise SpectralSingularityError("M22 = 0: spectral singularity (pole of T)")
    return ScatteringData(T=1 / M.m22, Rl=-M.m21 / M.m22, Rr=M.m12 / M.m22)


def pt_transform(config: SlabConfig) -> SlabConfig:
    """Parity swaps the layers and time reversal conjugates them."""
    return replace(config, n1=config.n2.conjugate(), n2=config.n1.conjugate())


def time_reverse(config: SlabConfig) -> SlabConfig:
    return replace(config, n1=config.n1.conjugate(), n2=config.n2.conjugate())


def parity(config: SlabConfig) -> SlabConfig:
    return replace(config, n1=config.n2, n2=config.n1)


def invisibility_residuals(config: SlabConfig, K: float) -> InvisibilityResiduals:
    M = transfer_matrix(config, K)
    return InvisibilityResiduals(r_m21=M.m21, r_m12=M.m12, r_m11=M.m11 - 1, r_m22=M.m22 - 1)


def classify(config: SlabConfig, K: float) -> Side | None:
    return invisibility_residuals(config, K).side


def verify_pt_matrix_rule(config: SlabConfig, K: float) -> float:
    """Largest entrywise gap between M of the PT-transformed slab and conj(M^-1)."""
    M = transfer_matrix(config, K)
    M_pt = transfer_matrix(pt_transform(config), K)
    expected = M.inverse().conjugate()
    return float(np.max(np.abs(M_pt.array - expected.array)))


def wavelength_of(K: float, L: float) -> float:
    """Vacuum wavelength in nanometers for dimensionless K and thickness L in meters."""
    if not K > 0 or not L > 0:
        raise DomainError(f"K and L must be positive, got K={K!r}, L={L!r}")
    return 2 * math.pi * L / K * 1e9


def K_of_wavelength(lam_nm, L: float):
    """Inverse of :func:`wavelength_of`; accepts arrays."""
    lam = np.asarray(lam_nm, dtype=np.float64)
    if np.any(~(lam > 0)) or not L > 0:
        raise DomainError("wavelength and thickness must be positive")
    return 2 * np.pi * L / (lam * 1e-9)
