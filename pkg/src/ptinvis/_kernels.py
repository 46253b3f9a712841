"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Two kernels dominate runtime:

* ``closed_form`` evaluates the two-layer transfer matrix for a whole
  array of wavenumbers (spectral scans, band searches).
* ``rk4_fundamental`` integrates the Helmholtz equation across the slab
  with classical fourth-order Runge-Kutta (the ODE oracle, which needs
  10^6 steps and more at K ~ 2000).

Set ``PTINVIS_DISABLE_NUMBA=1`` to force the numpy implementations. Both
implementations are always importable from this module under explicit
names so they can be compared against each other.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLE = os.environ.get("PTINVIS_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None


# ---------------------------------------------------------------------------
# closed-form transfer matrix
# ---------------------------------------------------------------------------


def closed_form_numpy(n1: complex, n2: complex, K: np.ndarray) -> np.ndarray:
    """Transfer-matrix entries for every K; returns shape (len(K), 4) as m11, m12, m21, m22."""
    K = np.asarray(K, dtype=np.float64).ravel()
    n_p = n1 + n2
    n_m = n1 - n2
    nt_p = n1 * n2 + 1.0
    nt_m = n1 * n2 - 1.0
    pre = 1.0 / (n_p * n_p - n_m * n_m)
    a_p = n_p * K / 2.0
    a_m = n_m * K / 2.0
    ep, em = np.exp(1j * a_p), np.exp(1j * a_m)
    cos_p = 0.5 * (ep + 1.0 / ep)
    cos_m = 0.5 * (em + 1.0 / em)
    sin_p = -0.5j * (ep - 1.0 / ep)
    sin_m = -0.5j * (em - 1.0 / em)
    phase = np.exp(1j * K)
    diag_c = n_p * n_p * cos_p - n_m * n_m * cos_m
    diag_s = 1j * (nt_p * n_p * sin_p + nt_m * n_m * sin_m)
    off_c = n_m * n_p * (cos_p - cos_m)
    off_s = 1j * (nt_p * n_m * sin_m + nt_m * n_p * sin_p)
    out = np.empty((K.size, 4), dtype=np.complex128)
    out[:, 0] = pre * (diag_c + diag_s) / phase
    out[:, 1] = pre * (off_c + off_s)
    out[:, 2] = pre * (off_c - off_s)
    out[:, 3] = pre * (diag_c - diag_s) * phase
    return out


def _closed_form_loop(n1, n2, K):
    n_p = n1 + n2
    n_m = n1 - n2
    nt_p = n1 * n2 + 1.0
    nt_m = n1 * n2 - 1.0
    pre = 1.0 / (n_p * n_p - n_m * n_m)
    out = np.empty((K.size, 4), dtype=np.complex128)
    for i in range(K.size):
        k = K[i]
        ep = np.exp(1j * (n_p * k / 2.0))
        em = np.exp(1j * (n_m * k / 2.0))
        cos_p = 0.5 * (ep + 1.0 / ep)
        cos_m = 0.5 * (em + 1.0 / em)
        sin_p = -0.5j * (ep - 1.0 / ep)
        sin_m = -0.5j * (em - 1.0 / em)
        phase = np.exp(1j * k)
        diag_c = n_p * n_p * cos_p - n_m * n_m * cos_m
        diag_s = 1j * (nt_p * n_p * sin_p + nt_m * n_m * sin_m)
        off_c = n_m * n_p * (cos_p - cos_m)
        off_s = 1j * (nt_p * n_m * sin_m + nt_m * n_p * sin_p)
        out[i, 0] = pre * (diag_c + diag_s) / phase
        out[i, 1] = pre * (off_c + off_s)
        out[i, 2] = pre * (off_c - off_s)
        out[i, 3] = pre * (diag_c - diag_s) * phase
    return out


# ---------------------------------------------------------------------------
# RK4 fundamental matrix of psi'' + K^2 n(z)^2 psi = 0 on z in [-1/2, 1/2]
# ---------------------------------------------------------------------------


def rk4_fundamental_numpy(n1: complex, n2: complex, K: float, half_steps: int) -> np.ndarray:
    """Exact RK4 iterate, computed as a power of the one-step matrix.

    For a piecewise-constant medium the RK4 update is the fixed linear map
    ``R = sum_j (hA)^j / j!`` (j <= 4) inside each layer, so stepping N times
    equals ``R**N``; repeated squaring keeps this fast without numba.
    """
    h = 0.5 / half_steps
    phi = np.eye(2, dtype=np.complex128)
    for n in (n1, n2):
        A = np.array([[0.0, 1.0], [-(K * n) ** 2, 0.0]], dtype=np.complex128)
        hA = h * A
        R = np.eye(2, dtype=np.complex128)
        term = np.eye(2, dtype=np.complex128)
        for j in range(1, 5):
            term = term @ hA / j
            R = R + term
        phi = np.linalg.matrix_power(R, half_steps) @ phi
    return phi


def _rk4_loop(n1, n2, K, half_steps):
    h = 0.5 / half_steps
    # columns: two independent solutions; rows: (psi, psi')
    p0, p1 = 1.0 + 0j, 0.0 + 0j
    d0, d1 = 0.0 + 0j, 1.0 + 0j
    for layer in range(2):
        n = n1 if layer == 0 else n2
        w = -(K * n) * (K * n)
        for _ in range(half_steps):
            # psi' = d, d' = w psi
            k1p0, k1p1 = d0, d1
            k1d0, k1d1 = w * p0, w * p1
            k2p0, k2p1 = d0 + 0.5 * h * k1d0, d1 + 0.5 * h * k1d1
            k2d0, k2d1 = w * (p0 + 0.5 * h * k1p0), w * (p1 + 0.5 * h * k1p1)
            k3p0, k3p1 = d0 + 0.5 * h * k2d0, d1 + 0.5 * h * k2d1
            k3d0, k3d1 = w * (p0 + 0.5 * h * k2p0), w * (p1 + 0.5 * h * k2p1)
            k4p0, k4p1 = d0 + h * k3d0, d1 + h * k3d1
            k4d0, k4d1 = w * (p0 + h * k3p0), w * (p1 + h * k3p1)
            p0 += h / 6.0 * (k1p0 + 2.0 * k2p0 + 2.0 * k3p0 + k4p0)
            p1 += h / 6.0 * (k1p1 + 2.0 * k2p1 + 2.0 * k3p1 + k4p1)
            d0 += h / 6.0 * (k1d0 + 2.0 * k2d0 + 2.0 * k3d0 + k4d0)
            d1 += h / 6.0 * (k1d1 + 2.0 * k2d1 + 2.0 * k3d1 + k4d1)
    out = np.empty((2, 2), dtype=np.complex128)
    out[0, 0], out[0, 1] = p0, p1
    out[1, 0], out[1, 1] = d0, d1
    return out


if njit is not None:
    _closed_form_jit = njit(cache=True)(_closed_form_loop)
    _rk4_jit = njit(cache=True)(_rk4_loop)

    def closed_form_numba(n1: complex, n2: complex, K: np.ndarray) -> np.ndarray:
        return _closed_form_jit(complex(n1), complex(n2), np.ascontiguousarray(K, dtype=np.float64).ravel())

    def rk4_fundamental_numba(n1: complex, n2: complex, K: float, half_steps: int) -> np.ndarray:
        return _rk4_jit(complex(n1), complex(n2), float(K), int(half_steps))

else:  # pragma: no cover
    closed_form_numba = None
    rk4_fundamental_numba = None


USING_NUMBA = njit is not None and not _DISABLE

if USING_NUMBA:
    closed_form = closed_form_numba
    rk4_fundamental = rk4_fundamental_numba
else:
    closed_form = closed_form_numpy
    rk4_fundamental = rk4_fundamental_numpy
