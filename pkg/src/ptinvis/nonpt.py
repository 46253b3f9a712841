"""Perturbative construction of non-PT-symmetric unidirectionally invisible slabs.

Write ``a+- = K n+- / 2 = x+- + i y+-`` and expand the real parts around
multiples of 2 pi:

    x+- = 2 pi m+- + gamma+- / (2 pi m+-),    K = 2 pi m0 + gamma0 / (2 pi m0).

To leading order the imaginary parts ``y+-`` follow from the integers
alone, and ``gamma+-`` from a 2x2 linear system once ``gamma0`` is fixed.
The assembled indices are then checked against the exact transfer matrix.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_L, ScatteringData, Side, SlabConfig, scattering_data, transfer_matrix, wavelength_of
from .errors import BranchError, DomainError, SingularSystemError

#: determinant threshold for the gamma system
DET_TOL = 1e-12
GAMMA0_SOFT_RANGE = (-10.0, 10.0)


@dataclass(frozen=True)
class NonPTSeed:
    m_plus: int
    m_minus: int
    m0: int
    gamma0: float = 0.0

    def __post_init__(self):
        for name in ("m_plus", "m_minus", "m0"):
            v = getattr(self, name)
            if int(v) != v:
                raise DomainError(f"{name} must be an integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        object.__setattr__(self, "gamma0", float(self.gamma0))
        if self.m_plus <= 0 or self.m0 <= 0:
            raise DomainError("m_plus and m0 must be positive")
        if abs(self.m_minus) >= self.m_plus:
            raise DomainError(f"need |m_minus| < m_plus, got {self.m_minus}, {self.m_plus}")
        if self.m0 > self.m_plus:
            raise DomainError(f"need m0 <= m_plus, got {self.m0}, {self.m_plus}")

    @property
    def feasible(self) -> bool:
        """True when a unidirectional branch exists (m0 < m+ - |m-|, m- != 0)."""
        return self.m_minus != 0 and self.m0 < self.m_plus - abs(self.m_minus)


@dataclass(frozen=True)
class NonPTIntermediates:
    mu: float
    nu: float
    nu_plus: float
    nu_minus: float
    nu0: float
    y_plus: float
    y_minus: float
    gamma_plus: float
    gamma_minus: float

    def hyperbolic_residuals(self) -> tuple[float, float]:
        """Defects of cosh y- = mu^2 (cosh y+ - 1) + 1 and sinh y- = -mu nu sinh y+."""
        r1 = math.cosh(self.y_minus) - (self.mu**2 * (math.cosh(self.y_plus) - 1) + 1)
        r2 = math.sinh(self.y_minus) + self.mu * self.nu * math.sinh(self.y_plus)
        return r1, r2


@dataclass(frozen=True)
class NonPTSolution:
    seed: NonPTSeed
    intermediates: NonPTIntermediates
    K: float
    n1: complex
    n2: complex
    side: Side | None
    x_plus: float
    x_minus: float
    #: branch requested from :func:`y_branch`
    branch: Side = Side.LEFT

    def config(self, L: float = DEFAULT_L) -> SlabConfig:
        return SlabConfig(self.n1, self.n2, L)

    def scattering(self) -> ScatteringData:
        return scattering_data(transfer_matrix(self.config(), self.K))

    def bounds(self) -> dict:
        """Exact ||T|^2 - 1|, |arg T|, |Rl|^2 and |Rr|^2 at the construction wavenumber."""
        s = self.scattering()
        return {
            "T2m1": abs(s.tCoeff - 1),
            "argT": abs(float(np.angle(s.T))),
            "Rl2": s.rlCoeff,
            "Rr2": s.rrCoeff,
        }

    def wavelength_nm(self, L: float = DEFAULT_L) -> float:
        return wavelength_of(self.K, L)


def seed_from_targets(
    eta1: float,
    eta2: float,
    K_target: float,
    gamma0: float,
    m_plus: int | None = None,
    m_minus: int | None = None,
    m0: int | None = None,
) -> NonPTSeed:
    """Nearest-integer seed for target real indices and wavenumber; any integer can be overridden."""
    if eta1 < 1 or eta2 < 1:
        raise DomainError("target real indices must be >= 1")
    if not K_target > 0:
        raise DomainError("K_target must be positive")
    if m0 is None:
        m0 = int(round(K_target / (2 * math.pi)))
    if m_plus is None:
        m_plus = int(round((eta1 + eta2) * m0 / 2))
    if m_minus is None:
        m_minus = int(round((eta1 - eta2) * m0 / 2))
    return NonPTSeed(m_plus, m_minus, m0, gamma0)


def _nus(seed: NonPTSeed):
    mp, mm, m0 = seed.m_plus, seed.m_minus, seed.m0
    den = mp * mp - mm * mm - m0 * m0
    if den == 0:
        raise SingularSystemError(f"m+^2 - m-^2 = m0^2 for seed {seed}")
    nu = (mp * mp - mm * mm + m0 * m0) / den
    return nu, 2 * mp * mp / den, 2 * mm * mm / den, 2 * mm * mp / den


def y_branch(seed: NonPTSeed, side: Side = Side.LEFT) -> tuple[float, float]:
    """Leading-order imaginary parts (y+, y-) of a+-.

    ``Side.LEFT`` takes the negative arccosh branch for y+, ``Side.RIGHT``
    the positive one, and ``Side.BOTH`` the trivial root y+- = 0.
    """
    if side is Side.BOTH:
        return 0.0, 0.0
    if not seed.feasible:
        raise BranchError(f"seed {seed} violates m0 < m+ - |m-|; only the bidirectional branch exists")
    mu = seed.m_plus / seed.m_minus
    nu = _nus(seed)[0]
    gap = mu * mu - nu * nu
    if gap == 0:
        raise SingularSystemError(f"mu^2 = nu^2 for seed {seed}")
    c = (mu * mu + nu * nu - 2) / gap
    if c < 1:
        raise BranchError(f"cosh y+ = {c:.6g} < 1 for seed {seed}")
    y_plus = math.acosh(c)
    if side is Side.LEFT:
        y_plus = -y_plus
    # sinh y- = -mu nu sinh y+ keeps the sign of m- without case analysis
    y_minus = math.asinh(-mu * nu * math.sinh(y_plus))
    return y_plus, y_minus


def gamma_system(seed: NonPTSeed, y: tuple[float, float], gamma0: float):
    """Matrix A and right-hand side b with A @ (gamma+, gamma-) = b."""
    if seed.m_minus == 0:
        raise SingularSystemError(f"m- = 0 in seed {seed}: mu is undefined")
    yp, ym = y
    mu = seed.m_plus / seed.m_minus
    nu, nu_p, nu_m, nu0 = _nus(seed)
    A = np.array(
        [
            [mu * math.sinh(yp), -math.sinh(ym)],
            [nu * math.cosh(yp), math.cosh(ym)],
        ]
    )
    b = np.array(
        [
            2 * mu * (yp - mu * ym) * (math.cosh(yp) - 1),
            ((nu + nu_p) * yp - nu0 * ym) * math.sinh(yp)
            + (nu0 * yp + (1 - nu_m) * ym) * math.sinh(ym)
            + (nu_p - nu_m) * gamma0,
        ]
    )
    return A, b


def solve_gammas(seed: NonPTSeed, y: tuple[float, float], gamma0: float) -> tuple[float, float]:
    """Solve the linearised imaginary/real-part conditions for (gamma+, gamma-)."""
    lo, hi = GAMMA0_SOFT_RANGE
    if not lo <= gamma0 <= hi:
        warnings.warn(f"gamma0 = {gamma0} is not of order 1", RuntimeWarning, stacklevel=2)
    A, b = gamma_system(seed, y, gamma0)
    if y == (0.0, 0.0):
        # first row vanishes identically: take the minimum-norm solution of the second
        sol = np.linalg.lstsq(A, b, rcond=None)[0]
        return float(sol[0]), float(sol[1])
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    if abs(det) < DET_TOL:
        raise SingularSystemError(f"gamma system is singular (det={det:.3g}) for seed {seed}")
    gp = (b[0] * A[1, 1] - A[0, 1] * b[1]) / det
    gm = (A[0, 0] * b[1] - A[1, 0] * b[0]) / det
    return float(gp), float(gm)


def assemble_config(
    seed: NonPTSeed, y: tuple[float, float], gammas: tuple[float, float], branch: Side = Side.LEFT
) -> NonPTSolution:
    """Build indices and K from the integers and the perturbative corrections."""
    vals = [*y, *gammas, seed.gamma0]
    if not all(math.isfinite(v) for v in vals):
        raise DomainError("non-finite intermediate values")
    if seed.m_minus == 0:
        raise DomainError("m- = 0 cannot be assembled: x- expansion divides by m-")
    yp, ym = y
    gp, gm = gammas
    tp, tm, t0 = 2 * math.pi * seed.m_plus, 2 * math.pi * seed.m_minus, 2 * math.pi * seed.m0
    x_plus = tp + gp / tp
    x_minus = tm + gm / tm
    K = t0 + seed.gamma0 / t0
    n_plus = 2 * complex(x_plus, yp) / K
    n_minus = 2 * complex(x_minus, ym) / K
    n1 = (n_plus + n_minus) / 2
    n2 = (n_plus - n_minus) / 2
    nu, nu_p, nu_m, nu0 = _nus(seed)
    inter = NonPTIntermediates(
        mu=seed.m_plus / seed.m_minus,
        nu=nu,
        nu_plus=nu_p,
        nu_minus=nu_m,
        nu0=nu0,
        y_plus=yp,
        y_minus=ym,
        gamma_plus=gp,
        gamma_minus=gm,
    )
    from .core import invisibility_residuals

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        side = invisibility_residuals(SlabConfig(n1, n2), K).side
    return NonPTSolution(seed, inter, K, n1, n2, side, x_plus, x_minus, branch)


def solve_nonpt(seed: NonPTSeed, side: Side = Side.LEFT) -> NonPTSolution:
    """Full three-step construction for a seed and requested branch."""
    y = y_branch(seed, side)
    gammas = solve_gammas(seed, y, seed.gamma0)
    return assemble_config(seed, y, gammas, branch=side)


# ---------------------------------------------------------------------------
# exact equations


def complex_invisibility_equations(a_plus: complex, a_minus: complex, K: float) -> tuple[complex, complex]:
    """Left-hand sides of the two complex left-invisibility conditions in (a+, a-, K)."""
    ap2, am2 = a_plus * a_plus, a_minus * a_minus
    z1 = ap2 * (np.cos(a_plus) - math.cos(K)) - am2 * (np.cos(a_minus) - math.cos(K))
    d = ap2 - am2
    z2 = (
        (d + K * K) * a_plus * np.sin(a_plus)
        + (d - K * K) * a_minus * np.sin(a_minus)
        - 2 * d * K * math.sin(K)
    )
    return complex(z1), complex(z2)


def exact_nonpt_residuals(x_plus: float, x_minus: float, y_plus: float, y_minus: float, K: float):
    """The four real left-invisibility equations, each as LHS - RHS."""
    xp, xm, yp, ym = x_plus, x_minus, y_plus, y_minus
    cxp, sxp, cxm, sxm = math.cos(xp), math.sin(xp), math.cos(xm), math.sin(xm)
    chp, shp, chm, shm = math.cosh(yp), math.sinh(yp), math.cosh(ym), math.sinh(ym)
    cK, sK = math.cos(K), math.sin(K)
    K2 = K * K
    s = xm * xm - xp * xp - ym * ym + yp * yp

    e1 = (
        (xm * xm - ym * ym) * cxm * chm
        - (xp * xp - yp * yp) * cxp * chp
        + 2 * xm * ym * sxm * shm
        - 2 * xp * yp * sxp * shp
        - s * cK
    )
    e2 = (
        2 * xm * ym * cxm * chm
        - 2 * xp * yp * cxp * chp
        - (xm * xm - ym * ym) * sxm * shm
        + (xp * xp - yp * yp) * sxp * shp
        - 2 * (xm * ym - xp * yp) * cK
    )
    pm = xm * (K2 + xm * xm - xp * xp - 3 * ym * ym + yp * yp) + 2 * xp * ym * yp
    pp = xp * (K2 - xm * xm + xp * xp + ym * ym - 3 * yp * yp) + 2 * xm * ym * yp
    qm = ym * (K2 + 3 * xm * xm - xp * xp - ym * ym + yp * yp) - 2 * xm * xp * yp
    qp = yp * (K2 - xm * xm + 3 * xp * xp + ym * ym - yp * yp) - 2 * xm * xp * ym
    e3 = pm * sxm * chm - pp * sxp * chp - qm * cxm * shm + qp * cxp * shp - 2 * K * s * sK
    e4 = qm * sxm * chm - qp * sxp * chp + pm * cxm * shm - pp * cxp * shp - 4 * K * (xm * ym - xp * yp) * sK
    return e1, e2, e3, e4
