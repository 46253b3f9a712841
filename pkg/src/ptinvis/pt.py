"""PT-symmetric invisible configurations, n1 = n2* = eta + i kappa.

Finding them takes two stages. In the first, the kappa^2/eta^2-reduced
equations are solved in closed form for kappa as a function of
(eta, K):

    kappa = +- eta sqrt( sqrt(s^4/4 + c^2) - s^2/2 ),
    s = alpha sin(K eta) - beta sin K,   c = cos(K eta) - cos K,

and the leftover condition ``K|kappa| = arccosh(eta^2 (cos K - cos K eta)/kappa^2)``
is written in log form (``F_+``) and bracketed on a K grid. In the second
stage each accepted bracket root is polished by Newton iteration on the
unreduced equations.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .core import Side, SlabConfig, invisibility_residuals
from .errors import DomainError, RangeError

log = logging.getLogger(__name__)

#: overflow guard on the argument of cosh/sinh in the exact equations
MAX_K_KAPPA = 700.0
GRID_STEP = 0.01
#: bisection runs to the float resolution of K, well below the 1e-8 bracket
#: width, so that |F| at the root can separate zeros from jumps
BISECT_XTOL = 0.0
#: accepted |F| at a bisected root; larger values mark a jump, not a zero
ROOT_F_TOL = 1e-6
#: reduced-equation residual above which a root of F is a false root
FALSE_ROOT_TOL = 1e-6
EXACT_TOL = 1e-10
MAX_K_SHIFT = 0.5
FD_REL_STEP = 1e-7


@dataclass(frozen=True)
class PTAux:
    alpha: float
    beta: float
    X: float


@dataclass(frozen=True)
class PTSolution:
    eta: float
    kappa: float
    K: float
    side: Side | None
    residuals: tuple[float, float]
    #: values from the reduced equations before Newton refinement
    kappa_approx: float
    K_approx: float
    branch: int

    @property
    def config(self) -> SlabConfig:
        n1 = complex(self.eta, self.kappa)
        return SlabConfig(n1, n1.conjugate())

    @property
    def follows_kappa_sign_rule(self) -> bool:
        """Whether gain on the left (kappa < 0) came out left-invisible, and vice versa.

        This is a cross-check only; ``side`` is always taken from the
        transfer matrix and the rule does not hold for every root.
        """
        return self.side is (Side.LEFT if self.kappa < 0 else Side.RIGHT)

    @property
    def L_over_lambda(self) -> float:
        return self.K / (2 * math.pi)


def pt_aux(eta: float, kappa: float, K: float) -> PTAux:
    if eta <= 1:
        raise DomainError(f"eta must exceed 1, got {eta!r}")
    d = eta * eta - 1
    return PTAux(alpha=(eta * eta + 1) / d, beta=2 * eta / d, X=(K * kappa) ** 2)


def exact_pt_residuals(eta: float, kappa: float, K: float) -> tuple[float, float]:
    """LHS - RHS of the unreduced real PT invisibility equations."""
    q = eta * eta + kappa * kappa
    if q <= 0:
        raise DomainError("eta^2 + kappa^2 must be positive")
    if abs(K * kappa) > MAX_K_KAPPA:
        raise RangeError(f"|K kappa| = {abs(K * kappa):.4g} exceeds {MAX_K_KAPPA}")
    Kk = K * kappa
    r1 = (eta * eta / q) * math.cos(K * eta) + (kappa * kappa / q) * math.cosh(Kk) - math.cos(K)
    r2 = 0.5 * ((1 + 1 / q) * eta * math.sin(K * eta) - (1 - 1 / q) * kappa * math.sinh(Kk)) - math.sin(K)
    return r1, r2


def reduced_pt_residuals(eta: float, kappa: float, K: float) -> tuple[float, float]:
    """Same equations with eta^2 + kappa^2 replaced by eta^2."""
    if abs(K * kappa) > MAX_K_KAPPA:
        raise RangeError(f"|K kappa| = {abs(K * kappa):.4g} exceeds {MAX_K_KAPPA}")
    Kk = K * kappa
    e2 = eta * eta
    r1 = math.cos(K * eta) + kappa * kappa * math.cosh(Kk) / e2 - math.cos(K)
    r2 = 0.5 * ((1 + 1 / e2) * eta * math.sin(K * eta) - (1 - 1 / e2) * kappa * math.sinh(Kk)) - math.sin(K)
    return r1, r2


def _kappa_array(eta: float, K: np.ndarray, sign: int) -> np.ndarray:
    d = eta * eta - 1
    alpha, beta = (eta * eta + 1) / d, 2 * eta / d
    s = alpha * np.sin(K * eta) - beta * np.sin(K)
    c = np.cos(K * eta) - np.cos(K)
    # sqrt(s^4/4 + c^2) - s^2/2 rewritten without cancellation
    den = np.sqrt(0.25 * s**4 + c * c) + 0.5 * s * s
    with np.errstate(invalid="ignore", divide="ignore"):
        inner = np.where(den > 0, c * c / den, 0.0)
    return sign * eta * np.sqrt(inner)


def kappa_of(eta: float, K: float, sign: int = -1) -> float:
    """Closed-form kappa(eta, K) solving the reduced equations; ``sign`` picks gain-left (-1) or gain-right (+1)."""
    if eta <= 1:
        raise DomainError(f"eta must exceed 1, got {eta!r}")
    if not K > 0:
        raise DomainError(f"K must be positive, got {K!r}")
    if sign not in (-1, 1):
        raise DomainError("sign must be +1 or -1")
    return float(_kappa_array(eta, np.array([float(K)]), sign)[0])


def _f_array(eta: float, K: np.ndarray, branch: int, sign: int) -> np.ndarray:
    kappa = _kappa_array(eta, K, sign)
    d = np.cos(K) - np.cos(K * eta)
    k2 = kappa * kappa
    disc = d * d - (k2 * k2) / eta**4
    out = np.full(K.shape, np.nan)
    ok = disc >= 0
    with np.errstate(divide="ignore", invalid="ignore"):
        arg = (eta * eta / k2) * (d + branch * np.sqrt(np.where(ok, disc, 0.0)))
        val = K * np.abs(kappa) - np.log(arg)
    pos = ok & (arg > 0)
    out[pos] = val[pos]
    # log argument <= 0 (or kappa = 0 with d > 0): continuous limit is -inf
    out[ok & ~(arg > 0)] = -np.inf
    out[ok & (k2 == 0)] = -np.inf
    return out


def f_branch(eta: float, K: float, branch: int = 1, sign: int = -1) -> float:
    """F_+-(eta, K) in log form.

    Returns ``-inf`` where the logarithm's argument is not positive and
    ``nan`` where the discriminant is negative. With kappa from
    :func:`kappa_of` the discriminant is nonnegative analytically, so
    ``nan`` only marks rounding residue. F is even in kappa, so ``sign``
    does not change the value.
    """
    if eta <= 1:
        raise DomainError(f"eta must exceed 1, got {eta!r}")
    if not K > 0:
        raise DomainError(f"K must be positive, got {K!r}")
    if branch not in (-1, 1):
        raise DomainError("branch must be +1 or -1")
    return float(_f_array(eta, np.array([float(K)]), branch, sign)[0])


def kappa_bound(eta: float, kappa: float) -> float:
    """Upper bound on K implied by cosh(K kappa) <= 2 eta^2 / kappa^2."""
    if eta <= 0:
        raise DomainError("eta must be positive")
    if kappa == 0:
        return math.inf
    a = abs(kappa)
    return (2 / a) * math.log(2 * eta / a)


# ---------------------------------------------------------------------------
# root scan


def _grid(eta: float, K_lo: float, K_hi: float, step: float) -> np.ndarray:
    """Uniform grid plus the local minima of cos K - cos(K eta).

    F_+ -> -inf wherever that difference touches zero, and near a double
    zero (K and K eta both close to multiples of 2 pi) the dip is far
    narrower than any practical grid step, so the minima are inserted
    explicitly.
    """
    n = max(2, int(math.ceil((K_hi - K_lo) / step)) + 1)
    K = np.linspace(K_lo, K_hi, n)
    d = np.cos(K) - np.cos(K * eta)
    extra = []
    for i in np.nonzero((d[1:-1] <= d[:-2]) & (d[1:-1] <= d[2:]))[0] + 1:
        a, b = K[i - 1], K[i + 1]
        g = (math.sqrt(5) - 1) / 2
        x1, x2 = b - g * (b - a), a + g * (b - a)
        f = lambda k: math.cos(k) - math.cos(k * eta)  # noqa: E731
        f1, f2 = f(x1), f(x2)
        while b - a > 1e-12 * max(1.0, abs(b)):
            if f1 < f2:
                b, x2, f2 = x2, x1, f1
                x1 = b - g * (b - a)
                f1 = f(x1)
            else:
                a, x1, f1 = x1, x2, f2
                x2 = a + g * (b - a)
                f2 = f(x2)
        extra.append(0.5 * (a + b))
    if extra:
        K = np.unique(np.concatenate([K, extra]))
    return K


def _bisect(fun, a: float, b: float, fa: float, xtol: float) -> float:
    neg_a = fa < 0
    while b - a > xtol:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = fun(m)
        if math.isnan(fm):
            return math.nan
        if (fm < 0) == neg_a:
            a = m
        else:
            b = m
    return 0.5 * (a + b)


def refine_pt(eta: float, kappa: float, K: float, tol: float = EXACT_TOL, max_iter: int = 50):
    """Newton iteration on the exact equations in (kappa, K) with central-difference Jacobian.

    Returns ``(kappa, K, residuals)``. Raises :class:`ArithmeticError` when
    the iteration does not reach ``tol``.
    """
    x = np.array([kappa, K], dtype=float)

    def res(v):
        return np.array(exact_pt_residuals(eta, v[0], v[1]))

    r = res(x)
    for _ in range(max_iter):
        if np.max(np.abs(r)) <= tol:
            return float(x[0]), float(x[1]), (float(r[0]), float(r[1]))
        J = np.empty((2, 2))
        for j in range(2):
            h = FD_REL_STEP * max(abs(x[j]), 1e-12)
            e = np.zeros(2)
            e[j] = h
            J[:, j] = (res(x + e) - res(x - e)) / (2 * h)
        try:
            dx = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError as exc:
            raise ArithmeticError("singular Jacobian in PT refinement") from exc
        # full Newton step; halve only when it leaves the guarded domain
        lam = 1.0
        while True:
            trial = x + lam * dx
            try:
                rt = res(trial)
            except RangeError:
                rt = None
            if rt is not None and np.all(np.isfinite(rt)):
                break
            lam *= 0.5
            if lam < 1e-6:
                raise ArithmeticError("PT refinement left the admissible domain")
        x, r = trial, rt
    if np.max(np.abs(r)) <= tol:
        return float(x[0]), float(x[1]), (float(r[0]), float(r[1]))
    raise ArithmeticError(f"PT refinement did not converge: residual {np.max(np.abs(r)):.3g}")


def approximate_roots(eta: float, K_lo: float, K_hi: float, sign: int = -1, step: float = GRID_STEP):
    """Accepted roots of F_+- as ``(K, kappa, branch)``, before exact refinement."""
    K = _grid(eta, K_lo, K_hi, step)
    found = []
    for branch in (1, -1):
        F = _f_array(eta, K, branch, sign)

        def fun(k, branch=branch):
            return float(_f_array(eta, np.array([k]), branch, sign)[0])

        for i in range(K.size - 1):
            fa, fb = F[i], F[i + 1]
            if math.isnan(fa) or math.isnan(fb) or (fa < 0) == (fb < 0):
                continue
            r = _bisect(fun, K[i], K[i + 1], fa, BISECT_XTOL)
            if math.isnan(r):
                continue
            fr = fun(r)
            if not math.isfinite(fr) or abs(fr) > ROOT_F_TOL:
                continue  # jump at the edge of the admissible domain
            kap = float(_kappa_array(eta, np.array([r]), sign)[0])
            if kap == 0 or abs(r * kap) > MAX_K_KAPPA:
                continue
            if max(abs(v) for v in reduced_pt_residuals(eta, kap, r)) > FALSE_ROOT_TOL:
                continue  # root of the non-injective log form only
            found.append((r, kap, branch))
    found.sort()
    return found


def scan_roots(eta: float, K_lo: float, K_hi: float, sign: int = -1, step: float = GRID_STEP) -> list[PTSolution]:
    """All PT-symmetric invisible points with fixed ``eta`` and K in (K_lo, K_hi)."""
    if not 0 < K_lo < K_hi:
        raise DomainError(f"need 0 < K_lo < K_hi, got {K_lo!r}, {K_hi!r}")
    if eta < 1:
        raise DomainError(f"eta must be at least 1, got {eta!r}")
    if eta == 1:
        # reduced equations force kappa = 0: the empty slab
        return []
    out: list[PTSolution] = []
    for K0, kap0, branch in approximate_roots(eta, K_lo, K_hi, sign, step):
        try:
            kap, K, res = refine_pt(eta, kap0, K0)
        except ArithmeticError as exc:
            log.debug("dropping candidate K=%.8f: %s", K0, exc)
            continue
        if abs(K - K0) > MAX_K_SHIFT or not K_lo < K < K_hi or kap * sign < 0:
            log.debug("dropping candidate K=%.8f: refinement left the bracket", K0)
            continue
        if K > kappa_bound(eta, kap):
            continue
        if any(abs(s.K - K) < 1e-7 for s in out):
            continue
        n1 = complex(eta, kap)
        side = invisibility_residuals(SlabConfig(n1, n1.conjugate()), K).side
        out.append(PTSolution(eta, kap, K, side, res, kap0, K0, branch))
    out.sort(key=lambda s: s.K)
    return out
