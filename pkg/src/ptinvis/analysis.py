"""Reflectionless bands and duality checks built on the core kernels."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    Side,
    SlabConfig,
    invisibility_residuals,
    pt_transform,
    time_reverse,
    transfer_matrices,
    transfer_matrix,
)
from .errors import DomainError

BAND_SAMPLES = 10_000
EDGE_TOL_NM = 1e-6


@dataclass(frozen=True)
class BandResult:
    lambda_min: float
    lambda_max: float
    threshold: float
    #: wavelength the band was grown from
    lambda_star: float = math.nan

    @property
    def width(self) -> float:
        return self.lambda_max - self.lambda_min if not self.is_empty else 0.0

    @property
    def is_empty(self) -> bool:
        return math.isnan(self.lambda_min)


def _rl2(config: SlabConfig, lam_nm) -> np.ndarray:
    lam = np.atleast_1d(np.asarray(lam_nm, dtype=np.float64))
    K = 2 * np.pi * config.L / (lam * 1e-9)
    M = transfer_matrices(config, K)
    return np.abs(M[:, 2] / M[:, 3]) ** 2


def _edge(config, inside: float, outside: float, threshold: float) -> float:
    """Bisect between a sub-threshold and an above-threshold wavelength."""
    while abs(outside - inside) > EDGE_TOL_NM:
        mid = 0.5 * (inside + outside)
        if _rl2(config, mid)[0] < threshold:
            inside = mid
        else:
            outside = mid
    return inside


def reflectionless_band(
    config: SlabConfig,
    lambda_lo: float,
    lambda_hi: float,
    threshold: float = 1e-4,
    lambda_star: float | None = None,
    samples: int = BAND_SAMPLES,
) -> BandResult:
    """Largest contiguous wavelength interval around ``lambda_star`` with |Rl|^2 < threshold.

    ``lambda_star`` defaults to the sampled wavelength of least |Rl|^2.
    Uses ``config.L`` for the K <-> lambda conversion.
    """
    if not 0 < lambda_lo < lambda_hi:
        raise DomainError("need 0 < lambda_lo < lambda_hi")
    if not threshold > 0:
        raise DomainError("threshold must be positive")
    lam = np.linspace(lambda_lo, lambda_hi, samples)
    if lambda_star is not None:
        if not lambda_lo <= lambda_star <= lambda_hi:
            raise DomainError("lambda_star must lie inside the scanned range")
        lam = np.unique(np.append(lam, lambda_star))
    r = _rl2(config, lam)
    i0 = int(np.argmin(r)) if lambda_star is None else int(np.searchsorted(lam, lambda_star))
    star = float(lam[i0])
    if not r[i0] < threshold:
        return BandResult(math.nan, math.nan, threshold, star)
    below = r < threshold
    lo = i0
    while lo > 0 and below[lo - 1]:
        lo -= 1
    hi = i0
    while hi < lam.size - 1 and below[hi + 1]:
        hi += 1
    lam_min = float(lam[lo]) if lo == 0 else _edge(config, lam[lo], lam[lo - 1], threshold)
    lam_max = float(lam[hi]) if hi == lam.size - 1 else _edge(config, lam[hi], lam[hi + 1], threshold)
    return BandResult(lam_min, lam_max, threshold, star)


@dataclass
class DualityReport:
    K: float
    side: Side | None
    side_pt: Side | None
    side_conj: Side | None
    #: ||m21(c)| - |m12(c*)|| and ||m12(c)| - |m21(c*)||
    conj_gap: float
    statement_i: bool
    statement_ii: bool
    residuals: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.statement_i and self.statement_ii

    def as_dict(self) -> dict:
        name = lambda s: None if s is None else s.value  # noqa: E731
        return {
            "K": self.K,
            "side": name(self.side),
            "side_pt": name(self.side_pt),
            "side_conj": name(self.side_conj),
            "conj_gap": self.conj_gap,
            "statement_i": self.statement_i,
            "statement_ii": self.statement_ii,
            "residuals": self.residuals,
        }


def verify_duality(config: SlabConfig, K: float) -> DualityReport:
    """Check that PT keeps the side of invisibility and conjugation mirrors it."""
    pt, conj = pt_transform(config), time_reverse(config)
    res = {lab: invisibility_residuals(c, K) for lab, c in (("config", config), ("pt", pt), ("conj", conj))}
    s, s_pt, s_conj = res["config"].side, res["pt"].side, res["conj"].side
    M, Mc = transfer_matrix(config, K), transfer_matrix(conj, K)
    gap = max(abs(abs(M.m21) - abs(Mc.m12)), abs(abs(M.m12) - abs(Mc.m21)))
    st_i = s_pt == s
    st_ii = (s_conj is None) if s is None else s_conj is s.mirrored()
    return DualityReport(
        K=float(K),
        side=s,
        side_pt=s_pt,
        side_conj=s_conj,
        conj_gap=float(gap),
        statement_i=st_i,
        statement_ii=st_ii,
        residuals={k: v.as_dict() for k, v in res.items()},
    )
