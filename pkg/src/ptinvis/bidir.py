"""Bidirectionally invisible slabs with rational real indices.

At ``K = pi m`` with ``a+- = pi m'+-``, where ``m'+- = m1 +- m2`` share the
parity of m, every off-diagonal entry vanishes and the diagonal entries
reduce to 1. Hence ``n1 = 2 m1 / m``, ``n2 = 2 m2 / m`` and ``lambda = 2L/m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DEFAULT_L, SlabConfig, wavelength_of
from .errors import DomainError, SpecError

RESONANCE_TOL = 1e-9


@dataclass(frozen=True)
class BidirSpec:
    m: int
    m1: int
    m2: int
    L: float = DEFAULT_L

    def __post_init__(self):
        for name in ("m", "m1", "m2"):
            v = getattr(self, name)
            if int(v) != v:
                raise SpecError(f"{name} must be an integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if self.m <= 0:
            raise SpecError("m must be positive")
        if not self.L > 0:
            raise SpecError("L must be positive")
        if (self.m1 + self.m2 - self.m) % 2 or (self.m1 - self.m2 - self.m) % 2:
            raise SpecError(f"m1 +- m2 = {self.m1 + self.m2}, {self.m1 - self.m2} must share the parity of m = {self.m}")
        if self.m1 == self.m2:
            raise SpecError("equal layers are invisible only for the empty slab")
        if 2 * self.m1 < self.m or 2 * self.m2 < self.m:
            raise SpecError(f"indices 2m1/m = {2 * self.m1 / self.m}, 2m2/m = {2 * self.m2 / self.m} must be >= 1")

    @property
    def n1(self) -> float:
        return 2 * self.m1 / self.m

    @property
    def n2(self) -> float:
        return 2 * self.m2 / self.m

    @property
    def has_vacuum_layer(self) -> bool:
        """One layer with n = 1: a degenerate but physical single-slab case."""
        return 2 * self.m1 == self.m or 2 * self.m2 == self.m


def bidirectional_config(spec: BidirSpec) -> tuple[SlabConfig, float, float]:
    """Return ``(config, K, wavelength_nm)``; the transfer matrix is the identity at K."""
    K = math.pi * spec.m
    return SlabConfig(spec.n1, spec.n2, spec.L), K, wavelength_of(K, spec.L)


def is_half_integer_resonance(K: float) -> bool:
    """True when K / pi is an integer, i.e. L is a half-integer multiple of lambda."""
    if not K > 0:
        raise DomainError(f"K must be positive, got {K!r}")
    q = K / math.pi
    return abs(q - round(q)) <= RESONANCE_TOL
