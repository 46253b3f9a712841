"""JSON slab configs, spectral scans and their CSV form."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from decimal import Decimal

import numpy as np

from .core import DEFAULT_L, SlabConfig, transfer_matrices
from .errors import DomainError

CSV_COLUMNS = ("K", "lambda_nm", "T2m1", "argT", "Rl2", "Rr2")
_L_PLACEHOLDER = "__L_UM__"


def parse_complex(text) -> complex:
    """Accept 3.4-0.003422j, 3.4-0.003422i, a bare real, or a {"re", "im"} mapping."""
    if isinstance(text, dict):
        try:
            return complex(float(text["re"]), float(text.get("im", 0.0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"bad complex mapping {text!r}") from exc
    if isinstance(text, (int, float, complex)):
        return complex(text)
    s = str(text).strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError as exc:
        raise DomainError(f"cannot parse complex number {text!r}") from exc


def config_to_json(config: SlabConfig) -> str:
    """Serialize; ``parse_config(config_to_json(c)) == c`` holds exactly.

    Thickness is stored in micrometers. The decimal text of ``L`` is shifted
    by six places rather than multiplied in binary, so no rounding occurs.
    """
    doc = {
        "n1": {"re": config.n1.real, "im": config.n1.imag},
        "n2": {"re": config.n2.real, "im": config.n2.imag},
        "L_um": _L_PLACEHOLDER,
    }
    L_um = Decimal(repr(config.L)).scaleb(6).normalize()
    # plain digits for ordinary thicknesses, exponent form for extreme ones
    text = format(L_um, "f") if -20 <= L_um.adjusted() <= 20 else str(L_um)
    return json.dumps(doc).replace(f'"{_L_PLACEHOLDER}"', text)


def L_from_um(value) -> float:
    return float(Decimal(str(value)).scaleb(-6))


def config_from_mapping(doc: dict) -> SlabConfig:
    try:
        n1 = parse_complex(doc["n1"])
        n2 = parse_complex(doc["n2"])
    except KeyError as exc:
        raise DomainError(f"config is missing {exc.args[0]!r}") from exc
    L = L_from_um(doc["L_um"]) if "L_um" in doc else DEFAULT_L
    return SlabConfig(n1, n2, L)


def parse_config(text: str) -> SlabConfig:
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON config: {exc}") from exc
    if not isinstance(doc, dict):
        raise DomainError("config must be a JSON object")
    return config_from_mapping(doc)


def load_config(path: str | os.PathLike) -> SlabConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRequest:
    config: SlabConfig
    K_lo: float
    K_hi: float
    samples: int = 10_000
    output: str | None = None

    def __post_init__(self):
        if not 0 < self.K_lo < self.K_hi:
            raise DomainError(f"need 0 < K_lo < K_hi, got {self.K_lo!r}, {self.K_hi!r}")
        if int(self.samples) != self.samples or self.samples < 2:
            raise DomainError("samples must be an integer >= 2")


def scan_table(config: SlabConfig, K) -> np.ndarray:
    """Rows of (K, lambda_nm, |T|^2 - 1, arg T, |Rl|^2, |Rr|^2) for each K."""
    K = np.atleast_1d(np.asarray(K, dtype=np.float64))
    M = transfer_matrices(config, K)
    m12, m21, m22 = M[:, 1], M[:, 2], M[:, 3]
    T = 1.0 / m22
    out = np.empty((K.size, 6))
    out[:, 0] = K
    out[:, 1] = 2 * math.pi * config.L / K * 1e9
    out[:, 2] = np.abs(T) ** 2 - 1
    out[:, 3] = np.angle(T)
    out[:, 4] = np.abs(m21 / m22) ** 2
    out[:, 5] = np.abs(m12 / m22) ** 2
    return out


def run_scan(req: ScanRequest) -> np.ndarray:
    table = scan_table(req.config, np.linspace(req.K_lo, req.K_hi, int(req.samples)))
    if req.output is not None:
        write_csv(table, req.output)
    return table


def format_csv(table: np.ndarray) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in table:
        lines.append(",".join(f"{v:.11e}" for v in row))
    return "\n".join(lines) + "\n"


def write_csv(table: np.ndarray, path: str | os.PathLike) -> None:
    # OSError propagates to the caller
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_csv(table))


def read_csv(path: str | os.PathLike) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        if tuple(header) != CSV_COLUMNS:
            raise DomainError(f"unexpected CSV header {header}")
        return np.loadtxt(fh, delimiter=",", ndmin=2)
