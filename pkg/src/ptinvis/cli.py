"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 no solutions found, 4 numeric
range error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings

import numpy as np

from . import analysis, bidir, core, io, nonpt, oracle, pt
from .errors import (
    BranchError,
    DomainError,
    RangeError,
    SingularPrefactorError,
    SingularSystemError,
    SpecError,
    SpectralSingularityError,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_SOLUTION = 3
EXIT_RANGE = 4


class NoSolution(Exception):
    pass


def _round(obj, digits):
    if digits is None:
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}") if math.isfinite(obj) else obj
    if isinstance(obj, dict):
        return {k: _round(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v, digits) for v in obj]
    return obj


def _cplx(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _emit(obj, args) -> None:
    json.dump(_round(obj, args.digits), sys.stdout, indent=2, allow_nan=True)
    sys.stdout.write("\n")


def _config(args) -> core.SlabConfig:
    """Config from --config, then individual flags on top."""
    base = {}
    if args.config:
        c = io.load_config(args.config)
        base = {"n1": c.n1, "n2": c.n2, "L": c.L}
    if args.n1 is not None:
        base["n1"] = io.parse_complex(args.n1)
    if args.n2 is not None:
        base["n2"] = io.parse_complex(args.n2)
    if args.L_um is not None:
        base["L"] = io.L_from_um(args.L_um)
    if "n1" not in base or "n2" not in base:
        raise DomainError("n1 and n2 are required (flags or --config)")
    return core.SlabConfig(base["n1"], base["n2"], base.get("L", core.DEFAULT_L))


def _solution_dict(s: pt.PTSolution, L: float) -> dict:
    return {
        "eta": s.eta,
        "kappa": s.kappa,
        "K": s.K,
        "lambda_nm": core.wavelength_of(s.K, L),
        "L_over_lambda": s.L_over_lambda,
        "side": None if s.side is None else s.side.value,
        "residuals": list(s.residuals),
        "kappa_approx": s.kappa_approx,
        "K_approx": s.K_approx,
        "follows_kappa_sign_rule": s.follows_kappa_sign_rule,
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_scan(args):
    req = io.ScanRequest(_config(args), args.K_lo, args.K_hi, args.samples, None)
    table = io.run_scan(req)
    text = io.format_csv(table)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_solve_pt(args):
    sols = pt.scan_roots(args.eta, args.K_lo, args.K_hi, sign=args.sign)
    L = io.L_from_um(args.L_um) if args.L_um is not None else core.DEFAULT_L
    _emit([_solution_dict(s, L) for s in sols], args)
    if not sols:
        raise NoSolution(f"no PT solutions for eta={args.eta} in ({args.K_lo}, {args.K_hi})")


def cmd_solve_nonpt(args):
    if args.m_plus is None or args.m_minus is None or args.m0 is None:
        if args.eta1 is None or args.eta2 is None or args.K_target is None:
            raise DomainError("give either --m-plus/--m-minus/--m0 or --eta1/--eta2/--K-target")
        seed = nonpt.seed_from_targets(
            args.eta1, args.eta2, args.K_target, args.gamma0, args.m_plus, args.m_minus, args.m0
        )
    else:
        seed = nonpt.NonPTSeed(args.m_plus, args.m_minus, args.m0, args.gamma0)
    side = core.Side(args.side)
    sol = nonpt.solve_nonpt(seed, side)
    L = io.L_from_um(args.L_um) if args.L_um is not None else core.DEFAULT_L
    i = sol.intermediates
    _emit(
        {
            "seed": {"m_plus": seed.m_plus, "m_minus": seed.m_minus, "m0": seed.m0, "gamma0": seed.gamma0},
            "y_plus": i.y_plus,
            "y_minus": i.y_minus,
            "gamma_plus": i.gamma_plus,
            "gamma_minus": i.gamma_minus,
            "K": sol.K,
            "lambda_nm": core.wavelength_of(sol.K, L),
            "n1": _cplx(sol.n1),
            "n2": _cplx(sol.n2),
            "side": None if sol.side is None else sol.side.value,
            "bounds": sol.bounds(),
        },
        args,
    )


def cmd_bidir(args):
    L = io.L_from_um(args.L_um) if args.L_um is not None else core.DEFAULT_L
    spec = bidir.BidirSpec(args.m, args.m1, args.m2, L)
    cfg, K, lam = bidir.bidirectional_config(spec)
    M = core.transfer_matrix(cfg, K)
    _emit(
        {
            "n1": cfg.n1.real,
            "n2": cfg.n2.real,
            "K": K,
            "lambda_nm": lam,
            "identity_error": float(np.max(np.abs(M.array - np.eye(2)))),
            "vacuum_layer": spec.has_vacuum_layer,
        },
        args,
    )


def cmd_band(args):
    cfg = _config(args)
    band = analysis.reflectionless_band(cfg, args.lambda_lo, args.lambda_hi, args.threshold, args.lambda_star)
    _emit(
        {
            "lambda_min": band.lambda_min,
            "lambda_max": band.lambda_max,
            "width": band.width,
            "threshold": band.threshold,
            "lambda_star": band.lambda_star,
        },
        args,
    )
    if band.is_empty:
        raise NoSolution("no sub-threshold band around the invisibility point")


def cmd_verify(args):
    rep = analysis.verify_duality(_config(args), args.K)
    _emit(rep.as_dict(), args)


def cmd_oracle_check(args):
    cfg = _config(args)
    steps = args.steps or oracle.IntegrationGrid.required_steps(args.K) * 4
    grid = oracle.IntegrationGrid(steps)
    M = oracle.integrate_transfer_matrix(cfg, args.K, grid)
    _emit(
        {
            "K": args.K,
            "steps": grid.steps,
            "deviation": oracle.oracle_deviation(cfg, args.K, grid),
            "det_error": abs(M.det() - 1),
            "numba": oracle._kernels.USING_NUMBA,
        },
        args,
    )


# ---------------------------------------------------------------------------


def _add_config_flags(p):
    p.add_argument("--config", help="JSON file with n1, n2 and L_um")
    p.add_argument("--n1", help="complex index of the left layer, e.g. 3.4-0.003422j")
    p.add_argument("--n2", help="complex index of the right layer")
    p.add_argument("--L-um", dest="L_um", type=float, help="slab thickness in micrometers (default 300)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=None, help="round JSON output to this many significant digits")
    p = argparse.ArgumentParser(prog="ptinvis", description="Invisibility of two-layer complex slabs")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scan", parents=[common], help="spectral scan to CSV")
    _add_config_flags(s)
    s.add_argument("--K-lo", dest="K_lo", type=float, required=True)
    s.add_argument("--K-hi", dest="K_hi", type=float, required=True)
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("-o", "--output", default=None, help="CSV path (default stdout)")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("solve-pt", parents=[common], help="PT-symmetric invisible points for fixed eta")
    s.add_argument("--eta", type=float, required=True)
    s.add_argument("--K-lo", dest="K_lo", type=float, default=1995.0)
    s.add_argument("--K-hi", dest="K_hi", type=float, default=2005.0)
    s.add_argument("--sign", type=int, choices=(-1, 1), default=-1, help="sign of kappa (-1: gain on the left)")
    s.add_argument("--L-um", dest="L_um", type=float)
    s.set_defaults(func=cmd_solve_pt)

    s = sub.add_parser("solve-nonpt", parents=[common], help="perturbative non-PT construction")
    s.add_argument("--m-plus", dest="m_plus", type=int)
    s.add_argument("--m-minus", dest="m_minus", type=int)
    s.add_argument("--m0", type=int)
    s.add_argument("--eta1", type=float)
    s.add_argument("--eta2", type=float)
    s.add_argument("--K-target", dest="K_target", type=float)
    s.add_argument("--gamma0", type=float, required=True)
    s.add_argument("--side", choices=("left", "right", "both"), default="left")
    s.add_argument("--L-um", dest="L_um", type=float)
    s.set_defaults(func=cmd_solve_nonpt)

    s = sub.add_parser("bidir", parents=[common], help="rational-index bidirectional construction")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--m1", type=int, required=True)
    s.add_argument("--m2", type=int, required=True)
    s.add_argument("--L-um", dest="L_um", type=float)
    s.set_defaults(func=cmd_bidir)

    s = sub.add_parser("band", parents=[common], help="reflectionless band from the left")
    _add_config_flags(s)
    s.add_argument("--lambda-lo", dest="lambda_lo", type=float, required=True)
    s.add_argument("--lambda-hi", dest="lambda_hi", type=float, required=True)
    s.add_argument("--threshold", type=float, default=1e-4)
    s.add_argument("--lambda-star", dest="lambda_star", type=float, default=None)
    s.set_defaults(func=cmd_band)

    s = sub.add_parser("verify", parents=[common], help="PT and time-reversal duality check")
    _add_config_flags(s)
    s.add_argument("--K", type=float, required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle-check", parents=[common], help="compare closed form with RK4 integration")
    _add_config_flags(s)
    s.add_argument("--K", type=float, required=True)
    s.add_argument("--steps", type=int, default=None)
    s.set_defaults(func=cmd_oracle_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            args.func(args)
    except NoSolution as exc:
        print(f"ptinvis: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except (RangeError, SingularPrefactorError, SpectralSingularityError, SingularSystemError) as exc:
        print(f"ptinvis: numeric error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except (DomainError, SpecError, BranchError, ValueError) as exc:
        print(f"ptinvis: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"ptinvis: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
