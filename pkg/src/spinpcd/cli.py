"""Command-line front end: batch runs emitting self-describing CSV/JSON.

Subcommands: ``pcd`` (sign-weighted centroid histogram), ``exact``
(finite-L reference curve and zero ladders), ``chi`` (Monte Carlo
characteristic function against the matrix-trace oracle), and
``phase-scatter`` (centroid magnitude versus Berry phase).

Exit codes: 0 success, 2 usage error, 3 sign-problem failure (diagnostics
are still written).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .engine import (
    OBSERVABLE_RADIAL,
    OBSERVABLE_Z,
    RunConfig,
    estimate_chi_grid,
    phase_scatter,
    run_pcd,
)
from .estimators import SignProblemError
from .exact import smeared_wigner_radial, trotter_chi, zero_locations
from .model import HalfInteger, ModelConfig
from .output import OutputRecord

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SIGN_PROBLEM = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinpcd",
        description="Path-centroid distribution Monte Carlo for spins on the Bloch sphere.",
    )
    parser.add_argument("--version", action="version", version=f"spinpcd {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, samples_default=1_000_000):
        p.add_argument("--spin", required=True, help="spin quantum number: 0, 1/2, 1, 1.5, ...")
        p.add_argument("--vertices", type=int, required=True, help="path length L")
        p.add_argument("--samples", type=int, default=samples_default)
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--batches", type=int, default=100, help="error-bar batches")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")

    p = sub.add_parser("pcd", help="sample the path-centroid histogram")
    add_common(p)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--field", type=float, default=0.0, metavar="BZ", help="Zeeman field along z")
    p.add_argument("--observable", choices=["radial", "z"], default="radial")
    p.add_argument("--bins", type=int, default=120)
    p.add_argument("--smax", type=float, default=None, help="histogram top (default s + 1.5)")

    p = sub.add_parser("exact", help="finite-L reference curve and zero ladders")
    p.add_argument("--spin", required=True)
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--srange", default=None, metavar="LO:HI")
    p.add_argument("--points", type=int, default=400)
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("chi", help="characteristic function: Monte Carlo vs matrix trace")
    add_common(p)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--field", type=float, default=0.0, metavar="BZ")
    p.add_argument(
        "--lambda-grid",
        required=True,
        help="probe vectors 'x,y,z;x,y,z;...' conjugate to the spin symbol",
    )

    p = sub.add_parser("phase-scatter", help="centroid magnitude vs Berry phase")
    p.add_argument("--spin", required=True)
    p.add_argument("--vertices", type=int, default=3)
    p.add_argument("--points", type=int, default=1000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    return parser


def _parse_lambda_grid(text: str) -> list[tuple[float, float, float]]:
    grid = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        comps = [float(v) for v in part.split(",")]
        if len(comps) != 3:
            raise ValueError(f"probe vector {part!r} is not a 3-vector")
        grid.append(tuple(comps))
    if not grid:
        raise ValueError("empty probe grid")
    return grid


def _parse_srange(text: str | None, spin: HalfInteger) -> tuple[float, float]:
    if text is None:
        return (0.0, spin.value + 1.5)
    lo, _, hi = text.partition(":")
    return (float(lo), float(hi))


# ---------------------------------------------------------------------------
# record builders: each consumes a plain config dict so that re-running the
# embedded config reproduces the payload exactly


def record_for_config(cfg: dict) -> OutputRecord:
    return _BUILDERS[cfg["command"]](cfg)


def _run_config(cfg: dict) -> RunConfig:
    model = ModelConfig(
        spin=HalfInteger.parse(cfg["spin"]),
        beta=cfg.get("beta", 0.0),
        field=(0.0, 0.0, cfg.get("field", 0.0)),
    )
    observable = cfg.get("observable", OBSERVABLE_RADIAL)
    smax = cfg.get("smax")
    if smax is None:
        value_range = None
    elif observable == OBSERVABLE_Z:
        value_range = (-smax, smax)
    else:
        value_range = (0.0, smax)
    return RunConfig(
        model=model,
        num_vertices=cfg["vertices"],
        samples=cfg["samples"],
        seed=cfg["seed"],
        workers=cfg.get("workers", 1),
        observable=observable,
        bins=cfg.get("bins", 120),
        value_range=value_range,
        batches=cfg.get("batches", 100),
    )


def _pcd_record(cfg: dict) -> OutputRecord:
    config = _run_config(cfg)
    hist, moments, diag = run_pcd(config)
    rows = [
        [hist.edges[i], hist.edges[i + 1], hist.density[i], hist.stderr[i]]
        for i in range(len(hist.density))
    ]
    diagnostics = _diag_dict(diag)
    diagnostics.update(
        overflow_weight=hist.overflow_weight,
        overflow_count=hist.overflow_count,
        moment1=float(moments.values[1]),
        moment1_stderr=float(moments.stderr[1]),
        moment2=float(moments.values[2]),
        moment2_stderr=float(moments.stderr[2]),
    )
    return OutputRecord(
        config=cfg,
        columns=["S_lo", "S_hi", "density", "stderr"],
        rows=rows,
        diagnostics=diagnostics,
    )


def _exact_record(cfg: dict) -> OutputRecord:
    spin = HalfInteger.parse(cfg["spin"])
    lo, hi = cfg["srange"]
    grid = np.linspace(lo, hi, cfg["points"])
    dens = smeared_wigner_radial(grid, spin, cfg["vertices"])
    scale = spin.value + 1.0
    diagnostics = {"version": __version__}
    for kind in ("exact", "heuristic"):
        cos_vals = zero_locations(spin, kind).tolist() if spin.twice >= 1 else []
        diagnostics[f"{kind}_zeros_cos_theta"] = ",".join(f"{v:.17g}" for v in cos_vals)
        diagnostics[f"{kind}_zeros_S"] = ",".join(f"{scale * v:.17g}" for v in cos_vals)
    rows = [[float(s), float(d)] for s, d in zip(grid, dens)]
    return OutputRecord(config=cfg, columns=["S", "density"], rows=rows, diagnostics=diagnostics)


def _chi_record(cfg: dict) -> OutputRecord:
    config = _run_config(cfg)
    estimates = estimate_chi_grid(config, cfg["lambda_grid"])
    rows = []
    for est in estimates:
        oracle = trotter_chi(
            config.model.spin, config.model.beta, config.model.field, est.lam, config.num_vertices
        )
        rows.append(
            [
                *est.lam,
                est.value.real,
                est.value.imag,
                est.stderr_re,
                est.stderr_im,
                oracle.real,
                oracle.imag,
                est.sigma_distance(oracle),
            ]
        )
    return OutputRecord(
        config=cfg,
        columns=[
            "lambda_x",
            "lambda_y",
            "lambda_z",
            "mc_re",
            "mc_im",
            "stderr_re",
            "stderr_im",
            "oracle_re",
            "oracle_im",
            "sigma_distance",
        ],
        rows=rows,
        diagnostics={"version": __version__},
    )


def _phase_record(cfg: dict) -> OutputRecord:
    model = ModelConfig(spin=HalfInteger.parse(cfg["spin"]))
    config = RunConfig(
        model=model,
        num_vertices=cfg["vertices"],
        samples=max(1, cfg["points"]),
        seed=cfg["seed"],
    )
    pts = phase_scatter(config, cfg["points"])
    ks = _phase_uniformity(pts[:, 1])
    return OutputRecord(
        config=cfg,
        columns=["S", "phase"],
        rows=[[float(a), float(b)] for a, b in pts],
        diagnostics={"version": __version__, "phase_ks_statistic": ks},
    )


def _phase_uniformity(phases: np.ndarray) -> float:
    """Kolmogorov-Smirnov distance of the phases from uniform on (-pi, pi]."""
    u = np.sort((phases + np.pi) / (2.0 * np.pi))
    n = len(u)
    k = np.arange(1, n + 1)
    return float(np.max(np.maximum(k / n - u, u - (k - 1) / n)))


_BUILDERS = {
    "pcd": _pcd_record,
    "exact": _exact_record,
    "chi": _chi_record,
    "phase_scatter": _phase_record,
}


def _diag_dict(diag) -> dict:
    return {
        "version": __version__,
        "wall_time_s": diag.wall_time_s,
        "samples": diag.samples,
        "sum_re_w": diag.sum_re,
        "sum_abs_w": diag.sum_abs,
        "sum_im_w": diag.sum_im,
        "average_sign": diag.average_sign,
        "sign_sigma": diag.sign_sigma,
        "imag_mean": diag.imag_mean,
        "imag_sigma": diag.imag_sigma,
    }


def _config_from_args(args: argparse.Namespace) -> dict:
    if args.command == "pcd":
        return {
            "command": "pcd",
            "spin": str(HalfInteger.parse(args.spin)),
            "vertices": args.vertices,
            "samples": args.samples,
            "seed": args.seed,
            "beta": args.beta,
            "field": args.field,
            "observable": args.observable,
            "bins": args.bins,
            "smax": args.smax,
            "workers": args.workers,
            "batches": args.batches,
        }
    if args.command == "exact":
        spin = HalfInteger.parse(args.spin)
        return {
            "command": "exact",
            "spin": str(spin),
            "vertices": args.vertices,
            "srange": list(_parse_srange(args.srange, spin)),
            "points": args.points,
        }
    if args.command == "chi":
        return {
            "command": "chi",
            "spin": str(HalfInteger.parse(args.spin)),
            "vertices": args.vertices,
            "samples": args.samples,
            "seed": args.seed,
            "beta": args.beta,
            "field": args.field,
            "lambda_grid": [list(v) for v in _parse_lambda_grid(args.lambda_grid)],
            "workers": args.workers,
            "batches": args.batches,
        }
    return {
        "command": "phase_scatter",
        "spin": str(HalfInteger.parse(args.spin)),
        "vertices": args.vertices,
        "points": args.points,
        "seed": args.seed,
    }


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except (ValueError, ZeroDivisionError) as err:
        parser.exit(EXIT_USAGE, f"error: {err}\n")
    try:
        record = record_for_config(cfg)
    except SignProblemError as err:
        diagnostics = {"version": __version__, "error": f"sign-problem failure: {err}"}
        if err.diagnostics is not None:
            diagnostics.update(_diag_dict(err.diagnostics))
        record = OutputRecord(config=cfg, columns=[], rows=[], diagnostics=diagnostics)
        record.write(args.out, as_json=args.json)
        print("sign-problem failure: no normalized output", file=sys.stderr)
        return EXIT_SIGN_PROBLEM
    record.write(args.out, as_json=args.json)
    return EXIT_OK


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
