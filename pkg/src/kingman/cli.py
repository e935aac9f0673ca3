"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails (or a fit is
impossible), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import io
from .distributions import (
    FitError,
    RadialPoissonParams,
    fit_radial_poisson,
    radial_poisson_sample,
    sigma_sample,
)
from .kernel import DomainError, ShapeParam, lambda_s, theta_sample
from .measures import (
    DiscreteMeasure,
    EmpiricalMeasure,
    MeasureError,
    measure_from_dict,
    rad_chf,
    radial_sum_sample,
)
from .tau import tau_sample
from .verify import (
    ScalePair,
    classical_reduction_check,
    gof_threshold,
    verify_cramer_levy,
    verify_homomorphism,
    verify_raikov,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    s: float
    seed: int
    n: Optional[int]
    t_max: float
    t_points: int
    output_format: str
    output_path: Optional[str]

    def __post_init__(self):
        if not (math.isfinite(self.s) and self.s >= -0.5):
            raise UsageError("--s must be >= -0.5")
        if self.t_points < 2:
            raise UsageError("--t-points must be >= 2")
        if self.n is not None and self.n < 1:
            raise UsageError("--n must be >= 1")

    @property
    def shape(self) -> ShapeParam:
        return ShapeParam(self.s)

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.t_points)

    def n_or(self, default: int) -> int:
        return default if self.n is None else self.n

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def emit(self, doc=None, header=None, rows=None) -> None:
        if self.output_format == "csv":
            io.write_text(io.csv_text(header, rows), self.output_path)
        else:
            io.write_text(io.dumps(doc), self.output_path)


def _or(value, default):
    return default if value is None else value


def _load_measure(path):
    return measure_from_dict(io.load_document(path))


def _emit_values(cfg: RunConfig, doc: dict, values) -> None:
    cfg.emit(doc, ["value"], ([v] for v in values))


def _emit_curve(cfg: RunConfig, curve) -> None:
    cfg.emit(curve.to_dict(), ["t", "value", "std_error"], curve.rows())


def cmd_kernel(cfg: RunConfig, args) -> int:
    x = np.asarray(args.x, dtype=float)
    values = np.atleast_1d(lambda_s(cfg.shape, x))
    cfg.emit({"s": cfg.s, "x": x, "value": values}, ["x", "value"], zip(x, values))
    return EXIT_OK


def cmd_sample(cfg: RunConfig, args) -> int:
    n = cfg.n_or(1000)
    rng = cfg.rng()
    if args.law == "sigma":
        m = sigma_sample(cfg.shape, n, rng)
    elif args.law == "rad_poisson":
        m = radial_poisson_sample(RadialPoissonParams(args.a, args.c), cfg.shape, n, rng)
    else:
        values = theta_sample(cfg.shape, n, rng)
        _emit_values(cfg, {"samples": values, "provenance": {"law": "theta", "s": cfg.s}}, values)
        return EXIT_OK
    _emit_values(cfg, m.to_dict(), m.samples)
    return EXIT_OK


def cmd_chf(cfg: RunConfig, args) -> int:
    _emit_curve(cfg, rad_chf(_load_measure(args.input), cfg.shape, cfg.grid))
    return EXIT_OK


def cmd_convolve(cfg: RunConfig, args) -> int:
    mu = _load_measure(args.mu)
    nu = _load_measure(args.nu)
    if args.mode == "sample":
        out = radial_sum_sample(mu, nu, cfg.shape, cfg.n_or(1000), cfg.rng())
        _emit_values(cfg, out.to_dict(), out.samples)
    else:
        _emit_curve(cfg, rad_chf(mu, cfg.shape, cfg.grid) * rad_chf(nu, cfg.shape, cfg.grid))
    return EXIT_OK


def cmd_tau(cfg: RunConfig, args) -> int:
    m = _load_measure(args.input)
    sym = tau_sample(m, cfg.shape, cfg.n_or(1000), cfg.rng())
    _emit_values(cfg, sym.to_dict(), sym.samples)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    which = args.which
    control = args.negative_control
    if which == "classical":
        report = classical_reduction_check(RadialPoissonParams(_or(args.a, 1.0), _or(args.c, 1.0)), cfg.grid)
    elif which == "homomorphism":
        mu = _load_measure(args.mu) if args.mu else DiscreteMeasure.point_mass(1.0)
        nu = _load_measure(args.nu) if args.nu else DiscreteMeasure.point_mass(2.0)
        report = verify_homomorphism(mu, nu, cfg.shape, cfg.n_or(100_000), cfg.seed, cfg.grid, control)
    elif which == "cramer_levy":
        alpha = math.sqrt(0.5) if args.alpha is None else args.alpha
        beta = math.sqrt(max(1.0 - alpha**2, 0.0)) if args.beta is None else args.beta
        try:
            pair = ScalePair(alpha, beta)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        report = verify_cramer_levy(pair, cfg.shape, cfg.n_or(100_000), cfg.seed, cfg.grid, control)
    else:
        p = RadialPoissonParams(_or(args.a, 1.8), _or(args.c, 1.3))
        split = _or(args.split, 0.389)
        if not 0.0 < split < 1.0:
            raise UsageError("--split must lie in (0, 1)")
        report = verify_raikov(p, split, cfg.shape, cfg.n_or(200_000), cfg.seed, cfg.grid, control)
    cfg.emit(report.to_dict(), ["t", "deviation", "allowance"], report.per_point)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_fit(cfg: RunConfig, args) -> int:
    m = _load_measure(args.input)
    if not isinstance(m, EmpiricalMeasure):
        raise UsageError("fit needs an empirical sample file")
    try:
        fit = fit_radial_poisson(m, cfg.shape)
    except FitError as exc:
        print(f"fit error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    doc = fit.to_dict()
    threshold = gof_threshold(cfg.shape)
    doc["gof_threshold"] = threshold
    doc["gof_passed"] = fit.gof <= threshold
    cfg.emit(doc, list(doc), [list(doc.values())])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--s", type=float, default=0.0, help="shape parameter s >= -1/2")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--n", type=int, default=None, help="sample size")
    common.add_argument("--t-max", type=float, default=10.0)
    common.add_argument("--t-points", type=int, default=40)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="output path (stdout if omitted)")

    parser = argparse.ArgumentParser(prog="kingman", description="Kingman convolution toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", parents=[common], help="evaluate Lambda_s")
    p.add_argument("x", type=float, nargs="+")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("sample", parents=[common], help="draw samples")
    p.add_argument("law", choices=("sigma", "rad_poisson", "theta"))
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("chf", parents=[common], help="radial ch.f. of a measure file")
    p.add_argument("input")
    p.set_defaults(func=cmd_chf)

    p = sub.add_parser("convolve", parents=[common], help="Kingman convolution of two measure files")
    p.add_argument("mu")
    p.add_argument("nu")
    p.add_argument("--mode", choices=("sample", "chf"), default="sample")
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("tau", parents=[common], help="symmetric image tau_s of a measure file")
    p.add_argument("input")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("verify", parents=[common], help="run a verification check")
    p.add_argument("which", choices=("homomorphism", "cramer_levy", "raikov", "classical"))
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--split", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--mu", default=None, help="measure file (homomorphism)")
    p.add_argument("--nu", default=None, help="measure file (homomorphism)")
    p.add_argument("--negative-control", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fit", parents=[common], help="fit radial Poisson parameters to a sample file")
    p.add_argument("input")
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.s, args.seed, args.n, args.t_max, args.t_points, args.format, args.out)
        return args.func(cfg, args)
    except (UsageError, io.ParseError, MeasureError, DomainError, ValueError, OSError) as exc:
        print(f"kingman: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
