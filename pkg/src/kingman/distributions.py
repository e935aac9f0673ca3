"""The characteristic (Maxwell/Rayleigh) measure sigma_s and radial Poisson laws."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import integrate, optimize

from .kernel import ShapeParam, lambda_s
from .measures import EmpiricalMeasure, rad_chf, radial_sum

FIT_GRID_POINTS = 40
FIT_GRID_SPAN = 8.0
FIT_MIN_SAMPLES = 1000
FIT_MIN_NONZERO = 20
FIT_MAX_RATE = 30.0
RATE_BAND = 4.0
POISSON_TAIL = 1e-17
MAX_POISSON_RATE = 700.0


class FitError(RuntimeError):
    """The sample carries no usable information about the radial Poisson parameters."""


def sigma_density(shape: ShapeParam | float, x):
    """Density 2(s+1)^(s+1)/Gamma(s+1) x^(2s+1) exp(-(s+1) x^2) of sigma_s."""
    s = ShapeParam.of(shape).s
    arr = np.asarray(x, dtype=float)
    pos = arr > 0
    xs = np.where(pos, arr, 1.0)
    log_c = math.log(2.0) + (s + 1.0) * math.log(s + 1.0) - math.lgamma(s + 1.0)
    out = np.exp(log_c + (2.0 * s + 1.0) * np.log(xs) - (s + 1.0) * xs * xs)
    at_zero = math.exp(log_c) if s == -0.5 else 0.0
    out = np.where(pos, out, np.where(arr == 0, at_zero, 0.0))
    return float(out) if out.ndim == 0 else out


def sigma_sample(shape: ShapeParam | float, n: int, rng: np.random.Generator) -> EmpiricalMeasure:
    """Draws of sigma_s as sqrt(G), G ~ Gamma(shape=s+1, rate=s+1)."""
    s = ShapeParam.of(shape).s
    return EmpiricalMeasure(np.sqrt(rng.gamma(s + 1.0, 1.0 / (s + 1.0), size=n)))


def sigma_chf(shape: ShapeParam | float, t):
    s = ShapeParam.of(shape).s
    t = np.asarray(t, dtype=float)
    out = np.exp(-t * t / (4.0 * (s + 1.0)))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class CharMeasure:
    """sigma_s bundled with its shape parameter."""

    shape: ShapeParam

    def density(self, x):
        return sigma_density(self.shape, x)

    def sample(self, n, rng):
        return sigma_sample(self.shape, n, rng)

    def chf(self, t):
        return sigma_chf(self.shape, t)

    def total_mass(self) -> float:
        mass, _ = integrate.quad(self.density, 0.0, np.inf, epsabs=1e-13, epsrel=1e-13, limit=200)
        return mass


@dataclass(frozen=True)
class RadialPoissonParams:
    """Rate ``a`` of the Poisson count and jump radius ``c``."""

    a: float
    c: float

    def __post_init__(self):
        for name in ("a", "c"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"radial Poisson parameter {name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, name, v)

    def to_dict(self) -> dict:
        return {"a": self.a, "c": self.c}


def radial_poisson_chf(p: RadialPoissonParams, shape: ShapeParam | float, t):
    """exp(a (Lambda_s(c t) - 1))."""
    t = np.asarray(t, dtype=float)
    out = np.exp(p.a * (lambda_s(shape, p.c * t) - 1.0))
    return float(out) if np.ndim(out) == 0 else out


def poisson_counts(a: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Poisson(a) counts by inversion of the cumulative table."""
    if a > MAX_POISSON_RATE:
        raise ValueError(f"Poisson rate {a} too large for table inversion")
    pmf = [math.exp(-a)]
    cdf = [pmf[0]]
    k = 0
    while 1.0 - cdf[-1] > POISSON_TAIL and k < 10 * a + 100:
        k += 1
        pmf.append(pmf[-1] * a / k)
        cdf.append(cdf[-1] + pmf[-1])
    u = rng.random(n)
    return np.minimum(np.searchsorted(np.array(cdf), u, side="right"), len(cdf) - 1)


def radial_poisson_sample(
    p: RadialPoissonParams, shape: ShapeParam | float, n: int, rng: np.random.Generator
) -> EmpiricalMeasure:
    """Draws of c (+)_s c (+)_s ... (+)_s c with a Poisson(a) number of terms.

    N = 0 gives exactly 0 and N = 1 gives exactly c.
    """
    counts = poisson_counts(p.a, n, rng)
    acc = np.where(counts >= 1, p.c, 0.0)
    for k in range(2, int(counts.max(initial=0)) + 1):
        active = counts >= k
        acc[active] = radial_sum(acc[active], p.c, shape, rng)
    return EmpiricalMeasure(acc)


class RadialPoissonFit(NamedTuple):
    params: RadialPoissonParams
    gof: float
    n: int
    objective: float

    def to_dict(self) -> dict:
        return {"a": self.params.a, "c": self.params.c, "gof": self.gof, "n": self.n}


def _initial_guess(x: np.ndarray) -> tuple[float, float]:
    n = x.size
    nonzero = x[x != 0]
    a0 = -math.log(max(1.0 - nonzero.size / n, 1.0 / n))
    values, counts = np.unique(nonzero, return_counts=True)
    if counts.max() >= 2:
        return a0, float(values[np.argmax(counts)])
    q = float(np.percentile(x, 60))
    if q <= 0:
        q = float(np.percentile(nonzero, 60))
    return a0, q / math.sqrt(max(a0, 1.0))


def rate_bounds(x: np.ndarray, shape: ShapeParam) -> tuple[float, float]:
    """Band for the rate implied by the atom at zero.

    P(X = 0) = exp(-a) for s > -1/2, so -log of the zero fraction pins a up
    to its delta-method error.  At s = -1/2 the lattice adds further zeros,
    which only bounds a from below.
    """
    n = x.size
    p0 = max(np.count_nonzero(x == 0) / n, 1.0 / n)
    a0 = -math.log(p0)
    se = math.sqrt((1.0 - p0) / (n * p0))
    lo = max(a0 - RATE_BAND * se, 1e-9)
    hi = FIT_MAX_RATE if shape.is_atomic else min(a0 + RATE_BAND * se, FIT_MAX_RATE)
    return lo, max(hi, 2.0 * lo)


def fit_grid(c0: float) -> np.ndarray:
    """Equispaced points on (0, 8/c0]."""
    return FIT_GRID_SPAN / c0 * np.arange(1, FIT_GRID_POINTS + 1) / FIT_GRID_POINTS


def fit_radial_poisson(samples: EmpiricalMeasure, shape: ShapeParam | float) -> RadialPoissonFit:
    """Least-squares match of the empirical radial ch.f. to exp(a (Lambda_s(c t) - 1)).

    The grid is 40 equispaced points on (0, 8/c0] where c0 is the initial
    jump radius.  Nelder-Mead with a restricted to :func:`rate_bounds` and
    c to (0, 20 c0]; xatol 1e-8, fatol 1e-15.

    ``gof`` is the mean over the grid of (deviation / standard error)^2 at the
    minimizer, so it does not scale with n.  ``objective`` is the raw
    minimized sum of squares.
    """
    shape = ShapeParam.of(shape)
    x = samples.samples if isinstance(samples, EmpiricalMeasure) else np.asarray(samples, dtype=float)
    if x.size < FIT_MIN_SAMPLES:
        raise FitError(f"need at least {FIT_MIN_SAMPLES} samples, got {x.size}")
    if np.count_nonzero(x) < FIT_MIN_NONZERO:
        raise FitError("rate indistinguishable from 0")
    a0, c0 = _initial_guess(x)
    a_lo, a_hi = rate_bounds(x, shape)
    grid = fit_grid(c0)
    curve = rad_chf(EmpiricalMeasure(x), shape, grid)
    target = curve.values

    def model(theta):
        a, c = theta
        return np.exp(a * (lambda_s(shape, c * grid) - 1.0))

    def objective(theta):
        return float(np.sum((target - model(theta)) ** 2))

    res = optimize.minimize(
        objective,
        x0=[min(max(a0, a_lo), a_hi), c0],
        method="Nelder-Mead",
        bounds=[(a_lo, a_hi), (1e-9 * c0, 20.0 * c0)],
        options={"xatol": 1e-8, "fatol": 1e-15, "maxiter": 4000},
    )
    se = np.maximum(curve.std_errors, 1.0 / x.size)
    gof = float(np.mean(((target - model(res.x)) / se) ** 2))
    a_hat, c_hat = res.x
    return RadialPoissonFit(RadialPoissonParams(a_hat, c_hat), gof, int(x.size), float(res.fun))
