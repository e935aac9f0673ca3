"""Measures on [0, inf), radial characteristic functions and the Kingman convolution.

The convolution mu *_s nu is never materialized.  It is reachable through
expectations (:func:`convolve_expect`, Gauss-Jacobi quadrature over the
angular variable) and through sampling (:func:`radial_sum_sample`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
from scipy.special import roots_jacobi

from .io import ParseError
from .kernel import ShapeParam, lambda_s, theta_normalizer, theta_sample

GAUSS_JACOBI_NODES = 64
WEIGHT_TOL = 1e-12
RADICAND_TOL = 1e-12


class MeasureError(ValueError):
    """Invalid measure construction."""


class EvaluationError(ArithmeticError):
    """An integrand returned a non-finite value."""


class DiscreteMeasure:
    """Finite mixture of point masses; duplicate locations are merged."""

    kind = "discrete"

    def __init__(self, locations, weights=None):
        loc = np.atleast_1d(np.asarray(locations, dtype=float))
        if loc.size == 0:
            raise MeasureError("discrete measure needs at least one atom")
        w = np.full(loc.size, 1.0 / loc.size) if weights is None else np.atleast_1d(np.asarray(weights, dtype=float))
        if w.shape != loc.shape:
            raise MeasureError("locations and weights differ in length")
        if not (np.all(np.isfinite(loc)) and np.all(loc >= 0)):
            raise MeasureError("atom locations must be finite and nonnegative")
        if not (np.all(np.isfinite(w)) and np.all(w > 0)):
            raise MeasureError("atom weights must be positive")
        if abs(w.sum() - 1.0) > WEIGHT_TOL:
            raise MeasureError(f"weights sum to {w.sum()!r}, not 1")
        uniq, inverse = np.unique(loc, return_inverse=True)
        self.locations = uniq
        self.weights = np.bincount(inverse, weights=w)

    @classmethod
    def point_mass(cls, c: float) -> "DiscreteMeasure":
        return cls([c], [1.0])

    @classmethod
    def from_atoms(cls, atoms) -> "DiscreteMeasure":
        atoms = list(atoms)
        return cls([a[0] for a in atoms], [a[1] for a in atoms])

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        if self.locations.size == 1:
            return np.full(n, self.locations[0])
        idx = rng.choice(self.locations.size, size=n, p=self.weights / self.weights.sum())
        return self.locations[idx]

    def scaled(self, factor: float) -> "DiscreteMeasure":
        return DiscreteMeasure(self.locations * factor, self.weights)

    def to_dict(self) -> dict:
        return {"type": "discrete", "atoms": [[x, w] for x, w in zip(self.locations, self.weights)]}

    def __repr__(self):
        return f"DiscreteMeasure(locations={self.locations.tolist()}, weights={self.weights.tolist()})"


class EmpiricalMeasure:
    """Uniform law on a stored sample set."""

    kind = "empirical"

    def __init__(self, samples):
        x = np.asarray(samples, dtype=float).reshape(-1)
        if x.size == 0:
            raise MeasureError("empirical measure needs at least one sample")
        if not (np.all(np.isfinite(x)) and np.all(x >= 0)):
            raise MeasureError("samples must be finite and nonnegative")
        self.samples = x

    def __len__(self):
        return self.samples.size

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return self.samples[rng.integers(0, self.samples.size, size=n)]

    def scaled(self, factor: float) -> "EmpiricalMeasure":
        return EmpiricalMeasure(self.samples * factor)

    def to_dict(self) -> dict:
        return {"type": "empirical", "samples": self.samples}

    def __repr__(self):
        return f"EmpiricalMeasure(n={self.samples.size})"


Measure = Union[DiscreteMeasure, EmpiricalMeasure]


def measure_from_dict(doc) -> Measure:
    if not isinstance(doc, dict):
        raise ParseError("measure document must be a JSON object")
    kind = doc.get("type")
    try:
        if kind == "discrete":
            return DiscreteMeasure.from_atoms(doc["atoms"])
        if kind == "empirical":
            return EmpiricalMeasure(doc["samples"])
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed {kind} measure: {exc}") from None
    raise ParseError(f"unknown measure type {kind!r}")


@dataclass
class RadChfCurve:
    """A radial characteristic function on a grid, with Monte Carlo errors if estimated."""

    t_grid: np.ndarray
    values: np.ndarray
    std_errors: Optional[np.ndarray] = None

    def rows(self):
        se = self.std_errors
        for k, t in enumerate(self.t_grid):
            yield t, self.values[k], None if se is None else se[k]

    def to_csv(self) -> str:
        from .io import csv_text

        return csv_text(["t", "value", "std_error"], self.rows())

    def to_dict(self) -> dict:
        return {
            "t": self.t_grid,
            "value": self.values,
            "std_error": None if self.std_errors is None else self.std_errors,
        }

    def __mul__(self, other: "RadChfCurve") -> "RadChfCurve":
        if not np.array_equal(self.t_grid, other.t_grid):
            raise ValueError("curves live on different grids")
        values = self.values * other.values
        if self.std_errors is None and other.std_errors is None:
            return RadChfCurve(self.t_grid, values)
        se1 = np.zeros_like(values) if self.std_errors is None else self.std_errors
        se2 = np.zeros_like(values) if other.std_errors is None else other.std_errors
        se = np.hypot(other.values * se1, self.values * se2)
        return RadChfCurve(self.t_grid, values, se)


def t_grid(t_max: float, points: int, start: float = 0.0) -> np.ndarray:
    return np.linspace(start, t_max, points)


def rad_chf(m: Measure, shape: ShapeParam | float, grid) -> RadChfCurve:
    """Radial characteristic function t -> int Lambda_s(t x) m(dx) on ``grid``."""
    shape = ShapeParam.of(shape)
    grid = np.asarray(grid, dtype=float)
    if isinstance(m, DiscreteMeasure):
        kern = lambda_s(shape, np.outer(grid, m.locations))
        return RadChfCurve(grid, kern @ m.weights)
    x = m.samples
    values = np.empty(grid.size)
    se = np.empty(grid.size)
    for k, t in enumerate(grid):
        v = lambda_s(shape, t * x)
        values[k] = v.mean()
        se[k] = v.std(ddof=1) / np.sqrt(x.size) if x.size > 1 else 0.0
    return RadChfCurve(grid, values, se)


def angular_rule(shape: ShapeParam | float, nodes: int = GAUSS_JACOBI_NODES):
    """Nodes and probability weights integrating against the law of theta_s."""
    shape = ShapeParam.of(shape)
    if shape.is_atomic:
        return np.array([-1.0, 1.0]), np.array([0.5, 0.5])
    alpha = shape.s - 0.5
    u, w = roots_jacobi(nodes, alpha, alpha)
    return u, w * theta_normalizer(shape)


def _radical(x, y, u):
    # (x + u y)^2 + (1 - u^2) y^2 == x^2 + 2uxy + y^2, but both terms are >= 0;
    # dividing by max(x, y) first keeps tiny or huge radii from under/overflowing
    x, y, u = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, y, u)))
    m = np.maximum(np.abs(x), np.abs(y))
    safe = np.where(m > 0, m, 1.0)
    xs, ys = x / safe, y / safe
    rad = (xs + u * ys) ** 2 + (1.0 - u * u) * ys * ys
    if np.any(rad < -RADICAND_TOL * (np.abs(xs) + np.abs(ys)) ** 2):
        raise AssertionError("negative radicand beyond rounding")
    return m * np.sqrt(np.maximum(rad, 0.0))


def convolve_expect(
    f: Callable[[np.ndarray], np.ndarray],
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    shape: ShapeParam | float,
    nodes: int = GAUSS_JACOBI_NODES,
) -> float:
    """Integral of f against mu *_s nu for discrete mu and nu.

    ``f`` is called once on an array of radii and must be vectorized.
    """
    if not (isinstance(mu, DiscreteMeasure) and isinstance(nu, DiscreteMeasure)):
        raise TypeError("convolve_expect needs discrete measures")
    u, w = angular_rule(shape, nodes)
    x = mu.locations[:, None, None]
    y = nu.locations[None, :, None]
    r = _radical(x, y, u[None, None, :])
    vals = np.broadcast_to(np.asarray(f(r), dtype=float), r.shape)
    if not np.all(np.isfinite(vals)):
        raise EvaluationError("integrand returned non-finite values")
    inner = vals @ w
    return float(mu.weights @ inner @ nu.weights)


def radial_sum(x, y, shape: ShapeParam | float, rng: np.random.Generator) -> np.ndarray:
    """Pathwise radial sum sqrt(x^2 + y^2 + 2 x y theta) with fresh theta per pair."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    theta = theta_sample(shape, x.size, rng).reshape(x.shape)
    return _radical(x, y, theta)


def radial_sum_sample(
    x_src: Measure, y_src: Measure, shape: ShapeParam | float, n: int, rng: np.random.Generator
) -> EmpiricalMeasure:
    """n i.i.d. draws of X (+)_s Y with X ~ x_src and Y ~ y_src independent."""
    x = x_src.sample(n, rng)
    y = y_src.sample(n, rng)
    return EmpiricalMeasure(radial_sum(x, y, shape, rng))
