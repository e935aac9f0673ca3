"""The tau_s map from laws on [0, inf) to symmetric laws on the line.

tau_s(G) is the law of X * theta_s with X ~ G independent of theta_s, i.e. the
scale mixture of F_s by G.  It turns the Kingman convolution into ordinary
convolution, and the radial ch.f. of G into the Fourier transform of tau_s(G).
Everything here is sample based.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kernel import ShapeParam, theta_sample
from .measures import DiscreteMeasure, Measure, RadChfCurve

SYMMETRY_Z = 5.0


class AsymmetryError(ValueError):
    """Imaginary part of an empirical ch.f. exceeds its noise allowance."""


@dataclass
class SymmetricSample:
    samples: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float).reshape(-1)
        if self.samples.size == 0:
            raise ValueError("symmetric sample is empty")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("symmetric sample has non-finite values")

    def __len__(self):
        return self.samples.size

    def to_dict(self) -> dict:
        return {"samples": self.samples, "provenance": self.provenance}


def _describe(m: Measure, shape: ShapeParam) -> dict:
    desc = {"measure": m.kind, "s": shape.s}
    if isinstance(m, DiscreteMeasure):
        desc["atoms"] = m.to_dict()["atoms"]
    else:
        desc["source_size"] = len(m)
    return desc


def tau_pathwise(x, shape: ShapeParam | float, rng: np.random.Generator, provenance=None) -> SymmetricSample:
    """Multiply each radius by its own fresh theta_s draw."""
    shape = ShapeParam.of(shape)
    x = np.asarray(x, dtype=float)
    prov = {"s": shape.s} if provenance is None else provenance
    return SymmetricSample(x * theta_sample(shape, x.size, rng), prov)


def tau_sample(m: Measure, shape: ShapeParam | float, n: int, rng: np.random.Generator) -> SymmetricSample:
    """n i.i.d. draws from tau_s(m)."""
    shape = ShapeParam.of(shape)
    x = m.sample(n, rng)
    return tau_pathwise(x, shape, rng, _describe(m, shape))


def symmetric_chf(sym: SymmetricSample, grid) -> RadChfCurve:
    """Empirical ch.f. (real part) of a symmetric sample with standard errors.

    Raises AsymmetryError if the imaginary part is more than 5 standard
    errors from zero at any grid point.
    """
    grid = np.asarray(grid, dtype=float)
    v = sym.samples
    n = v.size
    values = np.empty(grid.size)
    se = np.empty(grid.size)
    for k, t in enumerate(grid):
        c = np.cos(t * v)
        s = np.sin(t * v)
        values[k] = c.mean()
        se[k] = c.std(ddof=1) / np.sqrt(n) if n > 1 else 0.0
        se_im = s.std(ddof=1) / np.sqrt(n) if n > 1 else 0.0
        if abs(s.mean()) > SYMMETRY_Z * se_im + 1e-12:
            raise AsymmetryError(f"imaginary part {s.mean():.3g} at t={t:g} exceeds {SYMMETRY_Z:g} SE ({se_im:.3g})")
    return RadChfCurve(grid, values, se)


def ordinary_convolve_samples(
    u: SymmetricSample, v: SymmetricSample, rng: np.random.Generator | None, resample: bool = True
) -> SymmetricSample:
    """Draws of U + V with U, V independent.

    With ``resample`` both inputs are resampled with replacement to the larger
    size.  Without it the inputs must be independent and equally long, and
    are added elementwise.
    """
    prov = {"convolution": [u.provenance, v.provenance]}
    if not resample:
        if len(u) != len(v):
            raise ValueError("elementwise convolution needs equal sample sizes")
        return SymmetricSample(u.samples + v.samples, prov)
    if rng is None:
        raise ValueError("resampling needs a generator")
    n = max(len(u), len(v))
    a = u.samples[rng.integers(0, len(u), size=n)]
    b = v.samples[rng.integers(0, len(v), size=n)]
    return SymmetricSample(a + b, prov)
