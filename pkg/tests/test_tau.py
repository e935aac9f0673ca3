import math

import numpy as np
import pytest
from scipy import stats

from kingman.distributions import RadialPoissonParams, radial_poisson_sample, sigma_sample
from kingman.kernel import lambda_s
from kingman.measures import DiscreteMeasure, EmpiricalMeasure, rad_chf, radial_sum_sample
from kingman.tau import (
    AsymmetryError,
    SymmetricSample,
    ordinary_convolve_samples,
    symmetric_chf,
    tau_pathwise,
    tau_sample,
)

GRID = np.linspace(0, 10, 20)
SHAPES = [-0.5, 0.0, 1.0]


def _within(curve, target, other_se=None):
    se = curve.std_errors if other_se is None else np.hypot(curve.std_errors, other_se)
    return np.all(np.abs(curve.values - target) <= np.maximum(4 * se, 1e-12))


def test_point_mass_at_zero(rng):
    sym = tau_sample(DiscreteMeasure.point_mass(0.0), 1.0, 1000, rng)
    assert np.all(sym.samples == 0.0)


def test_point_mass_at_one_atomic_shape(rng):
    sym = tau_sample(DiscreteMeasure.point_mass(1.0), -0.5, 1000, rng)
    assert set(np.unique(sym.samples)) == {-1.0, 1.0}


@pytest.mark.parametrize("s", [-0.5, 0.0, 1.0, 2.5])
def test_point_mass_chf_is_kernel(s, rng):
    c = 1.4
    curve = symmetric_chf(tau_sample(DiscreteMeasure.point_mass(c), s, 100_000, rng), GRID)
    assert _within(curve, lambda_s(s, c * GRID))


@pytest.mark.parametrize("s", SHAPES)
def test_fourier_transform_equals_radial_chf(s, rng):
    g = radial_poisson_sample(RadialPoissonParams(1.1, 1.3), s, 100_000, rng)
    left = symmetric_chf(tau_sample(g, s, 100_000, rng), GRID)
    right = rad_chf(g, s, GRID)
    assert _within(left, right.values, right.std_errors)


def test_provenance_recorded(rng):
    m = DiscreteMeasure([1.0, 2.0], [0.5, 0.5])
    sym = tau_sample(m, 1.0, 10, rng)
    assert sym.provenance["measure"] == "discrete"
    assert sym.provenance["s"] == 1.0
    assert set(sym.to_dict()) == {"samples", "provenance"}


def test_symmetric_sample_validation():
    with pytest.raises(ValueError):
        SymmetricSample([])
    with pytest.raises(ValueError):
        SymmetricSample([0.0, math.inf])


def test_symmetric_chf_detects_asymmetry(rng):
    shifted = SymmetricSample(rng.normal(1.0, 1.0, 50_000))
    with pytest.raises(AsymmetryError):
        symmetric_chf(shifted, GRID)


def test_ordinary_convolution_rademacher():
    # enumerate all four sign pairs: U + V takes -2, 0, 0, 2
    u = SymmetricSample([-1.0, -1.0, 1.0, 1.0])
    v = SymmetricSample([-1.0, 1.0, -1.0, 1.0])
    out = ordinary_convolve_samples(u, v, None, resample=False)
    np.testing.assert_array_equal(np.sort(out.samples), [-2.0, 0.0, 0.0, 2.0])
    with pytest.raises(ValueError):
        ordinary_convolve_samples(u, SymmetricSample([1.0]), None, resample=False)
    with pytest.raises(ValueError):
        ordinary_convolve_samples(u, v, None)


def test_ordinary_convolution_resampled(rng):
    n = 100_000
    u = SymmetricSample(rng.normal(0, 1, n))
    v = SymmetricSample(rng.normal(0, 2, n // 2))
    out = ordinary_convolve_samples(u, v, rng)
    assert len(out) == n
    assert abs(np.var(out.samples) - 5.0) <= 0.1


@pytest.mark.parametrize("s", SHAPES)
def test_homomorphism(s, rng):
    n = 100_000
    mu = DiscreteMeasure([0.5, 1.5], [0.4, 0.6])
    nu = DiscreteMeasure([0.0, 2.0, 3.0], [0.2, 0.5, 0.3])
    radii = radial_sum_sample(mu, nu, s, n, rng)
    left = symmetric_chf(tau_pathwise(radii.samples, s, rng), GRID)
    right = symmetric_chf(
        ordinary_convolve_samples(tau_sample(mu, s, n, rng), tau_sample(nu, s, n, rng), None, resample=False), GRID
    )
    assert _within(left, right.values, right.std_errors)


@pytest.mark.parametrize("s", SHAPES)
def test_mixture_linearity(s, rng):
    n = 100_000
    alpha = 0.3
    mu = DiscreteMeasure([0.5, 1.5], [0.4, 0.6])
    nu = DiscreteMeasure([2.0, 3.0], [0.5, 0.5])
    mix = DiscreteMeasure(
        np.concatenate([mu.locations, nu.locations]),
        np.concatenate([alpha * mu.weights, (1 - alpha) * nu.weights]),
    )
    left = symmetric_chf(tau_sample(mix, s, n, rng), GRID)
    right = alpha * rad_chf(mu, s, GRID).values + (1 - alpha) * rad_chf(nu, s, GRID).values
    assert _within(left, right)


@pytest.mark.parametrize("s", [0.0, 1.0, 2.5])
def test_gaussian_image(s, rng):
    n = 200_000
    v = tau_sample(sigma_sample(s, n, rng), s, n, rng).samples
    target_var = 1 / (2 * (s + 1))
    se_var = math.sqrt((np.mean(v**4) - np.var(v) ** 2) / n)
    assert abs(np.var(v, ddof=1) - target_var) <= 4 * se_var
    kurt = stats.kurtosis(v, fisher=False)
    assert abs(kurt - 3.0) <= 4 * math.sqrt(24 / n)
    curve = symmetric_chf(SymmetricSample(v), GRID)
    assert _within(curve, np.exp(-GRID**2 / (4 * (s + 1))))


def test_sigma_image_variance_at_one(rng):
    n = 100_000
    v = tau_sample(sigma_sample(1.0, n, rng), 1.0, n, rng).samples
    se = math.sqrt((np.mean(v**4) - np.var(v) ** 2) / n)
    assert abs(np.var(v, ddof=1) - 0.25) <= 4 * se


def test_symmetrization_at_atomic_shape(rng):
    n = 50_000
    source = radial_poisson_sample(RadialPoissonParams(2.0, 0.5), 1.0, n, rng)
    sym = tau_pathwise(source.samples, -0.5, rng)
    np.testing.assert_array_equal(np.abs(sym.samples), source.samples)
    # signs are fair coin flips independent of the radius
    nz = source.samples > 0
    signs = np.sign(sym.samples[nz])
    assert abs(signs.mean()) <= 4 / math.sqrt(nz.sum())
    # |tau(m)| drawn afresh matches m in law
    fresh = np.abs(tau_sample(EmpiricalMeasure(source.samples), -0.5, n, rng).samples)
    assert stats.ks_2samp(fresh, source.samples).pvalue > 0.001
