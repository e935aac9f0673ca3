"""Numerics for the Kingman convolution algebra on [0, inf).

Bessel kernel and its mixing variable (``kernel``), measures and radial
characteristic functions (``measures``), the characteristic and radial
Poisson laws (``distributions``), the symmetric image tau_s (``tau``) and
Monte Carlo checks of the convolution identities (``verify``).
"""

from .distributions import (
    CharMeasure,
    FitError,
    RadialPoissonFit,
    RadialPoissonParams,
    fit_radial_poisson,
    radial_poisson_chf,
    radial_poisson_sample,
    sigma_chf,
    sigma_density,
    sigma_sample,
)
from .kernel import ShapeParam, bessel_j, lambda_s, theta_density, theta_sample
from .measures import (
    DiscreteMeasure,
    EmpiricalMeasure,
    RadChfCurve,
    convolve_expect,
    rad_chf,
    radial_sum,
    radial_sum_sample,
)
from .tau import SymmetricSample, ordinary_convolve_samples, symmetric_chf, tau_sample
from .verify import (
    ScalePair,
    VerifyReport,
    classical_reduction_check,
    verify_cramer_levy,
    verify_homomorphism,
    verify_raikov,
)

__version__ = "0.1.0"
