"""Bessel kernel of the Kingman convolution and its mixing variable theta_s.

The kernel is the normalized Bessel function

    Lambda_s(x) = Gamma(s+1) J_s(x) / (x/2)^s,

which is the ordinary characteristic function of a symmetric law F_s on
[-1, 1] with density proportional to (1 - u^2)^(s - 1/2).  At s = -1/2 the
law is Rademacher and Lambda_s reduces to cos.

Evaluation is split in three regimes, all vectorized over x:

* ascending series of Lambda_s itself for x <= 6;
* Miller backward recurrence normalized by the Gegenbauer sum
  (x/2)^s = sum_k (s+2k) Gamma(s+k)/k! J_{s+2k}(x) for moderate x;
* Hankel asymptotic expansion once x clears ``_asymptotic_start(s)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SERIES_RTOL = 1e-17
SERIES_MAX_TERMS = 200
SERIES_CROSSOVER = 6.0
ASYMPTOTIC_CROSSOVER = 25.0

_RESCALE_AT = 1e250


class DomainError(ValueError):
    """Raised for non-finite or out-of-domain arguments."""


class UnsupportedOperation(ValueError):
    """Raised when an operation has no meaning for the atomic case s = -1/2."""


@dataclass(frozen=True)
class ShapeParam:
    """Algebra parameter s >= -1/2; ``delta`` is the effective dimension 2(s+1)."""

    s: float

    def __post_init__(self):
        s = float(self.s)
        if not math.isfinite(s) or s < -0.5:
            raise DomainError(f"shape parameter must satisfy s >= -1/2, got {self.s!r}")
        object.__setattr__(self, "s", s)

    @property
    def delta(self) -> float:
        return 2.0 * (self.s + 1.0)

    @property
    def is_atomic(self) -> bool:
        """True when theta_s is Rademacher (s = -1/2)."""
        return self.s == -0.5

    @classmethod
    def of(cls, value: "ShapeParam | float") -> "ShapeParam":
        return value if isinstance(value, cls) else cls(value)


def theta_normalizer(shape: ShapeParam | float) -> float:
    """Gamma(s+1) / (sqrt(pi) Gamma(s+1/2)), the mass constant of F_s."""
    s = ShapeParam.of(shape).s
    return math.exp(math.lgamma(s + 1.0) - math.lgamma(s + 0.5)) / math.sqrt(math.pi)


def _as_array(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


def _asymptotic_start(s: float) -> float:
    # the Hankel terms only start shrinking once x exceeds roughly nu^2 / 2
    return max(ASYMPTOTIC_CROSSOVER, 2.0 * s * s + 10.0)


def _lambda_series(s, x):
    q = 0.25 * x * x
    total = np.ones_like(x)
    term = np.ones_like(x)
    for j in range(1, SERIES_MAX_TERMS + 1):
        term = term * (-q / (j * (s + j)))
        total += term
        if np.all(np.abs(term) < SERIES_RTOL * (np.abs(total) + 1.0)):
            break
    return total


def _lambda_miller(s, x):
    """Lambda_s(x) as a ratio of unnormalized backward-recurrence values."""
    top = float(x.max())
    n_start = int(top + 8.0 * top ** (1.0 / 3.0) + 20.0)
    n_start += n_start % 2
    # weights d_k = (s+2k) Gamma(s+k) / (Gamma(s+1) k!), with d_0 = 1
    d = np.empty(n_start // 2 + 1)
    d[0] = 1.0
    g = 1.0
    for k in range(1, len(d)):
        if k > 1:
            g *= (s + k - 1) / k
        d[k] = (s + 2 * k) * g

    f_next = np.zeros_like(x)
    f_cur = np.full_like(x, 1e-30)
    acc = np.zeros_like(x)
    inv_x = 2.0 / x
    for m in range(n_start, 0, -1):
        f_prev = (s + m) * inv_x * f_cur - f_next
        f_next, f_cur = f_cur, f_prev
        order = m - 1
        if order >= 2 and order % 2 == 0:
            acc += d[order // 2] * f_cur
        big = np.abs(f_cur) > _RESCALE_AT
        if big.any():
            scale = np.where(big, 1.0 / _RESCALE_AT, 1.0)
            f_cur *= scale
            f_next *= scale
            acc *= scale
    return f_cur / (f_cur + acc)


def _bessel_asymptotic(s, x):
    """Hankel expansion of J_s(x) for large x."""
    mu = 4.0 * s * s
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    prev = np.inf
    for k in range(1, 80):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        size = float(np.max(np.abs(term)))
        if k % 2:
            q += (-1) ** (k // 2) * term
        else:
            p += (-1) ** (k // 2) * term
        if size < 1e-17 or size > prev:
            break
        prev = size
    omega = x - (0.5 * s + 0.25) * math.pi
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(omega) - q * np.sin(omega))


def _lambda_array(s: float, x: np.ndarray) -> np.ndarray:
    x = np.abs(x)
    out = np.empty_like(x)
    low = x <= SERIES_CROSSOVER
    high = x > _asymptotic_start(s)
    mid = ~(low | high)
    if low.any():
        out[low] = _lambda_series(s, x[low])
    if mid.any():
        out[mid] = _lambda_miller(s, x[mid])
    if high.any():
        xh = x[high]
        log_pref = math.lgamma(s + 1.0) - s * np.log(0.5 * xh)
        out[high] = np.exp(log_pref) * _bessel_asymptotic(s, xh)
    return out


def lambda_s(shape: ShapeParam | float, x):
    """Kernel Lambda_s(x) = Gamma(s+1) J_s(x) / (x/2)^s, with Lambda_s(0) = 1.

    Accepts a scalar or an array; Lambda_s is even so negative x is folded.
    """
    s = ShapeParam.of(shape).s
    arr = _as_array(x)
    out = _lambda_array(s, arr.reshape(-1)).reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


def bessel_j(s: float, x):
    """Bessel function of the first kind J_s(x) for s >= -1/2 and x >= 0."""
    shape = ShapeParam.of(s)
    arr = _as_array(x)
    if np.any(arr < 0):
        raise DomainError("bessel_j requires x >= 0")
    flat = arr.reshape(-1)
    lam = _lambda_array(shape.s, flat)
    if shape.s == 0.0:
        out = lam
    else:
        with np.errstate(divide="ignore"):
            log_pref = shape.s * np.log(0.5 * flat) - math.lgamma(shape.s + 1.0)
        out = np.exp(log_pref) * lam
        zero = flat == 0
        out[zero] = np.inf if shape.s < 0 else 0.0
    out = out.reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


def theta_density(shape: ShapeParam | float, u):
    """Density of theta_s: c_s (1 - u^2)^(s - 1/2) on (-1, 1), zero outside."""
    shape = ShapeParam.of(shape)
    if shape.is_atomic:
        raise UnsupportedOperation(
            "theta_s is Rademacher at s = -1/2 and has no density; "
            "use theta_sample or the two-atom representation"
        )
    arr = _as_array(u, "u")
    inside = np.abs(arr) < 1.0
    base = np.where(inside, 1.0 - arr * arr, 1.0)
    out = np.where(inside, theta_normalizer(shape) * base ** (shape.s - 0.5), 0.0)
    return float(out) if out.ndim == 0 else out


def theta_sample(shape: ShapeParam | float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw n i.i.d. copies of theta_s.

    For s > -1/2 this is 2B - 1 with B ~ Beta(s+1/2, s+1/2); at s = -1/2 the
    draws are +-1 with equal probability.
    """
    shape = ShapeParam.of(shape)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return np.empty(0)
    if shape.is_atomic:
        return np.where(rng.random(n) < 0.5, -1.0, 1.0)
    a = shape.s + 0.5
    return 2.0 * rng.beta(a, a, size=n) - 1.0
