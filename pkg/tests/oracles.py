"""Independent reference computations used to freeze expected values.

Nothing here imports the package under test.
"""

import mpmath

mpmath.mp.dps = 60


def _digits(x):
    # the ascending series cancels about x / ln(10) digits
    return 60 + int(float(abs(x)) / 2.3) + 1


def series_bessel_j(nu, x, terms=2000):
    """Ascending series of J_nu(x) summed with precision scaled to x."""
    with mpmath.workdps(_digits(x)):
        return +_series_bessel_j(nu, x, terms)


def _series_bessel_j(nu, x, terms):
    nu = mpmath.mpf(nu)
    x = mpmath.mpf(x)
    half = x / 2
    total = mpmath.mpf(0)
    for j in range(terms):
        term = (-1) ** j * half ** (nu + 2 * j) / (mpmath.factorial(j) * mpmath.gamma(nu + j + 1))
        total += term
        if j > 10 and abs(term) < mpmath.mpf(10) ** -55:
            break
    return total


def series_lambda(s, x, terms=2000):
    """Normalized kernel Gamma(s+1) J_s(x) / (x/2)^s from its own series."""
    with mpmath.workdps(_digits(x)):
        return +_series_lambda(s, x, terms)


def _series_lambda(s, x, terms):
    s = mpmath.mpf(s)
    q = (mpmath.mpf(x) / 2) ** 2
    total = mpmath.mpf(0)
    term = mpmath.mpf(1)
    for j in range(terms):
        if j:
            term *= -q / (j * (s + j))
        total += term
        if j > 10 and abs(term) < mpmath.mpf(10) ** -55:
            break
    return total


def bisect_zero(f, lo, hi, iters=200):
    flo = f(lo)
    for _ in range(iters):
        mid = (lo + hi) / 2
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def first_zero_j0():
    return bisect_zero(lambda z: series_bessel_j(0, z), mpmath.mpf(2), mpmath.mpf(3))


if __name__ == "__main__":
    print("j0 first zero", mpmath.nstr(first_zero_j0(), 30))
    print("J0(2.404825557695773)", mpmath.nstr(series_bessel_j(0, mpmath.mpf("2.404825557695773")), 5))
    print("Lambda_1/2(pi)", mpmath.nstr(series_lambda(0.5, mpmath.pi), 5))
    print("check vs mpmath.besselj", series_bessel_j(2.5, 37) - mpmath.besselj(2.5, 37))
