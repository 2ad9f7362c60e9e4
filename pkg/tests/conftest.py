"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the library's own quadrature and search
machinery: Parseval sums, coefficient formulas, high-order fixed quadrature,
and scipy adaptive integration serve as the second route for every dual-route
check.
"""

import numpy as np
import pytest

from blochdisk import HarmonicMap, Polynomial


def parseval_mean_sq(coefficients, r):
    """M_2(r, f)^2 for a polynomial via sum |a_n|^2 r^(2n)."""
    return float(sum(abs(c) ** 2 * r ** (2 * n)
                     for n, c in enumerate(coefficients)))


def g_sq_oracle(coefficients, zeta):
    """Square of the radial square-function for a polynomial, coefficient form.

    With derivative coefficients c_j = (j+1) a_{j+1}:
    sum_{j,k} c_j conj(c_k) zeta^(j-k) (1/(j+k+1) - 1/(j+k+2)).
    """
    c = [(j + 1) * coefficients[j + 1] for j in range(len(coefficients) - 1)]
    total = 0.0 + 0.0j
    for j, cj in enumerate(c):
        for k, ck in enumerate(c):
            total += cj * np.conjugate(ck) * zeta ** (j - k) \
                * (1.0 / (j + k + 1) - 1.0 / (j + k + 2))
    return float(total.real)


def path_integral(integrand, z, panels=8, nodes=32):
    """Composite Gauss-Legendre integral of integrand along the segment [0, z]."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    total = 0.0 + 0.0j
    for k in range(panels):
        a, b = k / panels, (k + 1) / panels
        t = 0.5 * (a + b) + 0.5 * (b - a) * x
        total += 0.5 * (b - a) * np.sum(w * integrand(t * z) * z)
    return complex(total)


def random_polynomial_pair(rng, degree=12):
    """A harmonic map with random polynomial parts; conjugate part vanishes at 0."""
    hc = rng.uniform(-1, 1, degree + 1) + 1j * rng.uniform(-1, 1, degree + 1)
    gc = rng.uniform(-1, 1, degree + 1) + 1j * rng.uniform(-1, 1, degree + 1)
    gc[0] = 0.0
    return HarmonicMap(Polynomial(tuple(hc)), Polynomial(tuple(gc)))


def disk_samples(rng, n, r_max=0.999):
    radius = r_max * np.sqrt(rng.random(n))
    angle = 2.0 * np.pi * rng.random(n)
    return radius * np.exp(1j * angle)


class ReciprocalGap:
    """Duck-typed analytic map 1/(1 - z); derivative blows up at the boundary."""

    kind = "test-reciprocal"

    def eval(self, z):
        return 1.0 / (1.0 - np.asarray(z, dtype=complex)) \
            if isinstance(z, np.ndarray) else 1.0 / (1.0 - z)

    def deriv(self, z):
        return 1.0 / (1.0 - np.asarray(z, dtype=complex)) ** 2 \
            if isinstance(z, np.ndarray) else 1.0 / (1.0 - z) ** 2


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
