"""Induced geometry of the axisymmetric horizon cross-section.

Restricting the spacetime metric to a horizon radius r0 (where the radial
horizon function vanishes) at fixed time leaves a metric on a topological
2-sphere:

    ds^2 = A(theta) dtheta^2 + B(theta) dphi^2,
    A = rho^2 / dtheta_fac,
    B = dtheta_fac sin^2(theta) (r0^2 + a^2)^2 / (rho^2 xi^2),

with rho^2 = r0^2 + a^2 cos^2(theta), dtheta_fac = 1 + (lam/3) a^2
cos^2(theta) and xi = 1 + lam a^2 / 3.  The area element simplifies to
sqrt(A B) = (r0^2 + a^2) sin(theta) / xi, giving the closed-form area
4 pi (r0^2 + a^2) / xi; the quadrature route below recomputes it from the
coefficient functions as an independent check.  At a = 0 the coefficients
collapse to the round sphere of radius r0.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotAHorizon
from .params import Parameters
from .roots import HorizonPolynomial, eval_poly, residual_tolerance


@dataclass(frozen=True)
class CrossSectionMetric:
    """Coefficient functions of the horizon cross-section metric."""

    r0: float
    a: float
    lam: float

    @property
    def xi(self):
        return 1.0 + self.lam * self.a * self.a / 3.0

    def g_theta_theta(self, theta):
        """Polar coefficient A(theta); accepts scalars or numpy arrays."""
        c2 = np.cos(theta) ** 2
        rho2 = self.r0 ** 2 + self.a ** 2 * c2
        dfac = 1.0 + (self.lam / 3.0) * self.a ** 2 * c2
        return rho2 / dfac

    def g_phi_phi(self, theta):
        """Azimuthal coefficient B(theta); accepts scalars or numpy arrays."""
        c2 = np.cos(theta) ** 2
        s2 = np.sin(theta) ** 2
        rho2 = self.r0 ** 2 + self.a ** 2 * c2
        dfac = 1.0 + (self.lam / 3.0) * self.a ** 2 * c2
        return dfac * s2 * (self.r0 ** 2 + self.a ** 2) ** 2 / (rho2 * self.xi ** 2)

    @property
    def area(self):
        """Closed-form surface area 4 pi (r0^2 + a^2) / xi."""
        return 4.0 * math.pi * (self.r0 ** 2 + self.a ** 2) / self.xi

    def area_by_quadrature(self, n: int = 64) -> float:
        """Surface area from Gauss-Legendre quadrature of sqrt(A B).

        Uses the coefficient functions directly (not the simplified area
        element) so it cross-checks the closed form.  Legendre nodes crowd
        toward the interval ends, i.e. toward the poles, where the area
        element degenerates.
        """
        x, w = np.polynomial.legendre.leggauss(n)
        theta = (x + 1.0) * (math.pi / 2.0)
        integrand = np.sqrt(self.g_theta_theta(theta) * self.g_phi_phi(theta))
        return float(2.0 * math.pi * (math.pi / 2.0) * np.dot(w, integrand))


def cross_section(params: Parameters, r0: float) -> CrossSectionMetric:
    """Cross-section metric at radius r0, gated on r0 being a horizon.

    Raises NotAHorizon when the horizon function residual |D(r0)| exceeds
    the same gate the root isolator enforces.
    """
    p = HorizonPolynomial.from_params(params)
    res = eval_poly(p, r0)
    if abs(res) > residual_tolerance(params.lam, r0):
        raise NotAHorizon(
            "radius %r is not a horizon: |D(r0)| = %.3e exceeds the residual gate"
            % (r0, abs(res))
        )
    return CrossSectionMetric(r0=r0, a=params.a, lam=params.lam)


def surface_charge(params: Parameters) -> float:
    """Charge of the horizon cross-section, q / xi."""
    return params.q / params.xi
