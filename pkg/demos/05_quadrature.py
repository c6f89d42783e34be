"""Polar Gauss rules and Monte Carlo on the reference densities."""
import math

import numpy as np

from sharpeval import IntegrationPlan, integrate
from sharpeval.quadrature import BallRef, DiscFactor, GaussFactor, ProductRef

# Gaussian moment: integral of |z|^4 exp(-|z|^2) over C is 2 pi
r = integrate(IntegrationPlan(tol=1e-12), GaussFactor(1.0), lambda z: np.abs(z[:, 0]) ** 4)
print("Gauss |z|^4       :", r.value, "exact", 2 * math.pi, r.method, r.budget_used, "nodes")

# Jacobi weight on the disc: mass of (1-|z|^2)^(1/2) is pi / 1.5
r = integrate(IntegrationPlan(tol=1e-12), DiscFactor(0.5), lambda z: np.ones(len(z)))
print("disc mass         :", r.value, "exact", math.pi / 1.5)

# Log-space sums keep huge integrands finite: log of integral exp(40 Re z) exp(-|z|^2)
r = integrate(IntegrationPlan(tol=1e-10), GaussFactor(1.0), lambda z: 40 * z[:, 0].real, log=True)
print("log integral      :", r.log_value, "exact", math.log(math.pi) + 400)

# The same target by Monte Carlo, with a standard-error estimate
ref = ProductRef((GaussFactor(1.0), DiscFactor(0.0, 2.0)))
g = lambda z: np.abs(z[:, 0]) ** 2 + np.abs(z[:, 1]) ** 2
det = integrate(IntegrationPlan(tol=1e-12), ref, g)
mc = integrate(IntegrationPlan("monte-carlo", samples=1 << 18, seed=11), ref, g)
print("product, rules    :", det.value)
print("product, MC       :", mc.value, "+/-", mc.error_estimate)
print("ball B^3 mass     :", integrate(IntegrationPlan(), BallRef(3), lambda z: np.ones(len(z))).value,
      "exact", math.pi ** 3 / 6)
