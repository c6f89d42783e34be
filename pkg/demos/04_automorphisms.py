"""Moebius maps, real Jacobians and invariance of the measures."""
import numpy as np

from sharpeval import BallMobius, IntegrationPlan, MeasureSpec, PolydiscMobius, Translation, UnitBall, invariance_check
from sharpeval import FullSpace, Polydisc, real_jacobian
from sharpeval.automorphisms import invariance_integrands

a = BallMobius([0.3, -0.2 + 0.4j])
z = np.array([[0.1, 0.2j]])
print("phi(phi(z)) = z :", np.allclose(a.apply(a.apply(z)), z))
print("phi(0) = z0     :", a.apply(np.zeros((1, 2)))[0])
print("real Jacobian   :", real_jacobian(a, z[0]))

# Lebesgue measure under a translation: exact rules, agreement to round-off
m = MeasureSpec(FullSpace(1))
for name, g in invariance_integrands(m).items():
    r = invariance_check(Translation([1.2 - 0.7j]), m, g, IntegrationPlan(tol=1e-10))
    print(f"C^1 translation  {name:6s} rel err {r.rel_error:.1e}")

# Invariant measures on the ball and the polydisc: Monte Carlo, judged in standard errors
for a, m in ((BallMobius([0.4 - 0.3j]), MeasureSpec(UnitBall(1), "ball-invariant")),
             (PolydiscMobius([0.5, 0.6j]), MeasureSpec(Polydisc(2), "polydisc-invariant"))):
    g = invariance_integrands(m)["abs2"]
    r = invariance_check(a, m, g, IntegrationPlan("monte-carlo", samples=200_000, seed=5))
    print(f"{type(a).__name__:15s} abs2 rel err {r.rel_error:.1e} (allowed {r.tolerance:.1e}) passed={r.passed}")
