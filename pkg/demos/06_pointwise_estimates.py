"""The sharp pointwise bound, its extremals and the best constant delta0."""
import numpy as np

from sharpeval import (IntegrationPlan, PolyExp, ball_space, delta0_estimate, extremal_function, fock_space,
                       pointwise_bound_check, polydisc_space, sharpness_check)
from sharpeval.geometry import random_polyexp

rng = np.random.default_rng(0)
s = fock_space(1.0, 2, 1.0)

print("random functions at random points (ratio = lhs / rhs <= 1):")
for _ in range(4):
    f = random_polyexp(rng, 2)
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    r = pointwise_bound_check(f, s, z)
    print(f"  {r.verdict:12s} ratio {r.ratio:.6f}")

# Kernel-type extremals reach the bound
for sp, z0 in ((s, np.array([1.0, -0.5j])), (ball_space(3, -0.5, 1.0), np.array([0.5, 0.3j, -0.2])),
               (polydisc_space((0.0, 1.0), 2.0, (2.0, np.inf)), np.array([1.1j, 0.7]))):
    r = sharpness_check(extremal_function(sp, z0), sp, z0, 1e-3, IntegrationPlan(tol=1e-9))
    print(f"extremal on {sp.geometry:8s} n={sp.n}: ratio {r.ratio:.12f} ({r.verdict})")

# delta0: the worst ratio over a family at the origin, constants included
fam = [random_polyexp(rng, 1) for _ in range(20)] + [PolyExp.constant(1.0, 1)]
print("delta0 estimate on the Fock line:", delta0_estimate(fock_space(1.0, 1, 2.0), fam))
