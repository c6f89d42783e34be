"""Moving a point with an automorphism: the two equalities behind the transfer."""
import numpy as np

from sharpeval import IntegrationPlan, PolyExp, PolydiscMobius, SchemeSpec, Translation, fock_space, polydisc_space
from sharpeval import scheme_check
from sharpeval.estimates import scheme_bound_check

s = fock_space(1.0, 1, 2.0)
a = Translation([0.8 - 0.3j])
spec = SchemeSpec.holomorphic(s, a)
f = PolyExp.linear(1.0, [1.0])  # u = ln|1 + z|, subharmonic with a singularity at -1
r1, r2 = scheme_check(spec, f.log_abs, [0], a.z0, IntegrationPlan("monte-carlo", samples=400_000, seed=1))
print("Fock, pointwise identity :", r1.verdict, r1.lhs, r1.rhs)
print("Fock, integral identity  :", r2.verdict, r2.lhs, "vs", r2.rhs, "tol", r2.tolerance)
print("Fock, transferred bound  :", scheme_bound_check(spec, f.log_abs, a.z0).verdict)

s = polydisc_space((0.0, 1.0), 2.0)
a = PolydiscMobius([0.4j, -0.3])
spec = SchemeSpec.holomorphic(s, a)
u = lambda z: np.log(np.abs(2.0 + z[..., 0] * z[..., 1]))
r1, r2 = scheme_check(spec, u, [0, 0], a.z0)
print("polydisc, identities     :", r1.verdict, r2.verdict, f"(gap {abs(r2.lhs - r2.rhs):.1e})")
