"""Averaged form of the bound with an increasing convex outer function."""
import numpy as np

from sharpeval import ball_space, extremal_function, fock_space, integrated_bound_check
from sharpeval.geometry import random_polyexp

rng = np.random.default_rng(4)
s = fock_space(1.0, 1, 2.0)
f = random_polyexp(rng, 1)
for F in ("identity", "square", "log1p"):
    r = integrated_bound_check(f, s, F, [0.5 - 0.2j], 0.8)
    print(f"Fock  F={F:8s} ratio {r.ratio:.6f} {r.verdict}")

# Shrinking the averaging ball around z0 concentrates on the pointwise case
z0 = np.array([1.0 + 0.5j])
g = extremal_function(s, z0)
for rad in (1.0, 0.3, 0.05):
    print(f"extremal, radius {rad:4.2f}: ratio {integrated_bound_check(g, s, 'square', z0, rad).ratio:.6f}")

b = ball_space(2, 0.5, 2.0)
r = integrated_bound_check(random_polyexp(rng, 2), b, "log1p", [0.2j, 0.1], 0.4)
print("ball  F=log1p    ratio", f"{r.ratio:.6f}", r.verdict)
