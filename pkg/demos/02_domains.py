"""Domains, membership with a margin, and reproducible samplers."""
import numpy as np

from sharpeval import Polydisc, Sampler, UnitBall, make_domain, sample
from sharpeval.domains import boundary_distance, contains

ball = UnitBall(2)
mixed = Polydisc(2, (2.0, np.inf))
print(make_domain("polydisc", 2, radii=[2.0, "inf"]))

pts = sample(Sampler(ball, "uniform", seed=7), 100_000)
r2 = np.sum(np.abs(pts) ** 2, axis=-1)
# uniform on B^2: P(|z|^2 < 1/2) = (1/2)^2
print("fraction inside |z|^2 < 1/2:", np.mean(r2 < 0.5), "(exact 0.25)")

z = np.array([[0.6, 0.6j]])
print("in ball:", contains(ball, z, 0.0), "with margin 0.2:", contains(ball, z, 0.2))
print("distance to boundary:", boundary_distance(ball, z))

w = sample(Sampler(mixed, "weighted", seed=3, alpha=1.0), 5)
print("weighted draws on D(0,2) x C:\n", np.round(w, 3))
