"""Weights, normalising constants and the closed-form factor psi."""
import numpy as np

from sharpeval import (BallBergmanWeight, BallMobius, FockWeight, Translation, ball_space, fock_space,
                       normalization, pluriharmonicity_residual, psi_representative)

for s in (fock_space(1.0, 1, 2.0), ball_space(2, 0.5, 2.0)):
    print(s.geometry, "n =", s.n, "N =", normalization(s).value)

# psi is holomorphic with ln|psi| = w - w o a
for w, a in ((FockWeight.isotropic(2.0, 1), Translation([1.0 - 0.5j])),
             (BallBergmanWeight(0.0, 2.0, 1), BallMobius([0.5]))):
    psi = psi_representative(w, a)
    z = np.array([[0.1 + 0.2j], [-0.3j]])
    print(type(w).__name__, "ln|psi| =", psi.log_abs(z), " w - w o a =", w(z) - w(a.apply(z)))

# The disc example: weight -ln(1-|z|^2) moved by phi_{1/2}, evaluated at 0
print("ln|psi(0)| =", float(psi.log_abs(np.zeros((1, 1)))[0]), "vs -ln(4/3) =", -np.log(4 / 3))

# g = w - w o a is pluriharmonic, so the complex Laplacian stencil is O(h^2)
w, a = BallBergmanWeight(0.7, 1.5, 2), BallMobius([0.2, -0.3j])
for h in (1e-2, 1e-3):
    print(f"stencil residual h={h:g}:", pluriharmonicity_residual(w, a, [0.1, 0.2j], [1.0, 0.0], h))
