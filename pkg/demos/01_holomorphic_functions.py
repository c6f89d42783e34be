"""Poly-exponential functions, kernel powers and translation of coefficients."""
import numpy as np

from sharpeval import PolyExp, Power, compose_translation, evaluate

# f(z) = 1 + 2 z1 z2 + 0.5 exp(z1 - i z2) on C^2
parts = (PolyExp.constant(1.0, 2), PolyExp.monomial((1, 1), 2.0), PolyExp.exponential([1.0, -1j], 0.5))
f = PolyExp([t for p in parts for t in p.terms])
z = np.array([[0.3 + 0.1j, -0.2j], [1.0, 1.0j]])
print("f      :", f.label)
print("f(z)   :", evaluate(f, z))

# Shifting the argument is done exactly on the coefficients.
shift = np.array([0.5, -0.25j])
g = compose_translation(f, shift)
print("f(z+s) :", evaluate(f, z + shift))
print("g(z)   :", evaluate(g, z))

# A zero-free power on the unit ball: (1 - <z, z0>)^(-3)
z0 = np.array([0.4, 0.2j])
k = Power(PolyExp.linear(1.0, -np.conj(z0)), -3.0)
print("kernel :", k.label, "log|k(0.5 z0)| =", float(k.log_abs(0.5 * z0[None])[0]))
