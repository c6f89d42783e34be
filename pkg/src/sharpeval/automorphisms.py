"""Point-moving automorphisms a with a(0) = z0, and checks of measure invariance."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .domains import FullSpace, Polydisc, UnitBall, contains, make_domain
from .geometry import as_point, inner, norm2
from .quadrature import IntegrationPlan, integrate


class DomainError(ValueError):
    pass


class Automorphism:
    z0: np.ndarray

    @property
    def n(self) -> int:
        return len(self.z0)

    @property
    def domain(self):
        raise NotImplementedError

    def _map(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def apply(self, z) -> np.ndarray:
        z = as_point(z, self.n)
        if not np.all(contains(self.domain, z, 0.0)):
            raise DomainError(f"{self!r}: point outside {self.domain}")
        return self._map(z)

    __call__ = apply

    def __repr__(self):
        return f"{type(self).__name__}(z0={np.round(self.z0, 6).tolist()})"


class Translation(Automorphism):
    def __init__(self, z0):
        self.z0 = as_point(z0).copy()

    @property
    def domain(self):
        return FullSpace(self.n)

    def _map(self, z):
        return z + self.z0


class BallMobius(Automorphism):
    """Involutive ball automorphism exchanging 0 and z0.

    phi(z) = (z0 - P z - s Q z) / (1 - <z, z0>), with P the orthogonal
    projection onto span(z0), Q = I - P and s = sqrt(1 - |z0|^2).
    """

    def __init__(self, z0):
        self.z0 = as_point(z0).copy()
        if not norm2(self.z0) < 1:
            raise DomainError("ball Mobius centre must lie in the open ball")

    @property
    def domain(self):
        return UnitBall(self.n)

    def _map(self, z):
        a = self.z0
        aa = float(norm2(a))
        if aa == 0.0:
            return -z
        za = inner(z, a)[..., None]
        # project onto the unit vector a/|a|; dividing by |a|^2 underflows for tiny a
        u = a / np.linalg.norm(a)
        pz = inner(z, u)[..., None] * u
        s = math.sqrt(1.0 - aa)
        return (a - pz - s * (z - pz)) / (1.0 - za)


class PolydiscMobius(Automorphism):
    """Coordinatewise disc automorphisms on prod r_j D; translations where r_j is infinite."""

    def __init__(self, z0, radii=None):
        self.z0 = as_point(z0).copy()
        radii = (1.0,) * self.n if radii is None else tuple(
            math.inf if isinstance(r, str) else float(r) for r in radii
        )
        if len(radii) != self.n:
            raise ValueError("radii/z0 dimension mismatch")
        self.radii = radii
        r = np.asarray(radii)
        self._fin = np.isfinite(r)
        self._r2 = np.where(self._fin, r, 1.0) ** 2
        if np.any(self._fin & (np.abs(self.z0) >= np.where(self._fin, r, np.inf))):
            raise DomainError("polydisc Mobius centre must lie in the open polydisc")

    @property
    def domain(self):
        return make_domain("polydisc", self.n, self.radii)

    @property
    def involutive(self) -> bool:
        return bool(self._fin.all())

    def _map(self, z):
        a = self.z0
        with np.errstate(divide="ignore", invalid="ignore"):
            mob = (a - z) / (1.0 - z * np.conj(a) / self._r2)
        return np.where(self._fin, mob, z + a)


class Homothety(Automorphism):
    """Coordinatewise scaling z_j -> factors_j * z_j. Fixes 0.

    ``Homothety.to_unit(radii)`` carries prod r_j D onto the unit polydisc in
    the finite coordinates and is the identity where r_j is infinite.
    """

    def __init__(self, factors):
        self.factors = np.asarray(factors, dtype=float)
        if np.any(~(self.factors > 0)) or not np.all(np.isfinite(self.factors)):
            raise ValueError("homothety factors must be finite and positive")
        self.z0 = np.zeros(len(self.factors), complex)

    @classmethod
    def to_unit(cls, radii) -> "Homothety":
        r = np.asarray([math.inf if isinstance(x, str) else float(x) for x in radii])
        return cls(np.where(np.isfinite(r), 1.0 / np.where(np.isfinite(r), r, 1.0), 1.0))

    @property
    def domain(self):
        return FullSpace(self.n)

    def _map(self, z):
        return self.factors * z

    def inverse(self) -> "Homothety":
        return Homothety(1.0 / self.factors)


def identity(n: int) -> Translation:
    return Translation(np.zeros(n, complex))


def apply(a: Automorphism, z) -> np.ndarray:
    return a.apply(z)


def real_jacobian(a: Automorphism, z, h: float | None = None) -> float:
    """Determinant of the real 2n x 2n derivative of ``a`` at ``z`` by central differences."""
    z = as_point(z, a.n)
    if h is None:
        h = 1e-5 * (1.0 + math.sqrt(float(norm2(z))))
    if not contains(a.domain, z, 2 * h):
        raise DomainError("finite-difference stencil leaves the domain")
    n = a.n
    cols = []
    for k in range(2 * n):
        e = np.zeros(n, complex)
        e[k // 2] = h if k % 2 == 0 else 1j * h
        d = (a.apply(z + e) - a.apply(z - e)) / (2 * h)
        col = np.empty(2 * n)
        col[0::2], col[1::2] = d.real, d.imag
        cols.append(col)
    return float(np.linalg.det(np.column_stack(cols)))


@dataclass
class InvarianceResult:
    lhs: float  # integral of g dmu
    rhs: float  # integral of g o a dmu
    rel_error: float
    tolerance: float  # integration-error allowance, relative
    method: str
    converged: bool

    @property
    def passed(self) -> bool:
        return self.rel_error <= self.tolerance


def invariance_check(
    a: Automorphism,
    m,
    g,
    plan: IntegrationPlan | None = None,
    floor: float = 1e-300,
    sigmas: float = 3.0,
) -> InvarianceResult:
    """Compare the integral of g dmu with that of (g o a) dmu.

    Deterministic plans report ``tolerance`` as the sum of the two
    rule-doubling error estimates. Monte Carlo plans evaluate both sides on one
    sample and report ``sigmas`` standard errors of the paired difference.
    """
    plan = plan or IntegrationPlan()
    ga = lambda z: g(a.apply(z))
    if plan.method == "monte-carlo":
        left = integrate(plan, m, g)
        diff = integrate(plan, m, lambda z: g(z) - ga(z))
        lhs = float(np.real(left.value))
        rhs = lhs - float(np.real(diff.value))
        scale = max(abs(lhs), floor)
        res = InvarianceResult(
            lhs, rhs, abs(float(np.real(diff.value))) / scale,
            sigmas * diff.error_estimate / scale, "monte-carlo", True,
        )
    else:
        left = integrate(plan, m, g)
        right = integrate(plan, m, ga)
        lhs, rhs = float(np.real(left.value)), float(np.real(right.value))
        scale = max(abs(lhs), floor)
        tol = max((left.error_estimate + right.error_estimate) / scale, 4 * np.finfo(float).eps)
        res = InvarianceResult(
            lhs, rhs, abs(lhs - rhs) / scale, tol, "polar-gauss", left.converged and right.converged,
        )
    if not res.converged:
        warnings.warn(f"invariance_check for {a!r}: integration did not converge within budget")
    return res


def invariance_integrands(m) -> dict:
    """Test integrands that are integrable against ``m``: a damping factor times a bounded smooth function.

    The damping is exp(-|z|^2) on C factors, (1-|z|^2)^(n+1) on the ball and
    (1-|z_j/r_j|^2)^2 on finite polydisc factors, so each integrand is
    integrable against the invariant measures.
    """
    d = m.domain
    n = d.n
    if isinstance(d, UnitBall):
        damp = lambda z: (1.0 - norm2(z)) ** (n + 1)
    else:
        r = np.asarray(d.radii, float)
        fin = np.isfinite(r)
        rr = np.where(fin, r, 1.0)

        def damp(z):
            s = np.abs(z) ** 2
            per = np.where(fin, (1.0 - s / rr ** 2) ** 2, np.exp(-s))
            return np.prod(per, axis=-1)

    shapes = {
        "one": lambda z: np.ones(z.shape[:-1]),
        "abs2": lambda z: 1.0 + np.abs(z[..., 0]) ** 2,
        "real": lambda z: 2.0 + np.real(z[..., 0]),
        "cos": lambda z: 1.5 + np.cos(np.real(z[..., -1]) + 0.5 * np.imag(z[..., 0])),
        "exp": lambda z: np.exp(0.5 * np.real(z[..., 0]) - 0.25 * np.imag(z[..., -1])),
        "bump": lambda z: 1.0 + np.exp(-0.5 * norm2(z - 0.2)),
    }
    return {k: (lambda h: lambda z: damp(z) * h(z))(h) for k, h in shapes.items()}
