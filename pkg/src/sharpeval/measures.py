"""Measures, weights and the weighted spaces built from them.

A space is a domain D, a measure mu, a weight w and an exponent p. Its
effective density exp(-p w) dmu/dlambda is always one of the references in
:mod:`sharpeval.quadrature`, which gives the normalising integral N in closed
form and an exact sampler.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import quadrature as quad
from .automorphisms import Automorphism, BallMobius, DomainError, PolydiscMobius, Translation
from .domains import FullSpace, Polydisc, UnitBall, contains
from .geometry import HoloFunction, PolyExp, PolyExpTerm, Power, Product, as_point, norm2


def _require_inside(domain, z):
    if not np.all(contains(domain, z, 0.0)):
        raise DomainError(f"evaluation outside the open domain {domain}")


def _radii(domain) -> np.ndarray:
    return np.asarray(domain.radii, dtype=float)


# ------------------------------------------------------------------ measures

@dataclass(frozen=True)
class MeasureSpec:
    """``lebesgue``, ``ball-invariant`` (1-|z|^2)^-(n+1) or ``polydisc-invariant``.

    The polydisc density is prod_j (1-|z_j/r_j|^2)^-2 over finite radii; infinite
    factors carry Lebesgue measure.
    """

    domain: FullSpace | UnitBall | Polydisc
    kind: str = "lebesgue"

    def __post_init__(self):
        if self.kind not in ("lebesgue", "ball-invariant", "polydisc-invariant"):
            raise ValueError(f"unknown measure {self.kind!r}")
        if self.kind == "ball-invariant" and not isinstance(self.domain, UnitBall):
            raise ValueError("the invariant ball measure lives on the unit ball")
        if self.kind == "polydisc-invariant" and not isinstance(self.domain, Polydisc):
            raise ValueError("the invariant polydisc measure needs a polydisc with a finite radius")

    @property
    def n(self):
        return self.domain.n

    def density(self, z) -> np.ndarray:
        z = as_point(z, self.n)
        _require_inside(self.domain, z)
        if self.kind == "lebesgue":
            return np.ones(z.shape[:-1])
        if self.kind == "ball-invariant":
            return (1.0 - norm2(z)) ** (-(self.n + 1))
        r = _radii(self.domain)
        fin = np.isfinite(r)
        s = np.abs(z) ** 2 / np.where(fin, r, 1.0) ** 2
        return np.prod(np.where(fin, (1.0 - np.where(fin, s, 0.0)) ** -2.0, 1.0), axis=-1)

    def base_reference(self) -> quad.Reference:
        """A finite reference on the same domain, for integrating against mu."""
        d = self.domain
        if isinstance(d, UnitBall):
            return quad.BallRef(d.n, 0.0)
        factors = []
        for r in d.radii:
            factors.append(quad.GaussFactor(0.5) if math.isinf(r) else quad.DiscFactor(0.0, r))
        return quad.ProductRef(tuple(factors))

    def as_reference(self):
        ref = self.base_reference()
        return ref, lambda z: self.density(z) / ref.density(z)


def density(m: MeasureSpec, z):
    return m.density(z)


# ------------------------------------------------------------------- weights

class WeightSpec:
    n: int

    def __call__(self, z) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class FockWeight(WeightSpec):
    """w(z) = sum_j alpha_j/2 |z_j|^2; isotropic, anisotropic or block-constant alphas."""

    alphas: tuple[float, ...]
    blocks: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        if any(not a > 0 for a in self.alphas):
            raise ValueError("Fock weights need alpha > 0")

    @classmethod
    def isotropic(cls, alpha: float, n: int) -> "FockWeight":
        return cls((alpha,) * n)

    @classmethod
    def from_blocks(cls, block_alphas, blocks) -> "FockWeight":
        """One alpha per contiguous block [lo, hi); the weight is radial in each block."""
        blocks = tuple(tuple(b) for b in blocks)
        if len(block_alphas) != len(blocks):
            raise ValueError("one alpha per block is required")
        alphas = []
        for a, (lo, hi) in zip(block_alphas, blocks):
            alphas += [a] * (hi - lo)
        return cls(tuple(alphas), blocks)

    @property
    def n(self):
        return len(self.alphas)

    @property
    def isotropic_alpha(self) -> float | None:
        return self.alphas[0] if len(set(self.alphas)) == 1 else None

    def __call__(self, z):
        z = as_point(z, self.n)
        return 0.5 * np.sum(np.asarray(self.alphas) * np.abs(z) ** 2, axis=-1)


@dataclass(frozen=True)
class BallBergmanWeight(WeightSpec):
    """w(z) = -((alpha + n + 1)/p) log(1 - |z|^2)."""

    alpha: float
    p: float
    n: int

    def __post_init__(self):
        if not self.alpha > -1:
            raise ValueError("ball weights need alpha > -1")
        if not self.p > 0 or math.isinf(self.p):
            raise ValueError("ball weights need 0 < p < inf")

    @property
    def exponent(self) -> float:
        return (self.alpha + self.n + 1) / self.p

    def __call__(self, z):
        z = as_point(z, self.n)
        _require_inside(UnitBall(self.n), z)
        return -self.exponent * np.log1p(-norm2(z))


@dataclass(frozen=True)
class PolydiscBergmanWeight(WeightSpec):
    """w(z) = -sum_j ((alpha_j + 2)/p) log(1 - |z_j/r_j|^2); alpha_j/2 |z_j|^2 where r_j = inf."""

    alphas: tuple[float, ...]
    p: float
    radii: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        radii = (1.0,) * len(self.alphas) if self.radii is None else tuple(
            math.inf if isinstance(r, str) else float(r) for r in self.radii
        )
        if len(radii) != len(self.alphas):
            raise ValueError("radii/alphas length mismatch")
        object.__setattr__(self, "radii", radii)
        for a, r in zip(self.alphas, radii):
            if math.isinf(r) and not a > 0:
                raise ValueError("Fock-type factors (r = inf) need alpha > 0")
            if not a > -1:
                raise ValueError("polydisc weights need alpha_j > -1")
        if not self.p > 0 or math.isinf(self.p):
            raise ValueError("polydisc weights need 0 < p < inf")

    @property
    def n(self):
        return len(self.alphas)

    @property
    def exponents(self) -> np.ndarray:
        return (np.asarray(self.alphas) + 2.0) / self.p

    def __call__(self, z):
        z = as_point(z, self.n)
        r = np.asarray(self.radii)
        fin = np.isfinite(r)
        _require_inside(Polydisc(self.n, self.radii), z)
        s = np.abs(z) ** 2 / np.where(fin, r, 1.0) ** 2
        with np.errstate(invalid="ignore", divide="ignore"):
            finite_part = -self.exponents * np.log1p(-np.where(fin, s, 0.0))
        fock_part = 0.5 * np.asarray(self.alphas) * np.abs(z) ** 2
        return np.sum(np.where(fin, finite_part, fock_part), axis=-1)


def weight(w: WeightSpec, z):
    return w(z)


# -------------------------------------------------------------------- spaces

@dataclass(frozen=True)
class SpaceSpec:
    domain: FullSpace | UnitBall | Polydisc
    measure: MeasureSpec
    weight: WeightSpec
    p: float

    def __post_init__(self):
        d, m, w = self.domain, self.measure, self.weight
        if not self.p > 0:
            raise ValueError("p must be positive")
        if m.domain != d or w.n != d.n:
            raise ValueError("domain, measure and weight disagree")
        if isinstance(w, FockWeight):
            ok = isinstance(d, FullSpace) and m.kind == "lebesgue"
        elif isinstance(w, BallBergmanWeight):
            ok = isinstance(d, UnitBall) and m.kind == "ball-invariant"
            ok = ok and (math.isinf(self.p) or w.p == self.p)
        elif isinstance(w, PolydiscBergmanWeight):
            ok = isinstance(d, Polydisc) and m.kind == "polydisc-invariant" and tuple(d.radii) == w.radii
            ok = ok and (math.isinf(self.p) or w.p == self.p)
        else:
            ok = False
        if not ok:
            raise ValueError(f"unsupported combination: {type(w).__name__} on {d} with {m.kind}")

    @property
    def n(self):
        return self.domain.n

    @property
    def geometry(self) -> str:
        return self.domain.kind

    @property
    def alpha_label(self) -> str:
        w = self.weight
        if isinstance(w, FockWeight):
            a = w.isotropic_alpha
            return f"{a:g}" if a is not None else ",".join(f"{x:g}" for x in w.alphas)
        if isinstance(w, BallBergmanWeight):
            return f"{w.alpha:g}"
        return ",".join(f"{x:g}" for x in w.alphas)

    @cached_property
    def reference(self) -> quad.Reference:
        """The effective density exp(-p w) dmu/dlambda as a quadrature reference."""
        if math.isinf(self.p):
            raise ValueError("p = inf spaces have no integral quasinorm")
        w, p = self.weight, self.p
        if isinstance(w, FockWeight):
            return quad.ProductRef(tuple(quad.GaussFactor(p * a / 2) for a in w.alphas))
        if isinstance(w, BallBergmanWeight):
            return quad.BallRef(self.n, w.alpha)
        factors = []
        for a, r in zip(w.alphas, w.radii):
            factors.append(quad.GaussFactor(p * a / 2) if math.isinf(r) else quad.DiscFactor(a, r))
        return quad.ProductRef(tuple(factors))

    @property
    def separable(self) -> bool:
        return isinstance(self.reference, quad.ProductRef) and len(self.reference.factors) == self.n

    def effective_density(self, z) -> np.ndarray:
        return np.exp(-self.p * self.weight(z)) * self.measure.density(z)

    def as_reference(self):
        return self.reference, None

    @cached_property
    def N(self) -> float:
        """Closed-form normalising integral (the reference mass)."""
        return self.reference.mass

    @property
    def w0(self) -> float:
        return float(self.weight(np.zeros(self.n)))

    def with_p(self, p: float) -> "SpaceSpec":
        w = self.weight
        if isinstance(w, BallBergmanWeight):
            w = BallBergmanWeight(w.alpha, p, w.n) if not math.isinf(p) else w
        elif isinstance(w, PolydiscBergmanWeight):
            w = PolydiscBergmanWeight(w.alphas, p, w.radii) if not math.isinf(p) else w
        return SpaceSpec(self.domain, self.measure, w, p)


def fock_space(alpha, n: int = 1, p: float = 2.0, blocks=None) -> SpaceSpec:
    """Fock space; ``alpha`` is a scalar, a per-coordinate vector, or per-block with ``blocks``."""
    if blocks is not None:
        w = FockWeight.from_blocks(alpha, blocks)
        n = w.n
    elif np.ndim(alpha) == 0:
        w = FockWeight.isotropic(float(alpha), n)
    else:
        w = FockWeight(tuple(alpha))
        n = w.n
    d = FullSpace(n, tuple(map(tuple, blocks)) if blocks is not None else None)
    return SpaceSpec(d, MeasureSpec(d, "lebesgue"), w, p)


def ball_space(n: int, alpha: float, p: float = 2.0) -> SpaceSpec:
    d = UnitBall(n)
    return SpaceSpec(d, MeasureSpec(d, "ball-invariant"), BallBergmanWeight(alpha, p, n), p)


def polydisc_space(alphas, p: float = 2.0, radii=None) -> SpaceSpec:
    alphas = tuple(alphas)
    w = PolydiscBergmanWeight(alphas, p, radii)
    d = Polydisc(len(alphas), w.radii)
    return SpaceSpec(d, MeasureSpec(d, "polydisc-invariant"), w, p)


def normalization(s: SpaceSpec, plan: quad.IntegrationPlan | None = None) -> quad.IntegrationResult:
    """N = integral of exp(-p w) dmu, evaluated from the weight and density functions."""
    if math.isinf(s.p):
        raise ValueError("normalization needs p < inf")
    plan = plan or quad.IntegrationPlan(tol=1e-10)
    ref = s.reference
    return quad.integrate(plan, ref, lambda z: s.effective_density(z) / ref.density(z))


# ------------------------------------------------------- condition on w - w o a

def psi_representative(w: WeightSpec, a: Automorphism) -> HoloFunction:
    """Zero-free holomorphic psi with log|psi| = w - w o a, positive at 0."""
    z0 = a.z0
    if w.n != a.n:
        raise ValueError("weight/automorphism dimension mismatch")
    if isinstance(w, FockWeight) and isinstance(a, Translation):
        al = np.asarray(w.alphas)
        c = math.exp(-0.5 * float(np.sum(al * np.abs(z0) ** 2)))
        return PolyExp([PolyExpTerm(c, (0,) * w.n, tuple(-al * np.conj(z0)))], label="psi[fock]")
    if isinstance(w, BallBergmanWeight) and isinstance(a, BallMobius):
        c = w.exponent
        base = PolyExp.linear(1.0, -np.conj(z0))  # 1 - <z, z0>
        return Power(base, -2.0 * c, coeff=(1.0 - float(norm2(z0))) ** c, label="psi[ball]")
    if isinstance(w, PolydiscBergmanWeight) and isinstance(a, PolydiscMobius) and tuple(a.radii) == w.radii:
        factors: list[HoloFunction] = []
        fock_exp = np.zeros(w.n, complex)
        fock_c = 0.0
        for j, (al, r, c) in enumerate(zip(w.alphas, w.radii, w.exponents)):
            if math.isinf(r):
                fock_exp[j] = -al * np.conj(z0[j])
                fock_c += 0.5 * al * abs(z0[j]) ** 2
                continue
            coeffs = np.zeros(w.n, complex)
            coeffs[j] = -np.conj(z0[j]) / r ** 2
            base = PolyExp.linear(1.0, coeffs)  # 1 - z_j conj(z0_j) / r_j^2
            factors.append(Power(base, -2.0 * c, coeff=(1.0 - abs(z0[j] / r) ** 2) ** c))
        factors.append(PolyExp.exponential(fock_exp, coeff=math.exp(-fock_c)))
        return Product(factors, label="psi[polydisc]")
    raise ValueError(f"no closed-form psi for {type(w).__name__} with {type(a).__name__}")


def stencil_residual(g, z, direction, h: float, domain=None) -> float:
    """Five-point Laplacian of g along the complex line z + t*direction."""
    z = as_point(z)
    d = as_point(direction, len(z))
    pts = np.stack([z + h * d, z - h * d, z + 1j * h * d, z - 1j * h * d, z])
    if domain is not None and not np.all(contains(domain, pts, 0.0)):
        raise DomainError("stencil leaves the domain")
    vals = np.asarray(g(pts), dtype=float)
    return float((vals[0] + vals[1] + vals[2] + vals[3] - 4.0 * vals[4]) / h ** 2)


def pluriharmonicity_residual(w: WeightSpec, a: Automorphism, z, direction, h: float = 1e-3) -> float:
    """Stencil Laplacian of g = w - w o a; O(h^2) when g is pluriharmonic."""
    z = as_point(z, w.n)
    d = as_point(direction, w.n)
    margin = 2 * h * math.sqrt(float(norm2(d)))
    if not contains(a.domain, z, margin):
        raise DomainError("stencil leaves the domain")
    return stencil_residual(lambda x: w(x) - w(a.apply(x)), z, d, h)
