"""Integration against the reference densities used by the weighted spaces.

A *reference* is a finite positive density on C^n with a known total mass,
an exact sampler and a family of deterministic product rules indexed by a
refinement level. Three kinds cover every space in the package:

* :class:`GaussFactor`  exp(-c|z|^2) on C (Gauss-Laguerre in c|z|^2, trapezoid in angle)
* :class:`DiscFactor`   (1-|z|^2/R^2)^beta on the disc of radius R (Gauss-Jacobi in |z|^2/R^2)
* :class:`BallRef`      (1-|z-c|^2/R^2)^beta on a ball in C^n (nested disc slices)

:class:`ProductRef` tensors one-variable factors together.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import special

from .geometry import as_point, norm2

CHUNK = 1 << 16
BASE_RADIAL = 8
BASE_ANGULAR = 8
VALUE_FLOOR = 1e-300


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("SHARPEVAL_THREADS", "1")))
    except ValueError:
        return 1


@lru_cache(maxsize=None)
def _laguerre(m: int, gamma: float = 0.0):
    """Nodes/weights on [0, inf) for the weight t^gamma exp(-t)."""
    if gamma == 0.0:
        return special.roots_laguerre(m)
    return special.roots_genlaguerre(m, gamma)


@lru_cache(maxsize=None)
def _jacobi01(m: int, beta: float, gamma: float = 0.0):
    """Nodes/weights on [0, 1] for the weight s^gamma (1 - s)^beta."""
    x, w = special.roots_jacobi(m, beta, gamma)
    return (1.0 + x) / 2.0, w * 2.0 ** (-beta - gamma - 1.0)


def _angles(k: int) -> np.ndarray:
    return 2.0 * np.pi * (np.arange(k) + 0.5) / k


def level_sizes(level: int) -> tuple[int, int]:
    return BASE_RADIAL << level, BASE_ANGULAR << level


class Rule:
    """Lazily indexed quadrature rule: ``take(idx)`` returns points and weights."""

    size: int

    def take(self, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError


class _ArrayRule(Rule):
    def __init__(self, pts: np.ndarray, w: np.ndarray):
        self.pts, self.w = pts, w
        self.size = len(w)

    def take(self, idx):
        return self.pts[idx], self.w[idx]


class _TensorRule(Rule):
    def __init__(self, parts: list[Rule]):
        self.parts = parts
        self.shape = tuple(p.size for p in parts)
        self.size = int(np.prod(self.shape))

    def take(self, idx):
        multi = np.unravel_index(idx, self.shape)
        pts, w = [], np.ones(len(idx))
        for part, i in zip(self.parts, multi):
            p, wi = part.take(i)
            pts.append(p)
            w = w * wi
        return np.concatenate(pts, axis=-1), w


class _SliceRule(Rule):
    """Ball rule: outer disc variable times a ball in the remaining variables scaled by sqrt(1-|z1|^2)."""

    def __init__(self, outer: Rule, inner: Rule):
        self.outer, self.inner = outer, inner
        self.size = outer.size * inner.size

    def take(self, idx):
        io, ii = np.divmod(idx, self.inner.size)
        z1, w1 = self.outer.take(io)
        y, w2 = self.inner.take(ii)
        scale = np.sqrt(np.maximum(1.0 - norm2(z1), 0.0))
        return np.concatenate([z1, scale[:, None] * y], axis=-1), w1 * w2


class Reference:
    n: int
    kind: str

    @property
    def mass(self) -> float:
        raise NotImplementedError

    def density(self, z) -> np.ndarray:
        raise NotImplementedError

    def rule(self, level: int) -> Rule:
        raise NotImplementedError

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def nodes_per_factor(self, level: int) -> int:
        m, k = level_sizes(level)
        return m * k

    def rule_size(self, level: int) -> int:
        return self.nodes_per_factor(level) ** self.n


@dataclass(frozen=True)
class GaussFactor(Reference):
    """|z|^(2 gamma) exp(-c|z|^2) on C; gamma > 0 absorbs a radial power into the rule."""

    c: float
    gamma: float = 0.0
    n: int = field(default=1, init=False)
    kind: str = field(default="gauss", init=False)

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError("Gaussian rate must be positive")
        if not self.gamma > -1:
            raise ValueError("radial exponent must exceed -1")

    @property
    def mass(self):
        g = self.gamma
        return math.pi * math.exp(math.lgamma(g + 1.0) - (g + 1.0) * math.log(self.c))

    def density(self, z):
        s = norm2(as_point(z, 1))
        return s ** self.gamma * np.exp(-self.c * s)

    def rule(self, level):
        m, k = level_sizes(level)
        t, w = _laguerre(m, float(self.gamma))
        r = np.sqrt(t / self.c)
        th = _angles(k)
        pts = (r[:, None] * np.exp(1j * th)[None, :]).reshape(-1, 1)
        scale = (2.0 * np.pi / k) / (2.0 * self.c) * self.c ** (-self.gamma)
        return _ArrayRule(pts, np.repeat(w * scale, k))

    def sample(self, count, rng):
        if self.gamma == 0.0:
            sd = math.sqrt(0.5 / self.c)
            return (sd * (rng.normal(size=count) + 1j * rng.normal(size=count)))[:, None]
        r = np.sqrt(rng.gamma(self.gamma + 1.0, 1.0 / self.c, size=count))
        return (r * np.exp(2j * np.pi * rng.random(count)))[:, None]


@dataclass(frozen=True)
class DiscFactor(Reference):
    """(|z|^2/R^2)^gamma (1-|z|^2/R^2)^beta on the disc of radius R."""

    beta: float = 0.0
    radius: float = 1.0
    gamma: float = 0.0
    n: int = field(default=1, init=False)
    kind: str = field(default="disc", init=False)

    def __post_init__(self):
        if not self.beta > -1:
            raise ValueError("disc exponent must exceed -1")
        if not self.gamma > -1:
            raise ValueError("radial exponent must exceed -1")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError("disc radius must be finite and positive")

    @property
    def mass(self):
        b, g = self.beta, self.gamma
        return math.pi * self.radius ** 2 * math.exp(
            math.lgamma(g + 1.0) + math.lgamma(b + 1.0) - math.lgamma(g + b + 2.0)
        )

    def density(self, z):
        s = norm2(as_point(z, 1)) / self.radius ** 2
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(s < 1, s ** self.gamma * np.abs(1.0 - s) ** self.beta, 0.0)

    def rule(self, level):
        m, k = level_sizes(level)
        s, w = _jacobi01(m, float(self.beta), float(self.gamma))
        r = self.radius * np.sqrt(s)
        th = _angles(k)
        pts = (r[:, None] * np.exp(1j * th)[None, :]).reshape(-1, 1)
        wts = np.repeat(w * (2.0 * np.pi / k) * self.radius ** 2 / 2.0, k)
        return _ArrayRule(pts, wts)

    def sample(self, count, rng):
        s = rng.beta(self.gamma + 1.0, self.beta + 1.0, size=count)
        return (self.radius * np.sqrt(s) * np.exp(2j * np.pi * rng.random(count)))[:, None]


@dataclass(frozen=True)
class BallRef(Reference):
    n: int
    beta: float = 0.0
    radius: float = 1.0
    center: tuple[complex, ...] | None = None
    kind: str = field(default="ball", init=False)

    def __post_init__(self):
        if not self.beta > -1:
            raise ValueError("ball exponent must exceed -1")
        if self.center is not None and len(self.center) != self.n:
            raise ValueError("center has the wrong dimension")

    @property
    def _c(self) -> np.ndarray:
        return np.zeros(self.n, complex) if self.center is None else np.asarray(self.center, complex)

    @property
    def mass(self):
        return (
            math.pi ** self.n
            * math.exp(math.lgamma(self.beta + 1.0) - math.lgamma(self.n + self.beta + 1.0))
            * self.radius ** (2 * self.n)
        )

    def density(self, z):
        s = norm2(as_point(z, self.n) - self._c) / self.radius ** 2
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(s < 1, np.abs(1.0 - s) ** self.beta, 0.0)

    def _unit_rule(self, n, level) -> Rule:
        if n == 1:
            return DiscFactor(self.beta).rule(level)
        outer = DiscFactor(self.beta + n - 1).rule(level)
        return _SliceRule(outer, self._unit_rule(n - 1, level))

    def rule(self, level):
        unit = self._unit_rule(self.n, level)
        if self.center is None and self.radius == 1.0:
            return unit
        return _AffineRule(unit, self.radius, self._c)

    def sample(self, count, rng):
        from .domains import beta_ball

        return self._c + beta_ball(rng, count, self.n, self.beta, self.radius)


class _AffineRule(Rule):
    def __init__(self, base: Rule, scale: float, shift: np.ndarray):
        self.base, self.scale, self.shift = base, scale, shift
        self.size = base.size
        self._jac = scale ** (2 * len(shift))

    def take(self, idx):
        p, w = self.base.take(idx)
        return self.shift + self.scale * p, w * self._jac


@dataclass(frozen=True)
class ProductRef(Reference):
    factors: tuple[Reference, ...]
    kind: str = field(default="product", init=False)

    @property
    def n(self):
        return sum(f.n for f in self.factors)

    @property
    def mass(self):
        return math.prod(f.mass for f in self.factors)

    def density(self, z):
        z = as_point(z, self.n)
        out = np.ones(z.shape[:-1])
        j = 0
        for f in self.factors:
            out = out * f.density(z[..., j:j + f.n])
            j += f.n
        return out

    def rule(self, level):
        if len(self.factors) == 1:
            return self.factors[0].rule(level)
        return _TensorRule([f.rule(level) for f in self.factors])

    def sample(self, count, rng):
        return np.concatenate([f.sample(count, rng) for f in self.factors], axis=-1)


# ------------------------------------------------------------------ engine

@dataclass(frozen=True)
class IntegrationPlan:
    """How to integrate: ``polar-gauss`` (adaptive doubling) or ``monte-carlo``."""

    method: str = "polar-gauss"
    nodes: int = 1 << 16  # per complex factor, deterministic rules
    samples: int = 1_000_000
    seed: int = 0
    tol: float = 1e-10
    max_total: int = 1 << 22  # cap on tensor-rule size

    def __post_init__(self):
        if self.method not in ("polar-gauss", "monte-carlo"):
            raise ValueError(f"unknown integration method {self.method!r}")
        if self.nodes < 1 or self.samples < 1:
            raise ValueError("budget must be >= 1")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")


@dataclass
class IntegrationResult:
    value: float | complex
    error_estimate: float
    method: str
    budget_used: int
    converged: bool
    log_value: float | None = None  # log|value| for log-space integrands

    @property
    def rel_error(self) -> float:
        if self.log_value is not None:
            if self.log_value == -math.inf:
                return math.inf
            return self.error_estimate
        return self.error_estimate / max(abs(self.value), VALUE_FLOOR)


def _fsum_complex(parts) -> complex | float:
    parts = list(parts)
    re = math.fsum(float(np.real(p)) for p in parts)
    if any(np.iscomplexobj(p) for p in parts):
        return complex(re, math.fsum(float(np.imag(p)) for p in parts))
    return re


def _map_chunks(fn, size: int):
    """Apply ``fn(lo, hi)`` over fixed chunks; results come back in chunk order."""
    bounds = [(lo, min(lo + CHUNK, size)) for lo in range(0, size, CHUNK)]
    threads = thread_count()
    if threads == 1 or len(bounds) == 1:
        return [fn(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(threads) as ex:
        return list(ex.map(lambda b: fn(*b), bounds))


def _rule_sum(rule: Rule, integrand, log: bool):
    """Sum of weights*integrand. In log mode returns log of the (nonnegative) sum."""

    def chunk(lo, hi):
        pts, w = rule.take(np.arange(lo, hi))
        vals = integrand(pts)
        if log:
            with np.errstate(divide="ignore"):
                a = np.asarray(vals, float) + np.log(w)
            m = np.max(a)
            if not np.isfinite(m):
                return (-math.inf, 0.0)
            return (float(m), float(np.sum(np.exp(a - m))))
        return np.sum(np.asarray(vals) * w)

    parts = _map_chunks(chunk, rule.size)
    if not log:
        return _fsum_complex(parts)
    return _logsum(parts)


def _logsum(parts) -> float:
    m = max(p[0] for p in parts)
    if m == -math.inf:
        return -math.inf
    s = math.fsum(p[1] * math.exp(p[0] - m) for p in parts)
    return m + math.log(s) if s > 0 else -math.inf


def _resolve(target, integrand):
    """Accept a Reference, or anything exposing ``as_reference()``."""
    if isinstance(target, Reference):
        return target, integrand, None
    ref, correction = target.as_reference()
    if correction is None:
        return ref, integrand, None
    return ref, integrand, correction


def integrate(plan: IntegrationPlan, target, integrand: Callable, log: bool = False) -> IntegrationResult:
    """Integrate ``integrand`` against ``target``.

    ``target`` is a :class:`Reference` or an object with ``as_reference()``
    (spaces and measures) returning the reference and an optional correction
    function ``density/reference_density``. With ``log=True`` the integrand
    returns the logarithm of a nonnegative function and the sum is carried out
    in log space; ``log_value`` then holds log of the integral and
    ``error_estimate`` is relative.
    """
    ref, g, corr = _resolve(target, integrand)
    if corr is not None:
        if log:
            g = (lambda h: lambda z: h(z) + np.log(corr(z)))(integrand)
        else:
            g = (lambda h: lambda z: h(z) * corr(z))(integrand)
    if plan.method == "monte-carlo":
        return _integrate_mc(plan, ref, g, log)
    return _integrate_rules(plan, ref, g, log)


def _integrate_rules(plan, ref: Reference, g, log):
    prev = None
    used = 0
    level = 0
    result = None
    while True:
        if ref.nodes_per_factor(level) > plan.nodes or ref.rule_size(level) > plan.max_total:
            break
        rule = ref.rule(level)
        val = _rule_sum(rule, g, log)
        used += rule.size
        if prev is not None:
            if log:
                if val == -math.inf and prev == -math.inf:
                    err = 0.0
                elif val == -math.inf or prev == -math.inf:
                    err = math.inf
                else:
                    err = abs(math.expm1(prev - val))
                converged = err <= plan.tol
                result = IntegrationResult(_safe_exp(val), err, "polar-gauss", used, converged, val)
            else:
                err = abs(val - prev)
                converged = err <= plan.tol * max(abs(val), VALUE_FLOOR)
                result = IntegrationResult(val, err, "polar-gauss", used, converged)
            if converged:
                return result
        prev = val
        level += 1
    if result is None:
        # budget too small for two levels: report the single estimate as unconverged
        if prev is None:
            raise ValueError("node budget admits no rule at all")
        if log:
            return IntegrationResult(_safe_exp(prev), math.inf, "polar-gauss", used, False, prev)
        return IntegrationResult(prev, math.inf, "polar-gauss", used, False)
    return result


def _safe_exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


def _integrate_mc(plan, ref: Reference, g, log):
    rng = np.random.default_rng(plan.seed)
    count = plan.samples
    # draw sequentially in fixed chunks so results depend only on the seed
    sums = []
    for lo in range(0, count, CHUNK):
        k = min(CHUNK, count - lo)
        pts = ref.sample(k, rng)
        vals = np.asarray(g(pts))
        if log:
            m = float(np.max(vals))
            if not np.isfinite(m):
                sums.append((-math.inf, 0.0, 0.0))
            else:
                e = np.exp(vals - m)
                sums.append((m, float(np.sum(e)), float(np.sum(e * e))))
        else:
            sums.append((np.sum(vals), np.sum(np.abs(vals) ** 2)))
    mass = ref.mass
    if log:
        m = max(s[0] for s in sums)
        if m == -math.inf:
            return IntegrationResult(0.0, 0.0, "monte-carlo", count, True, -math.inf)
        s1 = math.fsum(s[1] * math.exp(s[0] - m) for s in sums) / count
        s2 = math.fsum(s[2] * math.exp(2 * (s[0] - m)) for s in sums) / count
        var = max(s2 - s1 * s1, 0.0) * count / max(count - 1, 1)
        rel = math.sqrt(var / count) / s1
        logv = m + math.log(s1) + math.log(mass)
        return IntegrationResult(_safe_exp(logv), rel, "monte-carlo", count, rel <= plan.tol, logv)
    mean = _fsum_complex(s[0] for s in sums) / count
    m2 = math.fsum(float(s[1]) for s in sums) / count
    var = max(m2 - abs(mean) ** 2, 0.0) * count / max(count - 1, 1)
    err = mass * math.sqrt(var / count)
    value = mass * mean
    return IntegrationResult(value, err, "monte-carlo", count, err <= plan.tol * max(abs(value), VALUE_FLOOR))


def importance_sample(space, count: int, seed: int = 0):
    """Points from the normalised density exp(-p w) dmu / N with equal weights 1/count.

    ``sum(g(z_i) * weights)`` estimates (1/N) * integral of g exp(-p w) dmu.
    """
    ref = space.reference
    rng = np.random.default_rng(seed)
    pts = ref.sample(count, rng)
    return pts, np.full(count, 1.0 / count)
