"""The three geometries: C^n, the unit ball, and poly-cylinders prod_j r_j*D."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import as_point, norm2

SAMPLE_MARGIN = 1e-9


@dataclass(frozen=True)
class FullSpace:
    n: int
    # contiguous coordinate blocks for block-radial weights; None means one block per coordinate
    blocks: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.blocks is not None:
            _check_blocks(self.blocks, self.n)

    @property
    def kind(self) -> str:
        return "fock"

    @property
    def radii(self) -> tuple[float, ...]:
        return (math.inf,) * self.n

    def __eq__(self, other):
        if isinstance(other, FullSpace):
            return self.n == other.n
        if isinstance(other, Polydisc):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash(("fock", self.n))


@dataclass(frozen=True)
class UnitBall:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def kind(self) -> str:
        return "ball"


@dataclass(frozen=True)
class Polydisc:
    n: int
    radii: tuple[float, ...] = field(default=None)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        radii = (1.0,) * self.n if self.radii is None else tuple(float(r) for r in self.radii)
        if len(radii) != self.n:
            raise ValueError(f"need {self.n} radii, got {len(radii)}")
        if any(not r > 0 for r in radii):
            raise ValueError("radii must be positive")
        object.__setattr__(self, "radii", radii)

    @property
    def kind(self) -> str:
        return "polydisc"

    def __eq__(self, other):
        if isinstance(other, Polydisc):
            return self.n == other.n and self.radii == other.radii
        if isinstance(other, FullSpace):
            return self.n == other.n and all(math.isinf(r) for r in self.radii)
        return NotImplemented

    def __hash__(self):
        if all(math.isinf(r) for r in self.radii):
            return hash(("fock", self.n))
        return hash(("polydisc", self.n, self.radii))

    @property
    def finite(self) -> np.ndarray:
        return np.isfinite(np.asarray(self.radii))


DomainSpec = FullSpace | UnitBall | Polydisc


def _check_blocks(blocks, n):
    pos = 0
    for lo, hi in blocks:
        if lo != pos or hi <= lo:
            raise ValueError(f"blocks must be contiguous and cover 0..{n}: {blocks}")
        pos = hi
    if pos != n:
        raise ValueError(f"blocks must cover all {n} coordinates: {blocks}")


def make_domain(kind: str, n: int, radii=None, blocks=None) -> DomainSpec:
    """Build a domain; an all-infinite polydisc collapses to C^n."""
    if kind == "fock":
        return FullSpace(n, tuple(map(tuple, blocks)) if blocks else None)
    if kind == "ball":
        return UnitBall(n)
    if kind == "polydisc":
        radii = None if radii is None else tuple(
            math.inf if (isinstance(r, str) and r.lower() in ("inf", "+inf")) else float(r) for r in radii
        )
        if radii is not None and all(math.isinf(r) for r in radii):
            return FullSpace(n)
        return Polydisc(n, radii)
    raise ValueError(f"unknown domain kind {kind!r}")


def boundary_distance(d: DomainSpec, z) -> np.ndarray:
    """Euclidean distance from ``z`` to the boundary (negative outside, inf for C^n)."""
    z = as_point(z, d.n)
    if isinstance(d, FullSpace):
        return np.full(z.shape[:-1], np.inf)
    if isinstance(d, UnitBall):
        return 1.0 - np.sqrt(norm2(z))
    radii = np.asarray(d.radii)
    gaps = radii - np.abs(z)
    return np.min(np.where(np.isfinite(radii), gaps, np.inf), axis=-1)


def contains(d: DomainSpec, z, margin: float = 0.0):
    if margin < 0:
        raise ValueError("margin must be >= 0")
    dist = boundary_distance(d, z)
    out = (dist > 0) & (dist >= margin)
    return bool(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------- sampling

def uniform_disc(rng: np.random.Generator, shape, radius: float = 1.0) -> np.ndarray:
    r = radius * np.sqrt(rng.random(shape))
    return r * np.exp(2j * np.pi * rng.random(shape))


def uniform_sphere(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    g = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
    return g / np.sqrt(norm2(g))[:, None]


def beta_ball(rng: np.random.Generator, count: int, n: int, alpha: float, radius: float = 1.0) -> np.ndarray:
    """Exact draws from the density proportional to (1 - |z|^2/R^2)^alpha on the ball of radius R.

    |z|^2/R^2 follows Beta(n, alpha + 1) and the direction is uniform on the sphere.
    """
    s = rng.beta(n, alpha + 1.0, size=count)
    return radius * np.sqrt(s)[:, None] * uniform_sphere(rng, count, n)


@dataclass
class Sampler:
    """Seeded point sampler for a domain.

    ``uniform`` draws uniformly from a compact piece of the domain: the ball of
    radius ``extent`` for C^n factors and the whole (open) disc or ball
    otherwise. ``weighted`` draws from a smooth density: a complex Gaussian with
    E|z_j|^2 = 1/alpha on C factors and (1-|z|^2)^alpha on disc/ball factors.
    """

    domain: DomainSpec
    strategy: str = "uniform"
    seed: int = 0
    alpha: float = 1.0
    extent: float = 3.0

    def __post_init__(self):
        if self.strategy not in ("uniform", "weighted"):
            raise ValueError(f"unknown sampling strategy {self.strategy!r}")
        self.rng = np.random.default_rng(self.seed)

    def sample(self, count: int) -> np.ndarray:
        if count < 1:
            raise ValueError("count must be >= 1")
        d, rng = self.domain, self.rng
        while True:
            pts = self._draw(count)
            ok = contains(d, pts, SAMPLE_MARGIN)
            if np.all(ok):
                return pts
            # redraw the (measure-zero in practice) boundary hits
            pts[~ok] = self._draw(int((~ok).sum()))
            if np.all(contains(d, pts, SAMPLE_MARGIN)):
                return pts

    def _draw(self, count):
        d, rng = self.domain, self.rng
        weighted = self.strategy == "weighted"
        if isinstance(d, UnitBall):
            a = self.alpha if weighted else 0.0
            return beta_ball(rng, count, d.n, a)
        cols = []
        for r in d.radii:
            if math.isinf(r):
                if weighted:
                    sd = math.sqrt(0.5 / self.alpha)
                    cols.append(sd * (rng.normal(size=count) + 1j * rng.normal(size=count)))
                else:
                    cols.append(uniform_disc(rng, count, self.extent))
            else:
                a = self.alpha if weighted else 0.0
                cols.append(beta_ball(rng, count, 1, a, radius=r)[:, 0])
        if isinstance(d, FullSpace) and not weighted and d.n > 1:
            # compact exhaustion of C^n by a ball, not a polydisc
            return beta_ball(rng, count, d.n, 0.0, radius=self.extent)
        return np.stack(cols, axis=-1)


def sample(s: Sampler, count: int) -> np.ndarray:
    return s.sample(count)


def spawn_samplers(s: Sampler, k: int) -> list[Sampler]:
    """Independent samplers with derived seeds, one per worker."""
    seeds = np.random.SeedSequence(s.seed).spawn(k)
    return [
        Sampler(s.domain, s.strategy, int(ss.generate_state(1, dtype=np.uint64)[0]), s.alpha, s.extent)
        for ss in seeds
    ]
