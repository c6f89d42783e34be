"""JSON run configuration: validation and construction of the mathematical objects."""
from __future__ import annotations

import copy
import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .automorphisms import BallMobius, PolydiscMobius, Translation
from .domains import Sampler, make_domain
from .geometry import PolyExp, random_polyexp
from .measures import SpaceSpec, ball_space, fock_space, polydisc_space
from .quadrature import IntegrationPlan

CHECK_TYPES = ("bound", "sup-bound", "invariance", "pluriharmonicity", "sharpness", "delta0", "scheme", "integrated")


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _need(d: dict, key: str, path: str):
    if not isinstance(d, dict):
        raise ConfigError(path, "expected an object")
    if key not in d:
        raise ConfigError(f"{path}.{key}", "missing required field")
    return d[key]


def _complex_vec(d: dict, path: str, re_key="z0_re", im_key="z0_im") -> np.ndarray:
    re = _need(d, re_key, path)
    im = d.get(im_key, [0.0] * len(re))
    if len(re) != len(im):
        raise ConfigError(f"{path}.{im_key}", "length differs from the real part")
    return np.asarray(re, float) + 1j * np.asarray(im, float)


def _radius(r, path):
    if isinstance(r, str):
        if r.lower() in ("inf", "+inf"):
            return math.inf
        raise ConfigError(path, f"bad radius {r!r}")
    return float(r)


def build_space(d: dict, path: str) -> SpaceSpec:
    kind = _need(d, "domain", path)
    n = int(_need(d, "n", path))
    p = d.get("p", 2.0)
    p = math.inf if p == "inf" else float(p)
    w = d.get("weight", {"fock": "fock", "ball": "ball", "polydisc": "polydisc"}.get(kind))
    try:
        if kind == "fock" and w in ("fock", "fock_aniso"):
            if "blocks" in d:
                blocks = [tuple(b) for b in d["blocks"]]
                return fock_space(_need(d, "alphas", path), p=p, blocks=blocks)
            if w == "fock_aniso" or "alphas" in d:
                alphas = _need(d, "alphas", path)
                if len(alphas) != n:
                    raise ConfigError(f"{path}.alphas", f"expected {n} values")
                return fock_space(alphas, p=p)
            return fock_space(float(_need(d, "alpha", path)), n, p)
        if kind == "ball" and w == "ball":
            return ball_space(n, float(_need(d, "alpha", path)), p)
        if kind == "polydisc" and w == "polydisc":
            radii = [_radius(r, f"{path}.radii[{i}]") for i, r in enumerate(d.get("radii", [1.0] * n))]
            alphas = d["alphas"] if "alphas" in d else [float(_need(d, "alpha", path))] * n
            if len(alphas) != n or len(radii) != n:
                raise ConfigError(path, f"alphas and radii need {n} entries")
            if all(math.isinf(r) for r in radii):
                return fock_space(alphas, p=p)
            return polydisc_space(alphas, p, radii)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc
    raise ConfigError(path, f"unsupported domain/weight pair {kind!r}/{w!r}")


def build_automorphism(d: dict, path: str, space: SpaceSpec | None = None):
    kind = _need(d, "automorphism", path)
    z0 = _complex_vec(d, path)
    try:
        if kind == "translation":
            return Translation(z0)
        if kind == "ball":
            return BallMobius(z0)
        if kind == "polydisc":
            radii = d.get("radii")
            if radii is None and space is not None:
                radii = space.domain.radii
            radii = None if radii is None else [_radius(r, f"{path}.radii") for r in radii]
            return PolydiscMobius(z0, radii)
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc
    raise ConfigError(f"{path}.automorphism", f"unknown automorphism {kind!r}")


def build_plan(d: dict | None, path: str, base: IntegrationPlan | None = None) -> IntegrationPlan | None:
    if not d:
        return base
    base = base or IntegrationPlan()
    try:
        return IntegrationPlan(
            method=d.get("method", base.method),
            nodes=int(d.get("nodes", base.nodes)),
            samples=int(d.get("samples", base.samples)),
            seed=int(d.get("seed", base.seed)),
            tol=float(d.get("tol", base.tol)),
        )
    except (ValueError, TypeError) as exc:
        raise ConfigError(path, str(exc)) from exc


@dataclass
class RunConfig:
    raw: dict
    seed: int
    spaces: dict[str, SpaceSpec]
    automorphisms: dict[str, Any]
    functions: dict[str, list]  # id -> list of HoloFunction (random families expand)
    checks: list[dict]
    plan: IntegrationPlan | None
    out_path: str | None
    out_format: str

    @property
    def digest(self) -> str:
        return config_digest(self.raw)


def config_digest(raw: dict) -> str:
    return hashlib.sha256(json.dumps(raw, sort_keys=True, separators=(",", ":")).encode()).hexdigest()[:16]


def _build_function(fid: str, d: dict, path: str, spaces: dict, seed: int) -> list:
    if "terms" in d:
        try:
            return [PolyExp.from_config(d["terms"], n=d.get("n"), label=d.get("label", fid))]
        except ValueError as exc:
            raise ConfigError(f"{path}.terms", str(exc)) from exc
    if "random" in d:
        r = d["random"]
        n = int(_need(r, "n", f"{path}.random"))
        rng = np.random.default_rng([seed, int(r.get("seed", 0))])
        out = []
        for i in range(int(_need(r, "count", f"{path}.random"))):
            f = random_polyexp(rng, n, int(r.get("max_terms", 3)), int(r.get("max_degree", 2)),
                               float(r.get("exp_scale", 0.5)))
            f.label = f"{fid}#{i}"
            out.append(f)
        if r.get("include_constant", False):
            out.append(PolyExp.constant(1.0, n))
        return out
    raise ConfigError(path, "function needs 'terms' or 'random'")


def load_config(raw: dict, seed_override: int | None = None) -> RunConfig:
    """Validate a config dict and build every referenced object."""
    raw = copy.deepcopy(raw)
    if not isinstance(raw, dict):
        raise ConfigError("$", "config must be a JSON object")
    if seed_override is not None:
        raw["seed"] = int(seed_override)
    if "seed" not in raw:
        raise ConfigError("$.seed", "missing required field (runs must be reproducible)")
    seed = int(raw["seed"])
    spaces = {k: build_space(v, f"$.spaces.{k}") for k, v in raw.get("spaces", {}).items()}
    autos = {}
    for k, v in raw.get("automorphisms", {}).items():
        sp = spaces.get(v.get("space")) if isinstance(v, dict) else None
        autos[k] = build_automorphism(v, f"$.automorphisms.{k}", sp)
    functions = {k: _build_function(k, v, f"$.functions.{k}", spaces, seed) for k, v in raw.get("functions", {}).items()}
    checks = raw.get("checks", [])
    if not isinstance(checks, list):
        raise ConfigError("$.checks", "expected a list")
    for i, c in enumerate(checks):
        path = f"$.checks[{i}]"
        t = _need(c, "type", path)
        if t not in CHECK_TYPES:
            raise ConfigError(f"{path}.type", f"unknown check {t!r}; expected one of {', '.join(CHECK_TYPES)}")
        if "space" in c and c["space"] not in spaces:
            raise ConfigError(f"{path}.space", f"undefined space id {c['space']!r}")
        if "automorphism" in c and c["automorphism"] not in autos:
            raise ConfigError(f"{path}.automorphism", f"undefined automorphism id {c['automorphism']!r}")
        for j, fid in enumerate(c.get("functions", [])):
            if fid not in functions:
                raise ConfigError(f"{path}.functions[{j}]", f"undefined function id {fid!r}")
        for key in ("space",) if t != "invariance" else ():
            _need(c, key, path)
    out = raw.get("output", {})
    fmt = out.get("format", "json")
    if fmt not in ("json", "csv"):
        raise ConfigError("$.output.format", f"unknown format {fmt!r}")
    plan = build_plan(raw.get("plan"), "$.plan")
    return RunConfig(raw, seed, spaces, autos, functions, checks, plan, out.get("path"), fmt)


def resolve_points(spec, space: SpaceSpec, rng_seed: int, path: str) -> np.ndarray:
    """Points from a list of {re, im} objects or {"random": k, "radius": r}."""
    n = space.n
    if isinstance(spec, dict) and "random" in spec:
        count = int(spec["random"])
        radius = float(spec.get("radius", 3.0))
        s = Sampler(space.domain, "uniform", rng_seed, extent=radius)
        pts = s.sample(count)
        if space.geometry != "fock":
            # keep points in a compact part of bounded domains
            pts = pts * min(1.0, radius)
        return pts
    if not isinstance(spec, list):
        raise ConfigError(path, "points must be a list or a random spec")
    out = []
    for i, p in enumerate(spec):
        v = _complex_vec(p, f"{path}[{i}]", "re", "im")
        if len(v) != n:
            raise ConfigError(f"{path}[{i}]", f"expected {n} coordinates")
        out.append(v)
    return np.array(out, complex).reshape(-1, n)
