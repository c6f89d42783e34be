"""Built-in run configurations.

Each preset is a plain config dict plus a description and the parameter
ranges for which the underlying estimate is claimed.
"""
from __future__ import annotations

import copy
import json

_PRESETS: dict[str, dict] = {}


def _register(name: str, description: str, ranges: dict, config: dict) -> None:
    _PRESETS[name] = {"description": description, "ranges": ranges, "config": config}


def _pts(*zs):
    return [{"re": [c.real for c in z], "im": [c.imag for c in z]} for z in zs]


_register(
    "fock-theorem-f",
    "Gaussian-weighted Fock spaces on C and C^2: pointwise bound, extremals and delta0.",
    {"alpha": "(0, inf)", "p": "(0, inf)", "n": "[1, inf)"},
    {
        "seed": 1,
        "spaces": {
            "fock1": {"domain": "fock", "n": 1, "alpha": 1.0, "p": 2.0},
            "fock1_half": {"domain": "fock", "n": 1, "alpha": 0.5, "p": 1.0},
            "fock2": {"domain": "fock", "n": 2, "alpha": 2.0, "p": 4.0},
        },
        "functions": {
            "rand1": {"random": {"n": 1, "count": 4, "seed": 11}},
            "rand2": {"random": {"n": 2, "count": 3, "seed": 12}},
        },
        "checks": [
            {"type": "bound", "space": "fock1", "functions": ["rand1"], "points": {"random": 2, "radius": 3.0}},
            {"type": "bound", "space": "fock1_half", "functions": ["rand1"], "points": {"random": 1, "radius": 3.0}},
            {"type": "bound", "space": "fock2", "functions": ["rand2"], "points": {"random": 2, "radius": 3.0}},
            {"type": "sharpness", "space": "fock1", "points": _pts([0j], [1 + 0j], [1.2 + 1.6j])},
            {"type": "sharpness", "space": "fock2", "points": _pts([0j, 0j], [0.6 + 0.8j, 0j], [1 + 1j, 1 - 1j])},
            {"type": "delta0", "space": "fock1", "functions": ["rand1"]},
            {"type": "sup-bound", "space": "fock1", "functions": ["rand1"], "budget": 1000},
        ],
    },
)

_register(
    "fock-aniso",
    "Anisotropic Fock weight on C^2 with one parameter per coordinate, plus translation invariance.",
    {"alpha_j": "(0, inf)", "p": "(0, inf)"},
    {
        "seed": 2,
        "spaces": {
            "aniso": {"domain": "fock", "n": 2, "weight": "fock_aniso", "alphas": [0.5, 2.0], "p": 2.0},
            "blocks": {"domain": "fock", "n": 3, "weight": "fock_aniso", "blocks": [[0, 2], [2, 3]],
                       "alphas": [1.0, 0.5], "p": 1.0},
        },
        "automorphisms": {"shift": {"automorphism": "translation", "z0_re": [0.5, -0.3], "z0_im": [0.2, 0.4]}},
        "functions": {
            "rand2": {"random": {"n": 2, "count": 3, "seed": 21}},
            "rand3": {"random": {"n": 3, "count": 2, "seed": 22, "max_terms": 2}},
        },
        "checks": [
            {"type": "bound", "space": "aniso", "functions": ["rand2"], "points": {"random": 2, "radius": 2.0}},
            {"type": "sharpness", "space": "aniso", "points": _pts([0.5 + 0.5j, -1j], [2 + 0j, 0j])},
            {"type": "invariance", "space": "aniso", "automorphism": "shift", "plan": {"tol": 1e-9}},
            {"type": "pluriharmonicity", "space": "aniso", "automorphism": "shift"},
            {"type": "delta0", "space": "aniso", "functions": ["rand2"]},
            {"type": "bound", "space": "blocks", "functions": ["rand3"], "points": {"random": 2, "radius": 2.0}},
            {"type": "sharpness", "space": "blocks", "points": _pts([0.5j, 0.5 + 0j, -1 + 0j])},
        ],
    },
)

_register(
    "ball-bergman",
    "Weighted Bergman spaces of the unit ball with the Mobius-invariant measure.",
    {"alpha": "(-1, inf)", "p": "(0, inf)", "n": "[1, inf)"},
    {
        "seed": 3,
        "spaces": {
            "ball1": {"domain": "ball", "n": 1, "alpha": 0.0, "p": 2.0},
            "ball2": {"domain": "ball", "n": 2, "alpha": 0.5, "p": 2.0},
        },
        "automorphisms": {
            "phi1": {"automorphism": "ball", "z0_re": [0.3], "z0_im": [0.4]},
            "phi2": {"automorphism": "ball", "z0_re": [0.3, -0.2], "z0_im": [0.1, 0.2]},
        },
        "functions": {
            "rand1": {"random": {"n": 1, "count": 3, "seed": 31}},
            "rand2": {"random": {"n": 2, "count": 2, "seed": 32}},
        },
        "plan": {"tol": 1e-8},
        "checks": [
            {"type": "bound", "space": "ball1", "functions": ["rand1"], "points": {"random": 2, "radius": 0.9}},
            {"type": "bound", "space": "ball2", "functions": ["rand2"], "points": {"random": 2, "radius": 0.9}},
            {"type": "sharpness", "space": "ball1", "points": _pts([0j], [0.5 + 0.5j])},
            {"type": "sharpness", "space": "ball2", "points": _pts([0.3 + 0j, 0.4j])},
            {"type": "invariance", "space": "ball2", "automorphism": "phi2",
             "plan": {"method": "monte-carlo", "samples": 200000}},
            {"type": "pluriharmonicity", "space": "ball1", "automorphism": "phi1"},
            {"type": "delta0", "space": "ball1", "functions": ["rand1"]},
        ],
    },
)

_register(
    "polydisc-bergman",
    "Product Bergman weights on the polydisc, including a factor of infinite radius.",
    {"alpha_j": "(-1, inf) on finite factors, (0, inf) on infinite ones", "p": "(0, inf)"},
    {
        "seed": 4,
        "spaces": {
            "disc2": {"domain": "polydisc", "n": 2, "alphas": [0.0, 1.0], "p": 2.0},
            "mixed": {"domain": "polydisc", "n": 2, "alphas": [0.5, 1.0], "radii": [2.0, "inf"], "p": 2.0},
        },
        "automorphisms": {
            "phi": {"automorphism": "polydisc", "space": "disc2", "z0_re": [0.3, -0.1], "z0_im": [0.2, 0.5]},
        },
        "functions": {"rand2": {"random": {"n": 2, "count": 2, "seed": 41}}},
        "plan": {"tol": 1e-8},
        "checks": [
            {"type": "bound", "space": "disc2", "functions": ["rand2"], "points": {"random": 2, "radius": 0.9}},
            {"type": "bound", "space": "mixed", "functions": ["rand2"], "points": {"random": 2, "radius": 0.9}},
            {"type": "sharpness", "space": "disc2", "points": _pts([0.2 + 0.1j, -0.5j])},
            {"type": "sharpness", "space": "mixed", "points": _pts([1 + 0.5j, 1 - 1j])},
            {"type": "invariance", "space": "disc2", "automorphism": "phi",
             "plan": {"method": "monte-carlo", "samples": 200000}},
            {"type": "pluriharmonicity", "space": "disc2", "automorphism": "phi"},
            {"type": "delta0", "space": "disc2", "functions": ["rand2"]},
        ],
    },
)

_register(
    "scheme-generic",
    "The transfer identities behind the bound, checked with Phi = exp(p t) on each geometry.",
    {"p": "(0, inf)"},
    {
        "seed": 5,
        "spaces": {
            "fock": {"domain": "fock", "n": 1, "alpha": 1.0, "p": 2.0},
            "ball": {"domain": "ball", "n": 1, "alpha": 1.0, "p": 2.0},
            "disc": {"domain": "polydisc", "n": 1, "alpha": 0.0, "p": 2.0},
        },
        "automorphisms": {
            "t": {"automorphism": "translation", "z0_re": [0.7], "z0_im": [-0.4]},
            "b": {"automorphism": "ball", "z0_re": [0.4], "z0_im": [0.3]},
            "d": {"automorphism": "polydisc", "z0_re": [-0.5], "z0_im": [0.2]},
        },
        "functions": {"rand1": {"random": {"n": 1, "count": 2, "seed": 51}}},
        "plan": {"tol": 1e-10},
        "checks": [
            {"type": "scheme", "space": "fock", "automorphism": "t", "functions": ["rand1"]},
            {"type": "scheme", "space": "ball", "automorphism": "b", "functions": ["rand1"]},
            {"type": "scheme", "space": "disc", "automorphism": "d", "functions": ["rand1"]},
        ],
    },
)

_register(
    "integrated-remark",
    "Integrated form of the bound over a sub-ball for monotone F.",
    {"F": "nondecreasing on [0, inf)"},
    {
        "seed": 6,
        "spaces": {
            "fock": {"domain": "fock", "n": 1, "alpha": 1.0, "p": 2.0},
            "ball": {"domain": "ball", "n": 2, "alpha": 0.0, "p": 2.0},
        },
        "functions": {
            "rand1": {"random": {"n": 1, "count": 2, "seed": 61}},
            "rand2": {"random": {"n": 2, "count": 1, "seed": 62}},
        },
        "plan": {"tol": 1e-8},
        "checks": [
            {"type": "integrated", "space": "fock", "functions": ["rand1"], "center": {"re": [0.5], "im": [0.5]},
             "radius": 1.0, "F": ["identity", "square", "log1p"]},
            {"type": "integrated", "space": "ball", "functions": ["rand2"], "center": {"re": [0.1, 0.0], "im": [0.0, 0.2]},
             "radius": 0.4, "F": ["identity", "square", "log1p"]},
        ],
    },
)


def names() -> list[str]:
    return list(_PRESETS)


def get(name: str) -> dict:
    """A deep copy of the preset's config dict."""
    if name not in _PRESETS:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(_PRESETS)}")
    return copy.deepcopy(_PRESETS[name]["config"])


def describe(name: str) -> dict:
    get(name)
    return copy.deepcopy(_PRESETS[name])


def dumps(name: str) -> str:
    return json.dumps(get(name), indent=2, sort_keys=True)
