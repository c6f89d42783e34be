"""Points of C^n and holomorphic functions that can be evaluated on them.

Points are plain complex numpy arrays. A single point has shape ``(n,)``; a
batch of points has shape ``(m, n)``. Every function here is vectorised over
leading axes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np


class BranchError(ValueError):
    """A principal-branch power was evaluated where its base leaves the slit plane."""


def as_point(z, n: int | None = None) -> np.ndarray:
    """Validate ``z`` as a point (or batch of points) of C^n."""
    arr = np.asarray(z, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.shape[-1] < 1:
        raise ValueError("points need at least one coordinate")
    if n is not None and arr.shape[-1] != n:
        raise ValueError(f"dimension mismatch: expected {n}, got {arr.shape[-1]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point has non-finite coordinates")
    return arr


def inner(z, w) -> complex | np.ndarray:
    """Hermitian inner product sum_j z_j * conj(w_j)."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if z.shape[-1] != w.shape[-1]:
        raise ValueError(f"dimension mismatch: {z.shape[-1]} vs {w.shape[-1]}")
    return np.sum(z * np.conj(w), axis=-1)


def norm2(z) -> float | np.ndarray:
    z = np.asarray(z, dtype=complex)
    return np.sum(z.real ** 2 + z.imag ** 2, axis=-1)


class HoloFunction:
    """Base class; subclasses implement ``__call__`` on arrays of points."""

    label: str = ""

    @property
    def dim(self) -> int | None:
        return None

    @property
    def zero_free(self) -> bool:
        """True when the function is known to have no zeros on its domain."""
        return False

    def __call__(self, z) -> np.ndarray:
        raise NotImplementedError

    def log_abs(self, z) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self(z)))

    def __repr__(self):
        return f"{type(self).__name__}({self.label!r})"


@dataclass(frozen=True)
class PolyExpTerm:
    """``coeff * z**powers * exp(expvec . z)``."""

    coeff: complex
    powers: tuple[int, ...]
    expvec: tuple[complex, ...]

    def __post_init__(self):
        if len(self.powers) != len(self.expvec):
            raise ValueError("powers and expvec must have equal length")
        if any(k < 0 for k in self.powers):
            raise ValueError("negative power in poly-exp term")


class PolyExp(HoloFunction):
    """Finite sum of poly-exp terms. Zero coefficients are dropped and like terms merged."""

    def __init__(self, terms: Sequence[PolyExpTerm], n: int | None = None, label: str = ""):
        merged: dict[tuple, complex] = {}
        for t in terms:
            if n is None:
                n = len(t.powers)
            if len(t.powers) != n:
                raise ValueError("terms of different dimension")
            key = (tuple(int(k) for k in t.powers), tuple(complex(b) for b in t.expvec))
            merged[key] = merged.get(key, 0j) + complex(t.coeff)
        if n is None:
            raise ValueError("empty poly-exp sum needs an explicit dimension")
        self.n = n
        self.terms = tuple(
            PolyExpTerm(c, k, b) for (k, b), c in merged.items() if c != 0
        )
        self.label = label or self._default_label()
        m = len(self.terms)
        self._coeffs = np.array([t.coeff for t in self.terms], dtype=complex)
        self._powers = np.array([t.powers for t in self.terms], dtype=int).reshape(m, n)
        self._expvecs = np.array([t.expvec for t in self.terms], dtype=complex).reshape(m, n)

    @classmethod
    def constant(cls, c: complex, n: int) -> "PolyExp":
        return cls([PolyExpTerm(c, (0,) * n, (0j,) * n)], n=n)

    @classmethod
    def monomial(cls, powers, coeff: complex = 1.0) -> "PolyExp":
        powers = tuple(powers)
        return cls([PolyExpTerm(coeff, powers, (0j,) * len(powers))])

    @classmethod
    def exponential(cls, expvec, coeff: complex = 1.0) -> "PolyExp":
        expvec = tuple(complex(b) for b in expvec)
        return cls([PolyExpTerm(coeff, (0,) * len(expvec), expvec)])

    @classmethod
    def linear(cls, const: complex, coeffs) -> "PolyExp":
        """``const + sum_j coeffs[j] * z_j``."""
        n = len(coeffs)
        terms = [PolyExpTerm(const, (0,) * n, (0j,) * n)]
        for j, c in enumerate(coeffs):
            k = [0] * n
            k[j] = 1
            terms.append(PolyExpTerm(c, tuple(k), (0j,) * n))
        return cls(terms, n=n)

    def _default_label(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            s = f"({t.coeff:.3g})"
            for j, k in enumerate(t.powers):
                if k:
                    s += f"*z{j + 1}^{k}"
            if any(t.expvec):
                s += "*exp(" + "+".join(f"({b:.3g})z{j + 1}" for j, b in enumerate(t.expvec) if b) + ")"
            parts.append(s)
        return " + ".join(parts)

    @property
    def dim(self) -> int:
        return self.n

    @property
    def zero_free(self) -> bool:
        return len(self.terms) == 1 and not self._powers.any()

    def _parts(self, z: np.ndarray):
        """Monomial values and exponents of every term, each of shape ``(m, ...)``."""
        maxdeg = int(self._powers.max()) if self._powers.size else 0
        table = [np.ones_like(z)]
        for _ in range(maxdeg):
            table.append(table[-1] * z)
        monos, expos = [], []
        for k, b in zip(self._powers, self._expvecs):
            mono = np.ones(z.shape[:-1], dtype=complex)
            for j, kj in enumerate(k):
                if kj:
                    mono = mono * table[kj][..., j]
            monos.append(mono)
            expos.append(z @ b if b.any() else np.zeros(z.shape[:-1], dtype=complex))
        return np.array(monos), np.array(expos)

    def __call__(self, z) -> np.ndarray:
        z = as_point(z, self.n)
        if not self.terms:
            return np.zeros(z.shape[:-1], dtype=complex)
        monos, expos = self._parts(z)
        return np.einsum("t,t...->...", self._coeffs, monos * np.exp(expos))

    def log_abs(self, z) -> np.ndarray:
        # shift by the largest exponential so large exp terms cannot overflow
        z = as_point(z, self.n)
        if not self.terms:
            return np.full(z.shape[:-1], -np.inf)
        monos, expos = self._parts(z)
        shift = expos.real.max(axis=0)
        vals = np.einsum("t,t...->...", self._coeffs, monos * np.exp(expos - shift))
        with np.errstate(divide="ignore"):
            return shift + np.log(np.abs(vals))

    def coefficient_vector(self) -> np.ndarray:
        return self._coeffs.copy()

    def with_coefficients(self, coeffs) -> "PolyExp":
        coeffs = np.asarray(coeffs, dtype=complex)
        return PolyExp(
            [PolyExpTerm(c, t.powers, t.expvec) for c, t in zip(coeffs, self.terms)], n=self.n
        )

    def scaled(self, c: complex) -> "PolyExp":
        return self.with_coefficients(self._coeffs * c)

    def to_config(self) -> list[dict]:
        return [
            {
                "coeff_re": complex(t.coeff).real,
                "coeff_im": complex(t.coeff).imag,
                "powers": list(t.powers),
                "exp_re": [complex(b).real for b in t.expvec],
                "exp_im": [complex(b).imag for b in t.expvec],
            }
            for t in self.terms
        ]

    @classmethod
    def from_config(cls, terms: list[dict], n: int | None = None, label: str = "") -> "PolyExp":
        out = []
        for i, t in enumerate(terms):
            try:
                powers = tuple(int(k) for k in t["powers"])
                exp_re = t.get("exp_re", [0.0] * len(powers))
                exp_im = t.get("exp_im", [0.0] * len(powers))
                coeff = complex(t.get("coeff_re", 0.0), t.get("coeff_im", 0.0))
            except (KeyError, TypeError) as exc:
                raise ValueError(f"terms[{i}]: malformed term ({exc})") from exc
            if not (len(exp_re) == len(exp_im) == len(powers)):
                raise ValueError(f"terms[{i}]: powers/exp_re/exp_im lengths differ")
            out.append(PolyExpTerm(coeff, powers, tuple(complex(a, b) for a, b in zip(exp_re, exp_im))))
        return cls(out, n=n, label=label)


class Composed(HoloFunction):
    """``base o mapping``. ``mapping`` is anything with an ``apply`` method."""

    def __init__(self, base: HoloFunction, mapping, label: str = ""):
        self.base = base
        self.mapping = mapping
        self.label = label or f"({base.label})o{mapping!r}"

    @property
    def dim(self):
        return self.base.dim

    @property
    def zero_free(self) -> bool:
        return self.base.zero_free

    def __call__(self, z):
        return self.base(self.mapping.apply(z))

    def log_abs(self, z):
        return self.base.log_abs(self.mapping.apply(z))


class Power(HoloFunction):
    """Principal-branch power ``coeff * base**exponent`` of a zero-free base.

    The base must stay off the closed negative real axis wherever the power is
    evaluated; violations raise :class:`BranchError`.
    """

    def __init__(self, base: HoloFunction, exponent: float, coeff: complex = 1.0, label: str = ""):
        self.base = base
        self.exponent = complex(exponent) if np.iscomplexobj(exponent) else float(exponent)
        self.coeff = complex(coeff)
        self.label = label or f"{self.coeff:.3g}*({base.label})^{exponent:.4g}"

    @property
    def dim(self):
        return self.base.dim

    @property
    def zero_free(self) -> bool:
        return True

    def _base_values(self, z):
        b = self.base(z)
        bad = (b.imag == 0) & (b.real <= 0)
        if np.any(bad):
            raise BranchError(f"base of {self.label} touches the branch cut (-inf, 0]")
        return b

    def __call__(self, z):
        b = self._base_values(z)
        return self.coeff * np.exp(self.exponent * np.log(b))

    def log_abs(self, z):
        b = self._base_values(z)
        return np.log(abs(self.coeff)) + np.real(self.exponent * np.log(b))


class Product(HoloFunction):
    def __init__(self, factors: Sequence[HoloFunction], label: str = ""):
        if not factors:
            raise ValueError("empty product")
        self.factors = tuple(factors)
        self.label = label or " * ".join(f"[{f.label}]" for f in self.factors)

    @property
    def dim(self):
        return self.factors[0].dim

    @property
    def zero_free(self) -> bool:
        return all(f.zero_free for f in self.factors)

    def __call__(self, z):
        out = self.factors[0](z)
        for f in self.factors[1:]:
            out = out * f(z)
        return out

    def log_abs(self, z):
        return sum(f.log_abs(z) for f in self.factors)


def evaluate(f: HoloFunction, z) -> complex | np.ndarray:
    """Value of ``f`` at a point (scalar result) or a batch of points."""
    z = np.asarray(z, dtype=complex)
    out = f(z)
    return complex(out) if np.ndim(out) == 0 else out


def compose_translation(f: PolyExp, shift) -> PolyExp:
    """Exact poly-exp representation of ``z -> f(z + shift)``."""
    if not isinstance(f, PolyExp):
        raise TypeError("compose_translation needs a poly-exp sum")
    s = as_point(shift, f.n)
    terms = []
    for t in f.terms:
        b = np.asarray(t.expvec, dtype=complex)
        c0 = complex(t.coeff) * complex(np.exp(np.dot(b, s)))
        # expand prod_j (z_j + s_j)^k_j binomially
        per_coord = [
            [(comb(k, m) * s[j] ** (k - m), m) for m in range(k + 1)]
            for j, k in enumerate(t.powers)
        ]
        for combo in np.ndindex(*[len(p) for p in per_coord]):
            coeff = c0
            powers = []
            for j, idx in enumerate(combo):
                c, m = per_coord[j][idx]
                coeff *= c
                powers.append(m)
            terms.append(PolyExpTerm(coeff, tuple(powers), t.expvec))
    return PolyExp(terms, n=f.n, label=f"({f.label})(z+s)")


def random_polyexp(
    rng: np.random.Generator,
    n: int,
    max_terms: int = 3,
    max_degree: int = 2,
    exp_scale: float = 0.5,
) -> PolyExp:
    """Random poly-exp sum used for property tests and δ₀ families."""
    m = int(rng.integers(1, max_terms + 1))
    terms = []
    for _ in range(m):
        coeff = complex(rng.normal(), rng.normal())
        powers = tuple(int(k) for k in rng.integers(0, max_degree + 1, size=n))
        if rng.random() < 0.5:
            expvec = tuple(exp_scale * (rng.normal(size=n) + 1j * rng.normal(size=n)) / np.sqrt(2))
        else:
            expvec = (0j,) * n
        terms.append(PolyExpTerm(coeff, powers, expvec))
    return PolyExp(terms, n=n)
