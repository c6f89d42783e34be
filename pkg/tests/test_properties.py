import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from sharpeval.automorphisms import BallMobius, PolydiscMobius, Translation
from sharpeval.domains import FullSpace, Polydisc, make_domain
from sharpeval.geometry import compose_translation, inner, norm2, random_polyexp
from sharpeval.measures import BallBergmanWeight, FockWeight, PolydiscBergmanWeight
from sharpeval.estimates import pointwise_bound_check
from sharpeval.measures import fock_space

finite = st.floats(-5, 5, allow_nan=False)
cplx = st.builds(complex, finite, finite)
seeds = st.integers(0, 2**32 - 1)


def vec(n):
    return st.lists(cplx, min_size=n, max_size=n).map(np.array)


def in_ball(n, r=0.95):
    return vec(n).map(lambda z: z * (r * np.tanh(np.linalg.norm(z)) / max(np.linalg.norm(z), 1e-300)))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(vec(n), vec(n))))
def test_inner_conjugate_symmetric(zw):
    z, w = zw
    assert abs(inner(z, w) - np.conj(inner(w, z))) <= 1e-12 * (1 + abs(inner(z, w)))


@given(st.integers(1, 4).flatmap(vec))
def test_norm2_sum_of_squares(z):
    ref = sum(abs(x) ** 2 for x in z)
    assert abs(norm2(z) - ref) <= 1e-14 * max(ref, 1e-300)


@given(seeds, st.integers(1, 3))
def test_compose_translation_agrees(seed, n):
    rng = np.random.default_rng(seed)
    f = random_polyexp(rng, n)
    s = rng.normal(size=n) + 1j * rng.normal(size=n)
    z = rng.normal(size=(8, n)) + 1j * rng.normal(size=(8, n))
    g = compose_translation(f, s)
    a, b = g(z), f(z + s)
    # relative to |f|, floored near zeros of f where the binomial re-expansion cancels
    assert np.all(np.abs(a - b) <= 1e-12 * np.maximum(np.abs(b), 1e-2 * np.abs(b).max() + 1e-300))


@given(seeds, cplx, cplx)
def test_eval_linear_in_coefficients(seed, a, b):
    rng = np.random.default_rng(seed)
    f = random_polyexp(rng, 2, max_terms=4)
    c1 = rng.normal(size=len(f.terms)) + 0j
    c2 = rng.normal(size=len(f.terms)) + 1j * rng.normal(size=len(f.terms))
    z = rng.normal(size=(5, 2)) + 1j * rng.normal(size=(5, 2))
    lhs = f.with_coefficients(a * c1 + b * c2)(z)
    rhs = a * f.with_coefficients(c1)(z) + b * f.with_coefficients(c2)(z)
    scale = (abs(a) + abs(b) + 1) * (np.abs(f.with_coefficients(c1)(z)) + np.abs(f.with_coefficients(c2)(z)) + 1)
    assert np.all(np.abs(lhs - rhs) <= 1e-12 * scale)


@given(st.integers(1, 5))
def test_all_infinite_polydisc_is_fullspace(n):
    assert make_domain("polydisc", n, ["inf"] * n) == FullSpace(n)
    assert Polydisc(n, (math.inf,) * n) == FullSpace(n)


@given(seeds, st.integers(1, 3))
def test_weights_radial_per_coordinate(seed, n):
    rng = np.random.default_rng(seed)
    z = 0.9 * np.tanh(rng.normal(size=(10, n))) / math.sqrt(n) + 0j
    z = z * np.exp(1j * rng.normal(size=(10, n)))
    ph = np.exp(1j * rng.uniform(0, 2 * np.pi, size=(10, n)))
    for w in (FockWeight(tuple(rng.uniform(0.1, 3, n))), BallBergmanWeight(rng.uniform(-0.9, 3), 2.0, n),
              PolydiscBergmanWeight(tuple(rng.uniform(-0.9, 3, n)), 1.5)):
        assert np.allclose(w(z * ph), w(z), rtol=1e-12, atol=1e-13)


@given(st.integers(1, 3).flatmap(in_ball))
def test_apply_zero_is_z0(z0):
    for a in (Translation(z0 * 4), BallMobius(z0), PolydiscMobius(z0 / max(np.abs(z0).max(), 1) * 0.99)):
        assert np.max(np.abs(a.apply(np.zeros(len(z0))) - a.z0)) <= 1e-14


@settings(max_examples=50)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(in_ball(n, 0.9), in_ball(n, 0.9))))
def test_mobius_involutions(pair):
    z0, z = pair
    b = BallMobius(z0)
    assert np.max(np.abs(b.apply(b.apply(z)) - z)) <= 1e-10
    p = PolydiscMobius(z0)
    assert np.max(np.abs(p.apply(p.apply(z)) - z)) <= 1e-10


@settings(max_examples=25, deadline=None)
@given(seeds, st.sampled_from([0.5, 1.0, 2.0]), st.sampled_from([1.0, 2.0, 4.0]))
def test_bound_ratio_scale_invariant(seed, alpha, p):
    rng = np.random.default_rng(seed)
    s = fock_space(alpha, 1, p)
    f = random_polyexp(rng, 1, max_terms=1)
    z = rng.normal(size=1) + 1j * rng.normal(size=1)
    c = complex(rng.normal(), rng.normal()) + 0.1
    r1 = pointwise_bound_check(f, s, z)
    r2 = pointwise_bound_check(f.scaled(c), s, z)
    assert r1.passed and abs(r1.ratio - r2.ratio) <= 1e-9 * r1.ratio
