import math
import os

import numpy as np
import pytest
from scipy import integrate as sint

from sharpeval.domains import FullSpace, Polydisc
from sharpeval.measures import MeasureSpec, ball_space, fock_space, polydisc_space
from sharpeval.quadrature import (
    BallRef,
    DiscFactor,
    GaussFactor,
    IntegrationPlan,
    ProductRef,
    importance_sample,
    integrate,
)


def test_gaussian_integral():
    # integral of e^{-|z|^2} dlambda over C = pi, taken against Lebesgue via the measure's reference
    r = integrate(IntegrationPlan(tol=1e-12), MeasureSpec(FullSpace(1)), lambda z: np.exp(-np.abs(z[..., 0]) ** 2))
    assert r.converged and abs(r.value - math.pi) < 1e-12 * math.pi


def test_disc_area():
    r = integrate(IntegrationPlan(), DiscFactor(0.0), lambda z: np.ones(len(z)))
    assert abs(r.value - math.pi) < 1e-14


def test_bidisc_product_oracle():
    ref = ProductRef((DiscFactor(0.0), DiscFactor(0.0)))
    g = lambda z: np.prod(1 - np.abs(z) ** 2, axis=-1)
    r = integrate(IntegrationPlan(tol=1e-12), ref, g)
    assert abs(r.value - (math.pi / 2) ** 2) < 1e-12


@pytest.mark.parametrize("ref", [GaussFactor(0.7, 1.5), DiscFactor(0.5, 2.0, 1.0), BallRef(3, 0.5, 0.5, (0.1, 0.2j, 0.0))])
def test_reference_mass_matches_rule(ref):
    r = integrate(IntegrationPlan(), ref, lambda z: np.ones(len(z)))
    assert abs(r.value - ref.mass) < 1e-12 * ref.mass


def test_radial_power_mass_oracle():
    # GaussFactor(c, g): |z|^{2g} e^{-c|z|^2}; polar oracle 2 pi int r^{2g+1} e^{-c r^2} dr
    c, g = 0.7, 1.5
    oracle = 2 * math.pi * sint.quad(lambda r: r ** (2 * g + 1) * math.exp(-c * r * r), 0, np.inf)[0]
    assert abs(GaussFactor(c, g).mass - oracle) < 1e-8 * oracle
    b, R = 0.5, 2.0
    # the disc radial power is normalised: (|z|/R)^{2g}
    oracle = 2 * math.pi * sint.quad(lambda r: (r / R) ** 2 * r * (1 - r * r / R ** 2) ** b, 0, R)[0]
    assert abs(DiscFactor(b, R, 1.0).mass - oracle) < 1e-8 * oracle


def test_ball_rule_polynomial_moment():
    # E|z_1|^2 under (1-|z|^2)^a on B_2: oracle from polar coordinates, |z_1|^2 averages |z|^2/2
    n, a = 2, 0.5
    num = sint.quad(lambda r: r ** 2 / n * (1 - r * r) ** a * r ** (2 * n - 1), 0, 1)[0]
    den = sint.quad(lambda r: (1 - r * r) ** a * r ** (2 * n - 1), 0, 1)[0]
    ref = BallRef(n, a)
    r = integrate(IntegrationPlan(tol=1e-12), ref, lambda z: np.abs(z[..., 0]) ** 2)
    assert abs(r.value / ref.mass - num / den) < 1e-10


def test_rule_doubling_cuts_error():
    ref = GaussFactor(1.0)
    g = lambda z: np.cos(1.5 * z[..., 0].real) * np.exp(-0.5 * np.abs(z[..., 0]) ** 2)
    exact = math.pi / 1.5 * math.exp(-1.5 ** 2 / 6)  # integral of cos(b x) e^{-1.5|z|^2}
    errs = []
    for level in range(4):
        rule = ref.rule(level)
        idx = np.arange(rule.size)
        pts, w = rule.take(idx)
        errs.append(abs(float(np.sum(w * g(pts))) - exact))
    for e0, e1 in zip(errs, errs[1:]):
        if e0 < 1e-12:
            break
        assert e1 <= e0 / 4


def test_mc_unbiased_across_seeds():
    ref = DiscFactor(0.0)
    g = lambda z: np.abs(z[..., 0]) ** 2
    vals, errs = [], []
    for seed in range(32):
        r = integrate(IntegrationPlan("monte-carlo", samples=20_000, seed=seed), ref, g)
        vals.append(r.value)
        errs.append(r.error_estimate)
    pooled = math.sqrt(np.sum(np.square(errs))) / 32
    assert abs(np.mean(vals) - math.pi / 2) < 3 * pooled


@pytest.mark.parametrize("space", [ball_space(2, 0.3, 2.0), polydisc_space((0.5, 1.0), 2.0), fock_space((1.0, 2.0), p=1.0)])
def test_deterministic_and_mc_agree(space):
    g = lambda z: 1 + np.abs(z[..., 0]) ** 2 * np.cos(z[..., 1].imag)
    det = integrate(IntegrationPlan(tol=1e-10), space, g)
    mc = integrate(IntegrationPlan("monte-carlo", samples=400_000, seed=2), space, g)
    assert abs(det.value - mc.value) < 3 * mc.error_estimate + det.error_estimate


def test_log_mode_matches_linear():
    s = fock_space(1.0, 1, 2.0)
    g = lambda z: np.abs(z[..., 0]) ** 2 + 1
    lin = integrate(IntegrationPlan(), s, g)
    log = integrate(IntegrationPlan(), s, lambda z: np.log(g(z)), log=True)
    assert abs(log.value - lin.value) < 1e-12 * lin.value
    assert abs(log.log_value - math.log(lin.value)) < 1e-12


def test_log_mode_avoids_overflow():
    s = fock_space(1.0, 1, 2.0)
    r = integrate(IntegrationPlan(), s, lambda z: 800.0 + 0 * z[..., 0].real, log=True)
    assert abs(r.log_value - (800.0 + math.log(s.N))) < 1e-10


def test_non_convergence_is_flagged():
    r = integrate(IntegrationPlan(nodes=300, tol=1e-14), DiscFactor(0.0), lambda z: 1 / (1.001 - np.abs(z[..., 0])))
    assert not r.converged and r.error_estimate > 0


@pytest.mark.parametrize("alpha,p", [(1.0, 2.0), (2.0, 0.5)])
def test_importance_sample_gaussian_moment(alpha, p):
    pts, w = importance_sample(fock_space(alpha, 1, p), 200_000, seed=4)
    r2 = np.abs(pts[:, 0]) ** 2
    se = r2.std() / math.sqrt(len(r2))
    assert abs(np.sum(w * r2) - 2 / (p * alpha)) < 3 * se
    assert abs(np.sum(w) - 1.0) < 1e-12


@pytest.mark.parametrize("alpha", [0.0, 1.5])
def test_importance_sample_beta_moment(alpha):
    pts, w = importance_sample(ball_space(1, alpha, 2.0), 200_000, seed=5)
    v = 1 - np.abs(pts[:, 0]) ** 2
    se = v.std() / math.sqrt(len(v))
    assert abs(np.sum(w * v) - (alpha + 1) / (alpha + 2)) < 3 * se


def test_mc_reproducible_and_thread_independent(monkeypatch):
    ref = BallRef(2, 0.0)
    g = lambda z: np.cos(z[..., 0].real) + np.abs(z[..., 1])
    plan = IntegrationPlan("monte-carlo", samples=300_000, seed=9)
    monkeypatch.setenv("SHARPEVAL_THREADS", "1")
    a = integrate(plan, ref, g)
    monkeypatch.setenv("SHARPEVAL_THREADS", "4")
    b = integrate(plan, ref, g)
    assert a.value == b.value and a.error_estimate == b.error_estimate


def test_plan_validation():
    with pytest.raises(ValueError):
        IntegrationPlan("simpson")
    with pytest.raises(ValueError):
        IntegrationPlan(tol=0.0)
    with pytest.raises(ValueError):
        IntegrationPlan(samples=0)
