import math

import numpy as np
import pytest
from scipy import integrate as sint

from sharpeval.automorphisms import BallMobius, DomainError, PolydiscMobius, Translation, identity
from sharpeval.domains import Sampler, UnitBall
from sharpeval.measures import (
    BallBergmanWeight,
    FockWeight,
    MeasureSpec,
    PolydiscBergmanWeight,
    ball_space,
    density,
    fock_space,
    normalization,
    pluriharmonicity_residual,
    polydisc_space,
    psi_representative,
    stencil_residual,
    weight,
)
from sharpeval.domains import FullSpace, Polydisc
from sharpeval.quadrature import IntegrationPlan


def test_density_examples():
    assert density(MeasureSpec(FullSpace(2)), [3, 1j]) == 1
    assert density(MeasureSpec(UnitBall(1), "ball-invariant"), [0]) == 1
    d = density(MeasureSpec(Polydisc(2, (1, 1)), "polydisc-invariant"), [0.5, 0])
    assert abs(d - 16 / 9) < 1e-15


def test_density_outside_domain():
    with pytest.raises(DomainError):
        density(MeasureSpec(UnitBall(1), "ball-invariant"), [1.0])


def test_measure_domain_mismatch():
    with pytest.raises(ValueError):
        MeasureSpec(FullSpace(1), "ball-invariant")


def test_weight_examples():
    assert abs(weight(FockWeight.isotropic(2.0, 2), [1.0, math.sqrt(2) * 1j]) - 3) < 1e-15
    assert weight(BallBergmanWeight(0.0, 2.0, 1), [0]) == 0
    w = PolydiscBergmanWeight((0.0, 1.0), 1.0)
    assert abs(weight(w, [0.5, 0]) + 2 * math.log(0.75)) < 1e-15


def test_weight_parameter_guards():
    with pytest.raises(ValueError):
        BallBergmanWeight(-1.0, 2.0, 1)
    with pytest.raises(ValueError):
        PolydiscBergmanWeight((0.0, -1.5), 2.0)
    with pytest.raises(ValueError):
        FockWeight((1.0, 0.0))


def test_block_weight():
    w = FockWeight.from_blocks([1.0, 3.0], [(0, 2), (2, 3)])
    assert w.alphas == (1.0, 1.0, 3.0)
    z = np.array([0.3, 0.4j, 1.0])
    assert abs(w(z) - (0.5 * 0.25 + 1.5)) < 1e-15


# closed-form N oracles, independent of the engine's rules
@pytest.mark.parametrize("alpha,p", [(1.0, 2.0), (0.5, 1.0), (2.0, 4.0)])
def test_fock_normalization(alpha, p):
    s = fock_space(alpha, 1, p)
    oracle = 2 * math.pi / (p * alpha)
    assert abs(normalization(s).value - oracle) < 1e-8 * oracle
    assert abs(s.N - oracle) < 1e-12 * oracle


@pytest.mark.parametrize("alpha,oracle", [(0.0, math.pi), (1.0, math.pi / 2)])
def test_disc_normalization(alpha, oracle):
    s = ball_space(1, alpha, 2.0)
    assert abs(normalization(s).value - oracle) < 1e-8 * oracle


@pytest.mark.parametrize("n,alpha", [(2, 0.5), (3, -0.5), (2, 3.0)])
def test_ball_normalization_polar_oracle(n, alpha):
    radial, _ = sint.quad(lambda r: (1 - r * r) ** alpha * r ** (2 * n - 1), 0, 1)
    oracle = 2 * math.pi ** n / math.gamma(n) * radial
    s = ball_space(n, alpha, 2.0)
    assert abs(normalization(s, IntegrationPlan(tol=1e-10)).value - oracle) < 1e-8 * oracle


def test_polydisc_normalization_with_radii():
    s = polydisc_space((1.0, 0.5), 2.0, (2.0, math.inf))
    disc, _ = sint.quad(lambda r: (1 - r * r / 4) * 2 * math.pi * r, 0, 2)
    gauss = 2 * math.pi / (2.0 * 0.5)
    oracle = disc * gauss
    assert abs(normalization(s).value - oracle) < 1e-8 * oracle


def test_normalization_mc_oracle():
    s = ball_space(2, 0.5, 2.0)
    r = normalization(s, IntegrationPlan("monte-carlo", samples=200_000, seed=3))
    assert abs(r.value - s.N) < 3 * r.error_estimate + 1e-12


def test_psi_fock_example():
    w = FockWeight.isotropic(1.0, 1)
    psi = psi_representative(w, Translation([1.0]))
    z = np.array([[0.3 + 0.7j], [-1.0 + 0.1j]])
    np.testing.assert_allclose(psi.log_abs(z), -0.5 - z[:, 0].real, atol=1e-14)
    np.testing.assert_allclose(psi.log_abs(z), np.abs(z[:, 0]) ** 2 / 2 - np.abs(z[:, 0] + 1) ** 2 / 2, atol=1e-14)


def test_psi_disc_example_sign():
    # w(0) - w(a(0)) = 0 - (-ln(1 - 0.25)) = ln(0.75) = -ln(4/3)
    w = BallBergmanWeight(0.0, 2.0, 1)
    a = BallMobius([0.5])
    psi = psi_representative(w, a)
    direct = w([0.0]) - w(a.apply([0.0]))
    assert abs(psi.log_abs([[0.0]])[0] + math.log(4 / 3)) < 1e-15
    assert abs(direct + math.log(4 / 3)) < 1e-15


def test_psi_identity_is_one():
    w = FockWeight((1.0, 2.0))
    psi = psi_representative(w, identity(2))
    z = np.array([[1 + 1j, -2j], [0.3, 0.1]])
    np.testing.assert_allclose(psi(z), 1.0, atol=1e-15)


def _pairs():
    yield FockWeight((0.5, 2.0)), Translation([0.4 - 1j, 1.3j]), FullSpace(2)
    yield BallBergmanWeight(0.7, 1.5, 3), BallMobius([0.2, -0.3j, 0.4 + 0.1j]), UnitBall(3)
    yield PolydiscBergmanWeight((0.0, 1.0), 2.0), PolydiscMobius([0.5, -0.3 + 0.6j]), Polydisc(2, (1, 1))
    yield (
        PolydiscBergmanWeight((-0.5, 1.0), 0.5, (2.0, math.inf)),
        PolydiscMobius([1.2j, 0.8 - 0.4j], (2.0, math.inf)),
        Polydisc(2, (2.0, math.inf)),
    )


@pytest.mark.parametrize("w,a,d", list(_pairs()))
def test_psi_matches_weight_difference(w, a, d):
    z = Sampler(d, "uniform", seed=9, extent=2.0).sample(1000)
    psi = psi_representative(w, a)
    lhs = psi.log_abs(z)
    rhs = w(z) - w(a.apply(z))
    assert np.all(np.abs(lhs - rhs) < 1e-10 * (1 + np.abs(w(z))))
    assert np.all(np.abs(psi(z)) > 0)


def test_psi_rejects_mismatched_pair():
    with pytest.raises(ValueError):
        psi_representative(FockWeight.isotropic(1.0, 1), BallMobius([0.3]))


@pytest.mark.parametrize("w,a,d", list(_pairs()))
def test_pluriharmonicity_matched(w, a, d, rng):
    for z in Sampler(d, "uniform", seed=4, extent=1.5).sample(5) * 0.8:
        direction = rng.normal(size=d.n) + 1j * rng.normal(size=d.n)
        direction /= np.linalg.norm(direction)
        g0 = float(w(z) - w(a.apply(z)))
        r = pluriharmonicity_residual(w, a, z, direction, 1e-3)
        assert abs(r) < 1e-6 * (1 + abs(g0))


def test_pluriharmonicity_ball_center():
    w, a = BallBergmanWeight(0.0, 2.0, 2), BallMobius([0.3, 0.4j])
    assert abs(pluriharmonicity_residual(w, a, [0, 0], [1, 0], 1e-3)) < 1e-6


def test_stencil_detects_nonpluriharmonic():
    r = stencil_residual(lambda z: np.abs(z[..., 0]) ** 2, [0.3 + 0.1j], [1.0], 1e-3)
    assert abs(r - 4.0) < 1e-6


def test_stencil_leaving_domain():
    with pytest.raises(DomainError):
        pluriharmonicity_residual(BallBergmanWeight(0.0, 2.0, 1), BallMobius([0.1]), [0.9995], [1.0], 1e-3)


@pytest.mark.parametrize("w,a,d", list(_pairs()))
def test_weights_radial(w, a, d, rng):
    z = Sampler(d, "uniform", seed=2, extent=2.0).sample(200)
    phases = np.exp(1j * rng.uniform(0, 2 * np.pi, size=(200, d.n)))
    np.testing.assert_allclose(w(z * phases), w(z), rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("w,d", [(FockWeight.isotropic(1.5, 3), FullSpace(3)), (BallBergmanWeight(0.3, 2.0, 3), UnitBall(3))])
def test_weights_unitary_invariant(w, d, rng):
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
    z = Sampler(d, "uniform", seed=8, extent=2.0).sample(200)
    np.testing.assert_allclose(w(z @ q.T), w(z), rtol=1e-12, atol=1e-14)


def test_space_combination_guard():
    d = UnitBall(1)
    from sharpeval.measures import SpaceSpec

    with pytest.raises(ValueError):
        SpaceSpec(d, MeasureSpec(d, "lebesgue"), BallBergmanWeight(0.0, 2.0, 1), 2.0)
    with pytest.raises(ValueError):
        ball_space(1, 0.0, -1.0)
