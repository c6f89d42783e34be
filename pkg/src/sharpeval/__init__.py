"""Numerical verification of sharp pointwise estimates in weighted spaces of holomorphic functions."""
from .automorphisms import (
    BallMobius,
    DomainError,
    Homothety,
    PolydiscMobius,
    Translation,
    apply,
    identity,
    invariance_check,
    real_jacobian,
)
from .domains import FullSpace, Polydisc, Sampler, UnitBall, make_domain, sample
from .estimates import (
    EstimateReport,
    SchemeSpec,
    delta0_estimate,
    extremal_function,
    integrated_bound_check,
    pointwise_bound_check,
    quasinorm,
    scheme_check,
    sharpness_check,
    sup_quasinorm,
)
from .geometry import PolyExp, Power, Product, compose_translation, evaluate, inner
from .measures import (
    BallBergmanWeight,
    FockWeight,
    MeasureSpec,
    PolydiscBergmanWeight,
    SpaceSpec,
    ball_space,
    fock_space,
    normalization,
    pluriharmonicity_residual,
    polydisc_space,
    psi_representative,
    weight,
)
from .quadrature import IntegrationPlan, IntegrationResult, integrate

__version__ = "0.1.0"
