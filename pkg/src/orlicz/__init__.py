"""Numerical toolkit for Young functions, Orlicz-Sobolev conjugates,
Luxemburg norms, and composition-operator experiments."""

from .young import (
    Custom,
    Exp,
    ExpNegInv,
    FromInverse,
    Glued,
    GrowthOrder,
    IndeterminateError,
    Piecewise,
    Power,
    PowerExp,
    PowerLog,
    PowerLogLog,
    Regime,
    YoungError,
    YoungFunction,
    check_delta2,
    equivalent,
    evaluate,
    from_config,
    gate,
    inverse,
    is_nondegenerate,
    linear,
    modify_near_zero,
)
from .conjugate import (
    IntegralClass,
    SobolevConjugate,
    classify_integral_inf,
    classify_integral_zero,
    h_n,
    hat_an,
    sobolev_conjugate,
    sobolev_conjugate_sigma,
)
from .modular import (
    BoxDomain,
    ModularReport,
    TestFunction,
    luxemburg_norm,
    modular_convergence,
    modular_integral,
    modular_integral_gradient,
    w1a_quantities,
)
from .aniso import (
    BlackBox,
    Isotropic,
    LinearImage,
    NDimYoung,
    Orthotropic,
    ThetaSolver,
    bar_p,
    orthotropic_bar,
    phi_circ,
    phi_n,
    solve_theta,
    sublevel_volume,
)
from .nemytskii import (
    ContinuityReport,
    Envelope,
    LipschitzSpec,
    PreconditionError,
    compose,
    continuity_experiment,
    counterexample_run,
    lemma_inequality_tests,
    lemma_product_bound,
    lemma_split_bound,
    parse_envelope,
    poincare_probe,
    truncate,
)
from .conditions import (
    AssDVerdict,
    ConditionVerdict,
    ZygmundRow,
    check_aniso,
    check_inq_ass2,
    check_inq_assD,
    check_ortho,
    zygmund_table,
)

__version__ = "0.1.0"
