"""Sheffer polynomial sequences tied to the Kontorovich-Lebedev transform,
with exact Bernoulli/Euler/zeta identities and quadrature checks."""

from .bernoulli_euler import (
    BERNOULLI_VARIANTS,
    EULER_VARIANTS,
    ZETA_VARIANTS,
    ZetaComb,
    bernoulli_via_moment,
    euler_via,
    odd_bernoulli_tau_poly,
    sinh_moment,
    staudt_clausen_check,
    verify_odd_zeta_identity,
    verify_theorem4,
    zeta_even_ratio,
)
from .classical import bernoulli_number, bernoulli_poly, euler_number
from .exact import (
    Biseries,
    InconsistencyError,
    Poly,
    binomial,
    biseries_div,
    biseries_exp,
    biseries_mul,
    double_factorial_odd,
    exp_moment,
    exp_moment_div_x,
    poly_arith,
    poly_derivative,
    poly_eval,
)
from .identities import IdentityReport, SequenceTable, UnknownCheckError, all_pass, run_all, run_check
from .numchecks import QuadResult, run_numeric, verify_numeric
from .numeric import (
    NumReal,
    QuadratureError,
    bessel_k,
    bessel_k_alt,
    const_catalan,
    const_zeta_odd,
    integrate,
    moment_I,
    moment_M,
    zeta,
)
from .sheffer import P_ROUTES, Q_ROUTES, SequenceRoute, coeff_a, gen_p, gen_q, gf_f, gf_phi

__version__ = "0.1.0"
