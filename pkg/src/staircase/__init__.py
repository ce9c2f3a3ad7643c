"""Discrete-time staircase chain on (0,1] with exact laws and verification gates.

From X_0 = 1 the chain jumps, with probability p * X_{n-1}, to a point
uniform on (0, X_{n-1}), and otherwise stays put.  The package provides the
closed-form marginal and joint laws, the jump-count PGF/PMF with an exact
polynomial oracle, Laplace transforms of the partial sums by two independent
numeric routes, martingale families, and Monte Carlo gates tying simulation
back to every formula.
"""

from .counting import (
    PmfTable,
    closed_form_gn,
    mean_count,
    mean_count_signed_binomial,
    oracle_pmf_tables,
    pgf_eval,
    pgf_oracle,
    pmf,
)
from .distributions import (
    MarginalLaw,
    atom_at_one,
    joint_survival,
    marginal_cdf,
    mean_state,
    moment,
)
from .errors import (
    DomainError,
    InsufficientSampleError,
    ModeError,
    NonRationalError,
    OutOfRangeError,
    PreconditionError,
    QuadratureFailure,
    SingularDomainError,
    StaircaseError,
)
from .gates import GateReport, chi_square_gate, dkw_cdf_gate, dkw_threshold, moment_gate
from .laplace import (
    LaplaceQuery,
    ck,
    gf_closed_form,
    laplace_oracle_grid,
    laplace_partial_sum,
)
from .martingale import (
    MartingaleFamily,
    SeedFunction,
    build_family,
    closed_example_family,
    example_family,
    example_seed,
    martingale_residual,
    mc_martingale_check,
)
from .params import (
    ModelParams,
    NumericMode,
    RunConfig,
    Tolerances,
    load_config,
    parse_p,
    save_config,
    validate_params,
)
from .series import (
    BivarPoly,
    RationalPoly,
    TruncatedSeries,
    cauchy_product,
    falling_binomial_coeffs,
    falling_binomial_eval,
    poly_definite_integral_0_to_x,
    series_exp,
)
from .simulate import (
    Ensemble,
    Path,
    SeedSpec,
    sample_ensemble,
    simulate_batch,
    simulate_path,
    step,
)

__version__ = "0.1.0"
