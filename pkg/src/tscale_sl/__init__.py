"""Sturm-Liouville spectra and Ambarzumyan-type checks on bounded time scales."""

from .timescale import (
    DegenerateTimeScaleError,
    Grid,
    PointClass,
    Segment,
    TimeScale,
    TimeScaleError,
    build_timescale,
    classify,
    grid_from_points,
    mu,
    realize,
    rho,
    sigma,
)
from .delta_calculus import (
    GridFunction,
    delta_derivative,
    delta_integral,
    second_delta_derivative,
    sigma_shift,
)
from .sl_solver import (
    Eigenpair,
    PotentialPiece,
    PotentialSpec,
    ProblemError,
    SingularRobinError,
    SLProblem,
    Spectrum,
    Tridiagonal,
    assemble,
    count_below,
    count_generalized_zeros,
    eigenpair,
    eigenvalues,
    sample_potential,
    shoot,
    spectrum,
    symmetrize,
)
from .ambarzumyan import (
    AmbarzumyanReport,
    threshold,
    proof_identity_residual,
    verify_corollary1,
    verify_corollary2,
    verify_remark,
    verify_theorem1,
)

__version__ = "0.1.0"
