"""Bilateral canonical cascades: paths, exact moments, limit theorems and their checks."""

from .cascade import (
    CascadeParams,
    LevelSigns,
    PathRealization,
    cartoon_wbm,
    derive_params,
    evaluate,
    refine,
    sample_sign_level,
    simulate_path,
    total_mass,
)
from .errors import CascadeError
from .fclt import (
    WalkRealization,
    clt_walk,
    proxy_deficit,
    remainder_path,
    subtree_masses,
    tilde_walk,
    xi_sequence,
)
from .moments import (
    brute_force_moment,
    covariance,
    exact_moment,
    limit_even_moment,
    moment_sequence,
    second_moment,
)
from .normalization import Regime, a_n, normalizer, regime, schedule, sigma
from .rng import SeedSpec
from .stats import (
    EnsembleReport,
    box_dimension,
    ecf,
    fdd_covariance,
    ks_statistic,
    normal_cdf,
    oscillation_exponent,
)

__version__ = "0.1.0"
