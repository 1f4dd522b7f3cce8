"""Envelope bounds for a distribution function from majorized mixtures of
order-statistic CDFs."""

from .bound_analysis import (
    PAPER_TABLE,
    DistanceReport,
    InfeasibleGapError,
    best_m,
    c_constant,
    delta_table,
    envelope_distance,
    l1_distance,
    l2_distance,
    min_distance_weights,
    rate_bound,
)
from .distributions import Distribution, Empirical, Exponential, StandardNormal, Uniform, ks_statistic
from .estimators import OrderStatisticEnvelope, SampleMeanBounds
from .majorization import (
    NegativeWeightError,
    NormalizationError,
    OrderingError,
    WeightError,
    WeightVector,
    is_majorized,
    uniform_weights,
    validate_weights,
    weight_sequence,
)
from .order_statistics import (
    MixtureSpec,
    SignatureVector,
    lower_bound,
    order_stat_cdf,
    order_stat_cdf_oracle,
    order_stat_mean,
    signature_cdf,
    upper_bound,
)
from .quadrature import QuadratureConfig, QuadratureError
from .sample_bounds import moment_bounds, sample_mean_bounds, verify_sample_bounds

__version__ = "0.1.0"
