"""Zenga inequality curve estimation and a goodness-of-fit test for the Type I Pareto law."""

from .distributions import (
    DistributionSpec,
    Exponential,
    Gamma,
    LogNormal,
    LogWeibull,
    Pareto,
    draw,
    parse_spec,
    pareto_cdf,
    pareto_lambda_theoretical,
    pareto_quantile,
    sample,
)
from .empirical import (
    LambdaCurve,
    Sample,
    ecdf,
    incomplete_moment,
    lambda_curve,
    lorenz_empirical,
    read_sample,
)
from .errors import (
    CellAbortedError,
    ConfigError,
    DataError,
    DegenerateFitError,
    DomainError,
    ParameterError,
    SampleSizeError,
    SamplingOverflowError,
    ZengaError,
)
from .gof import (
    GofTestResult,
    RegressionEstimates,
    bootstrap_test,
    grid_moments,
    regression_estimates,
)
from .power import CellResult, PowerStudyConfig, PowerTable, power_cell, power_table
from .streams import RngStream

__version__ = "0.1.0"
