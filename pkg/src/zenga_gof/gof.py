"""Regression of λ̂ on p and the parametric-bootstrap Pareto test.

Under a Type I Pareto law the inequality curve is flat at ``1 / alpha``, so
the intercept is estimated by the plain mean of the λ̂ values (the slope is
known to be zero under the null) and the least-squares slope serves as the
test statistic. Its null distribution is approximated by refitting samples
drawn from ``Pareto(alpha_hat, 1)``; the scale never needs estimating because
λ̂ is scale free.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .distributions import Pareto, draw
from .empirical import LambdaCurve, Sample, grid_size, lambda_curve, lambda_hat_rows
from .errors import DegenerateFitError, ParameterError, SampleSizeError
from .streams import RngStream

#: Smallest sample accepted by the test (gives at least 3 regression points).
MIN_TEST_N = 5

#: Bootstrap replicates drawn from each child stream. Fixed so that results
#: never depend on how many workers evaluate the blocks.
BOOTSTRAP_BLOCK = 50


@dataclass(frozen=True)
class RegressionEstimates:
    beta0_hat: float
    beta1_hat: float
    alpha_hat: float
    m: int
    p_bar: float
    s2_p: float


def grid_moments(n: int) -> tuple[float, float]:
    """Closed-form mean and sum of squared deviations of ``i / n``, ``i = 1..m``.

    ``p_bar = (m + 1) / (2 n)`` and ``S2_p = m (m^2 - 1) / (12 n^2)`` with
    ``m = n - floor(sqrt(n))``. Note ``p_bar`` divides the grid sum
    ``m (m + 1) / (2 n)`` by ``m``, not by ``n``.
    """
    n = int(n)
    if n < MIN_TEST_N:
        raise SampleSizeError(f"grid moments need n >= {MIN_TEST_N}, got {n}")
    m = grid_size(n)
    return (m + 1) / (2 * n), m * (m * m - 1) / (12 * n * n)


def slope_weights(p: np.ndarray) -> np.ndarray:
    """Weights ``c_i = (p_i - p_bar) / S2_p`` so that the slope is ``sum(lambda_i c_i)``."""
    centred = p - p.mean()
    return centred / np.sum(centred**2)


def regression_estimates(curve: LambdaCurve) -> RegressionEstimates:
    """Intercept (mean of λ̂), least-squares slope and ``alpha_hat = 1 / beta0_hat``.

    The intercept deliberately ignores the slope: it is the constrained
    estimate under a flat curve, not the intercept of a two-parameter fit.
    """
    if curve.m < 2:
        raise SampleSizeError(f"the slope needs at least 2 points, got {curve.m}")
    lam, p = curve.lambda_hat, curve.p
    beta0 = float(np.mean(lam))
    if not beta0 > 0:
        raise DegenerateFitError(f"intercept estimate {beta0!r} is not positive; alpha is undefined")
    p_bar = float(np.mean(p))
    s2_p = float(np.sum((p - p_bar) ** 2))
    beta1 = float(np.sum(lam * slope_weights(p)))
    return RegressionEstimates(beta0, beta1, 1.0 / beta0, curve.m, p_bar, s2_p)


def slope_statistics(sorted_rows: np.ndarray) -> np.ndarray:
    """Slope estimates for a ``(k, n)`` stack of ascending-sorted samples."""
    lam = lambda_hat_rows(sorted_rows)
    n = sorted_rows.shape[-1]
    c = slope_weights(np.arange(1, lam.shape[-1] + 1) / n)
    return np.sum(lam * c, axis=-1)


@dataclass(frozen=True, eq=False)
class GofTestResult:
    n: int
    m: int
    beta0_hat: float
    beta1_observed: float
    alpha_hat: float
    M: int
    p_value: float
    replicates: np.ndarray = field(repr=False)
    reject_at: dict = field(default_factory=dict)
    seed: int | None = None
    warnings: tuple = ()

    def reject(self, level: float) -> bool:
        return self.p_value <= level

    def to_dict(self, include_replicates: bool = False) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "alpha_hat": self.alpha_hat,
            "beta0_hat": self.beta0_hat,
            "beta1_observed": self.beta1_observed,
            "M": self.M,
            "p_value": self.p_value,
            "seed": self.seed,
            "reject_at": {repr(float(k)): v for k, v in self.reject_at.items()},
            "warnings": list(self.warnings),
        }
        if include_replicates:
            out["replicates"] = self.replicates.tolist()
        return out

    def to_json(self, include_replicates: bool = False, indent: int | None = 2) -> str:
        # float repr is the shortest string that round-trips to the same double
        return json.dumps(self.to_dict(include_replicates), indent=indent)

    def replicates_csv(self) -> str:
        return "beta1_replicate\n" + "".join(f"{v!r}\n" for v in self.replicates.tolist())


def bootstrap_p_value(observed: float, replicates: np.ndarray) -> float:
    """Add-one two-sided p-value ``(1 + #{|b*| >= |b|}) / (M + 1)``."""
    replicates = np.asarray(replicates)
    exceed = int(np.count_nonzero(np.abs(replicates) >= abs(observed)))
    return (1 + exceed) / (replicates.size + 1)


def bootstrap_replicates(
    alpha: float, n: int, M: int, rng: RngStream, workers: int = 1
) -> np.ndarray:
    """Slope statistics of `M` samples of size `n` from ``Pareto(alpha, 1)``.

    Replicates are generated in fixed blocks; block ``b`` draws from
    ``rng.child(b)``, so the output is identical for any `workers`.
    """
    null = Pareto(alpha, 1.0)
    starts = range(0, M, BOOTSTRAP_BLOCK)

    def block(b: int) -> np.ndarray:
        size = min(BOOTSTRAP_BLOCK, M - starts[b])
        rows = np.sort(draw(null, (size, n), rng.child(b)), axis=-1)
        return slope_statistics(rows)

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(block, range(len(starts))))
    else:
        parts = [block(b) for b in range(len(starts))]
    return np.concatenate(parts)


def bootstrap_test(
    sample: Sample,
    M: int,
    rng: RngStream | int,
    levels=(0.05,),
    workers: int = 1,
) -> GofTestResult:
    """Parametric-bootstrap test of the Type I Pareto hypothesis.

    Fits ``alpha_hat = 1 / beta0_hat`` and the slope on `sample`, recomputes
    the slope on `M` samples from ``Pareto(alpha_hat, 1)`` and returns the
    add-one p-value of ``|beta1|``. Infinite-mean fits (``alpha_hat <= 1``)
    are still tested but carry a warning.
    """
    if int(M) < 1:
        raise ParameterError(f"M must be at least 1, got {M}")
    if not isinstance(rng, RngStream):
        rng = RngStream(int(rng))
    levels = tuple(float(a) for a in levels)
    if any(not 0 < a < 1 for a in levels):
        raise ParameterError(f"test levels must lie in (0, 1), got {levels}")
    if sample.n < MIN_TEST_N:
        raise SampleSizeError(f"the test needs n >= {MIN_TEST_N}, got {sample.n}")

    fit = regression_estimates(lambda_curve(sample))
    warnings = []
    if fit.alpha_hat <= 1:
        warnings.append(
            f"alpha_hat = {fit.alpha_hat:.6g} <= 1: fitted tail has infinite mean; "
            "null distribution of the statistic is not characterised there"
        )
    if not math.isfinite(fit.alpha_hat):
        raise DegenerateFitError("alpha_hat is not finite")

    replicates = bootstrap_replicates(fit.alpha_hat, sample.n, int(M), rng, workers=workers)
    replicates.setflags(write=False)
    p_value = bootstrap_p_value(fit.beta1_hat, replicates)
    return GofTestResult(
        n=sample.n,
        m=fit.m,
        beta0_hat=fit.beta0_hat,
        beta1_observed=fit.beta1_hat,
        alpha_hat=fit.alpha_hat,
        M=int(M),
        p_value=p_value,
        replicates=replicates,
        reject_at={a: p_value <= a for a in levels},
        seed=int(rng.seed),
        warnings=tuple(warnings),
    )
