"""Null and alternative distributions of the Pareto power study.

Every family is a small frozen dataclass exposing ``cdf`` and ``draw``.
Parameters follow the one-parameter readings used in the power table:

* ``Pareto(alpha, x0)``: survival ``(x / x0) ** -alpha`` on ``x >= x0``
* ``LogNormal(sigma)``: ``exp(sigma * Z)``, ``Z`` standard normal
* ``Exponential()``: rate 1
* ``Gamma(shape)``: scale 1
* ``LogWeibull(theta)``: ``exp(W)``, ``W`` Weibull with shape ``theta``, scale 1

Specs can be written compactly as ``pareto:2:1``, ``lognormal:2.5``, ``exp``,
``gamma:2`` or ``logweibull:0.5`` (see :func:`parse_spec`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import special

from .empirical import Sample
from .errors import DomainError, ParameterError, SamplingOverflowError
from .streams import RngStream, as_generator

# Shift that maps the [0, 1) output of Generator.random onto (0, 1).
_HALF_ULP = 2.0**-54


def _check_positive(**params):
    for name, value in params.items():
        if not (isinstance(value, (int, float, np.number)) and math.isfinite(value) and value > 0):
            raise ParameterError(f"{name} must be a finite positive number, got {value!r}")


def _fmt(value: float) -> str:
    return f"{value:g}"


def pareto_cdf(x, alpha: float, x0: float = 1.0):
    """Type I Pareto distribution function ``1 - (x / x0) ** -alpha`` for ``x >= x0``.

    Accepts scalars or arrays; returns the same shape.
    """
    _check_positive(alpha=alpha, x0=x0)
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(x < x0, 0.0, -np.expm1(-alpha * np.log(np.maximum(x, x0) / x0)))
    return out[()] if out.ndim == 0 else out


def pareto_quantile(u, alpha: float, x0: float = 1.0):
    """Inverse of :func:`pareto_cdf`: ``x0 * (1 - u) ** (-1 / alpha)`` for ``0 <= u < 1``."""
    _check_positive(alpha=alpha, x0=x0)
    u = np.asarray(u, dtype=float)
    if np.any(~((u >= 0) & (u < 1))):
        raise DomainError("u must lie in [0, 1)")
    out = x0 * np.exp(-np.log1p(-u) / alpha)
    return out[()] if out.ndim == 0 else out


def pareto_lambda_theoretical(alpha: float) -> float:
    """Constant level ``1 / alpha`` of the inequality curve of a Type I Pareto law."""
    _check_positive(alpha=alpha)
    return 1.0 / alpha


@dataclass(frozen=True)
class Pareto:
    alpha: float
    x0: float = 1.0

    def __post_init__(self):
        _check_positive(alpha=self.alpha, x0=self.x0)

    @property
    def label(self) -> str:
        return f"Pa({_fmt(self.alpha)})" if self.x0 == 1 else f"Pa({_fmt(self.alpha)},{_fmt(self.x0)})"

    def to_string(self) -> str:
        return f"pareto:{_fmt(self.alpha)}:{_fmt(self.x0)}"

    def cdf(self, x):
        return pareto_cdf(x, self.alpha, self.x0)

    def draw(self, gen: np.random.Generator, size) -> np.ndarray:
        # inverse transform; u = 0 maps to the lower endpoint x0
        return pareto_quantile(gen.random(size), self.alpha, self.x0)


@dataclass(frozen=True)
class LogNormal:
    sigma: float

    def __post_init__(self):
        _check_positive(sigma=self.sigma)

    @property
    def label(self) -> str:
        return f"LN({_fmt(self.sigma)})"

    def to_string(self) -> str:
        return f"lognormal:{_fmt(self.sigma)}"

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return special.ndtr(np.log(np.maximum(x, 0.0)) / self.sigma)

    def draw(self, gen, size):
        return np.exp(self.sigma * gen.standard_normal(size))


@dataclass(frozen=True)
class Exponential:
    @property
    def label(self) -> str:
        return "Exp"

    def to_string(self) -> str:
        return "exp"

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return -np.expm1(-np.maximum(x, 0.0))

    def draw(self, gen, size):
        return -np.log1p(-(gen.random(size) + _HALF_ULP))


@dataclass(frozen=True)
class Gamma:
    shape: float

    def __post_init__(self):
        _check_positive(shape=self.shape)

    @property
    def label(self) -> str:
        return f"Ga({_fmt(self.shape)})"

    def to_string(self) -> str:
        return f"gamma:{_fmt(self.shape)}"

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return special.gammainc(self.shape, np.maximum(x, 0.0))

    def draw(self, gen, size):
        # numpy uses the Marsaglia-Tsang squeeze/rejection method (exact)
        return gen.standard_gamma(self.shape, size)


@dataclass(frozen=True)
class LogWeibull:
    theta: float

    def __post_init__(self):
        _check_positive(theta=self.theta)

    @property
    def label(self) -> str:
        return f"LW({_fmt(self.theta)})"

    def to_string(self) -> str:
        return f"logweibull:{_fmt(self.theta)}"

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_x = np.log(np.maximum(x, 1.0))
            return np.where(x < 1, 0.0, -np.expm1(-(log_x**self.theta)))

    def draw(self, gen, size):
        with np.errstate(over="ignore"):
            return np.exp(gen.weibull(self.theta, size))


DistributionSpec = Union[Pareto, LogNormal, Exponential, Gamma, LogWeibull]

_FAMILIES = {
    "pareto": (Pareto, 1, 2),
    "lognormal": (LogNormal, 1, 1),
    "exp": (Exponential, 0, 0),
    "exponential": (Exponential, 0, 0),
    "gamma": (Gamma, 1, 1),
    "logweibull": (LogWeibull, 1, 1),
}


def parse_spec(text: str) -> DistributionSpec:
    """Parse a compact spec string such as ``pareto:2:1`` or ``lognormal:2.5``.

    The Pareto scale defaults to 1 when omitted (``pareto:2``).
    """
    name, *raw = text.strip().split(":")
    key = name.strip().lower()
    if key not in _FAMILIES:
        known = ", ".join(sorted(set(_FAMILIES) - {"exponential"}))
        raise ParameterError(f"unknown distribution {name!r} (supported: {known})")
    cls, lo, hi = _FAMILIES[key]
    if not lo <= len(raw) <= hi:
        raise ParameterError(f"{key} takes {lo}..{hi} parameter(s), got {len(raw)} in {text!r}")
    try:
        params = [float(p) for p in raw]
    except ValueError:
        raise ParameterError(f"non-numeric parameter in {text!r}") from None
    return cls(*params)


def draw(spec: DistributionSpec, size, rng: RngStream | np.random.Generator) -> np.ndarray:
    """Raw variates of `spec` with the given array shape.

    Raises SamplingOverflowError if a variate is not a finite double, which
    happens for very heavy log-Weibull tails.
    """
    values = spec.draw(as_generator(rng), size)
    if not np.all(np.isfinite(values)):
        raise SamplingOverflowError(f"{spec.label} produced variates beyond the double range")
    return values


def sample(spec: DistributionSpec, n: int, rng: RngStream | np.random.Generator) -> Sample:
    """Draw a :class:`Sample` of `n` observations from `spec`."""
    if int(n) < 1:
        raise ParameterError(f"n must be at least 1, got {n}")
    return Sample(draw(spec, int(n), rng))
