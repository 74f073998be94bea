"""Empirical distribution, incomplete moment, Lorenz curve and the λ̂ curve.

The inequality curve of a positive random variable with finite mean is

    λ(p) = 1 - log(1 - L(p)) / log(1 - p),   0 < p < 1,

where ``L`` is the Lorenz curve. It is estimated at ``p_i = i / n`` for
``i = 1, ..., m`` with ``m = n - floor(sqrt(n))`` by plugging in the
empirical Lorenz curve, i.e. the share of the total held by the ``i``
smallest observations.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError, DomainError, SampleSizeError

#: Smallest sample for which the λ̂ curve has at least one point.
MIN_CURVE_N = 2


class Sample:
    """Immutable, sorted collection of strictly positive finite observations."""

    __slots__ = ("_values", "_total")

    def __init__(self, values):
        arr = np.array(values, dtype=float).ravel()
        if arr.size == 0:
            raise DataError("a sample needs at least one observation")
        bad = np.flatnonzero(~(np.isfinite(arr) & (arr > 0)))
        if bad.size:
            k = int(bad[0])
            raise DataError(f"observation {k + 1} is {arr[k]!r}; values must be finite and > 0")
        arr.sort()
        arr.setflags(write=False)
        self._values = arr
        self._total = float(arr.sum())

    @property
    def values(self) -> np.ndarray:
        """Order statistics X(1) <= ... <= X(n) as a read-only array."""
        return self._values

    @property
    def n(self) -> int:
        return self._values.size

    @property
    def total(self) -> float:
        return self._total

    def scaled(self, factor: float) -> Sample:
        return Sample(self._values * factor)

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self._values.tolist())

    def __eq__(self, other):
        return isinstance(other, Sample) and np.array_equal(self._values, other._values)

    __hash__ = None

    def __repr__(self):
        return f"Sample(n={self.n}, min={self._values[0]:g}, max={self._values[-1]:g})"


@dataclass(frozen=True, eq=False)
class LambdaCurve:
    """Estimated points ``(p_i, lambda_hat_i)`` of the inequality curve.

    `n` is the size of the sample the curve was estimated from. Curves with
    arbitrary λ values (e.g. for checking the regression) may be built
    directly from arrays.
    """

    p: np.ndarray
    lambda_hat: np.ndarray
    n: int

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        lam = np.array(self.lambda_hat, dtype=float)
        if p.ndim != 1 or p.shape != lam.shape:
            raise ValueError("p and lambda_hat must be 1-d arrays of equal length")
        if not np.all(np.isfinite(lam)):
            raise ValueError("lambda_hat contains non-finite values")
        p.setflags(write=False)
        lam.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "lambda_hat", lam)

    @classmethod
    def on_grid(cls, lambda_hat, n: int) -> LambdaCurve:
        """Attach λ values to the standard grid ``i / n``, ``i = 1..len(lambda_hat)``."""
        lam = np.asarray(lambda_hat, dtype=float)
        return cls(np.arange(1, lam.size + 1) / n, lam, n)

    @property
    def m(self) -> int:
        return self.p.size

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.p.tolist(), self.lambda_hat.tolist()))


def grid_size(n: int) -> int:
    """Number of λ̂ points, ``n - floor(sqrt(n))``."""
    return n - math.isqrt(n)


def ecdf(sample: Sample, x):
    """Fraction of observations ``<= x`` (right-continuous; vectorised over `x`)."""
    out = np.searchsorted(sample.values, x, side="right") / sample.n
    return out[()] if np.ndim(out) == 0 else out


def incomplete_moment(sample: Sample, x):
    """Share of the total carried by observations ``<= x``."""
    idx = np.searchsorted(sample.values, x, side="right")
    partial = np.concatenate(([0.0], np.cumsum(sample.values)))
    out = partial[idx] / sample.total
    return out[()] if np.ndim(out) == 0 else out


def lorenz_empirical(sample: Sample, p):
    """Empirical Lorenz curve: sum of the ``i`` smallest values over the total,
    for ``i / n <= p < (i + 1) / n``; zero below ``1 / n``.

    Ties are not merged, so a sample of equal values gives ``L(i / n) = i / n``.
    """
    p = np.asarray(p, dtype=float)
    if np.any(~((p > 0) & (p < 1))):
        raise DomainError("p must lie in the open interval (0, 1)")
    n = sample.n
    i = np.floor(p * n).astype(np.intp)
    # p = i / n in floating point may land just below i after multiplying back
    i = np.where(p >= (i + 1) / n, i + 1, i)
    partial = np.concatenate(([0.0], np.cumsum(sample.values)))
    out = partial[np.minimum(i, n)] / sample.total
    return out[()] if out.ndim == 0 else out


def lambda_hat_rows(sorted_rows: np.ndarray) -> np.ndarray:
    """λ̂ values for every row of an array of ascending-sorted samples.

    Works on 1-d input (one sample) or on a ``(k, n)`` stack; returns the
    first ``m`` λ̂ values along the last axis.
    """
    x = np.asarray(sorted_rows, dtype=float)
    n = x.shape[-1]
    m = grid_size(n)
    lorenz = np.cumsum(x[..., :m], axis=-1) / x.sum(axis=-1, keepdims=True)
    p = np.arange(1, m + 1) / n
    return 1.0 - np.log1p(-lorenz) / np.log1p(-p)


def lambda_curve(sample: Sample) -> LambdaCurve:
    """Estimate the inequality curve at ``p_i = i / n``, ``i = 1..n - floor(sqrt(n))``."""
    if sample.n < MIN_CURVE_N:
        raise SampleSizeError(f"need at least {MIN_CURVE_N} observations, got {sample.n}")
    return LambdaCurve.on_grid(lambda_hat_rows(sample.values), sample.n)


def _check_value(value: float, where: str) -> float:
    if not (math.isfinite(value) and value > 0):
        raise DataError(f"{where}: value {value!r} is not a finite positive number")
    return value


def read_sample(path, csv_column: str | None = None) -> Sample:
    """Load observations from a text file or a CSV column.

    Plain text holds one number per line; blank lines and anything after
    ``#`` are ignored. With `csv_column`, the file is read as CSV with a
    header row and the named column is used. Errors name the offending line.
    """
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            return parse_sample(fh, csv_column, source=str(path))
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from exc


def parse_sample(lines, csv_column: str | None = None, source: str = "<input>") -> Sample:
    """Like :func:`read_sample` but from an open text stream or list of lines."""
    values = _read_csv(lines, csv_column, source) if csv_column else _read_lines(lines, source)
    if not values:
        raise DataError(f"{source}: no observations found")
    return Sample(values)


def _read_lines(fh, path) -> list[float]:
    values = []
    for lineno, line in enumerate(fh, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            value = float(text)
        except ValueError:
            raise DataError(f"{path}:{lineno}: cannot parse {text!r} as a number") from None
        values.append(_check_value(value, f"{path}:{lineno}"))
    return values


def _read_csv(fh, column, path) -> list[float]:
    reader = csv.DictReader(fh)
    if reader.fieldnames is None or column not in reader.fieldnames:
        raise DataError(f"{path}: no column named {column!r}")
    values = []
    for row in reader:
        where = f"{path}:{reader.line_num}"
        raw = (row.get(column) or "").strip()
        try:
            value = float(raw)
        except ValueError:
            raise DataError(f"{where}: cannot parse {raw!r} as a number") from None
        values.append(_check_value(value, where))
    return values
