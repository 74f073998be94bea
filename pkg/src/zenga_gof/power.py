"""Monte Carlo size and power of the bootstrap Pareto test.

A study is a list of ``(distribution, n)`` cells. Each cell draws
``replications`` samples, runs :func:`~zenga_gof.gof.bootstrap_test` on each
and reports the rejection proportion at the configured level together with
its Monte Carlo standard error.

Random streams are assigned by position: cell ``k`` uses
``RngStream(seed).child(k)``, replication ``r`` of that cell uses
``.child(r)``, whose sub-streams 0 and 1 feed the data draw and the
bootstrap. Scheduling therefore never changes a result.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .distributions import DistributionSpec, parse_spec, sample
from .errors import (
    CellAbortedError,
    ConfigError,
    DataError,
    DegenerateFitError,
    ParameterError,
    SampleSizeError,
    SamplingOverflowError,
)
from .gof import MIN_TEST_N, bootstrap_test
from .streams import RngStream

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

#: Fraction of failed replications tolerated before a cell is abandoned.
MAX_ERROR_FRACTION = 0.01

_REPLICATION_ERRORS = (DataError, DegenerateFitError, SamplingOverflowError, SampleSizeError)


@dataclass(frozen=True)
class PowerStudyConfig:
    cells: tuple
    replications: int = 500
    bootstrap_M: int = 500
    level: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if not _is_int(self.replications) or self.replications < 1:
            raise ConfigError(f"replications: must be an integer >= 1, got {self.replications!r}")
        if not _is_int(self.bootstrap_M) or self.bootstrap_M < 1:
            raise ConfigError(f"bootstrap: must be an integer >= 1, got {self.bootstrap_M!r}")
        if not isinstance(self.level, (int, float)) or not 0 < self.level < 1:
            raise ConfigError(f"level: must lie in (0, 1), got {self.level!r}")
        if not _is_int(self.seed) or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed: must be an integer in [0, 2**64), got {self.seed!r}")
        cells = tuple((spec, int(n)) for spec, n in self.cells)
        for k, (_, n) in enumerate(cells):
            if n < MIN_TEST_N:
                raise ConfigError(f"cells[{k}].n: must be >= {MIN_TEST_N}, got {n}")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_dict(cls, data: dict) -> PowerStudyConfig:
        known = {"replications", "bootstrap", "level", "seed", "cells"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown field(s): {', '.join(sorted(unknown))}")
        if "cells" not in data:
            raise ConfigError("cells: missing")
        cells = []
        for k, entry in enumerate(data["cells"]):
            if not isinstance(entry, dict) or "distribution" not in entry or "n" not in entry:
                raise ConfigError(f"cells[{k}]: needs 'distribution' and 'n'")
            try:
                spec = parse_spec(str(entry["distribution"]))
            except ParameterError as exc:
                raise ConfigError(f"cells[{k}].distribution: {exc}") from None
            sizes = entry["n"] if isinstance(entry["n"], list) else [entry["n"]]
            for n in sizes:
                if not _is_int(n):
                    raise ConfigError(f"cells[{k}].n: must be integers, got {n!r}")
                cells.append((spec, n))
        return cls(
            cells=tuple(cells),
            replications=data.get("replications", 500),
            bootstrap_M=data.get("bootstrap", 500),
            level=data.get("level", 0.05),
            seed=data.get("seed", 0),
        )

    @classmethod
    def from_toml(cls, path) -> PowerStudyConfig:
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None
        return cls.from_dict(data)

    def with_overrides(self, **changes) -> PowerStudyConfig:
        fields = {
            "cells": self.cells,
            "replications": self.replications,
            "bootstrap_M": self.bootstrap_M,
            "level": self.level,
            "seed": self.seed,
        }
        fields.update({k: v for k, v in changes.items() if v is not None})
        return PowerStudyConfig(**fields)


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass(frozen=True)
class CellResult:
    label: str
    distribution: str
    n: int
    rejections: int
    replications: int
    errors: int
    aborted: str | None = None

    @property
    def proportion(self) -> float:
        if self.aborted or self.replications == 0:
            return math.nan
        return self.rejections / self.replications

    @property
    def mc_se(self) -> float:
        p = self.proportion
        if math.isnan(p):
            return math.nan
        return math.sqrt(p * (1 - p) / self.replications)

    def to_dict(self) -> dict:
        ok = self.aborted is None
        return {
            "label": self.label,
            "distribution": self.distribution,
            "n": self.n,
            "proportion": self.proportion if ok else None,
            "mc_se": self.mc_se if ok else None,
            "rejections": self.rejections,
            "replications": self.replications,
            "errors": self.errors,
            "aborted": self.aborted,
        }


def _one_replication(spec, n, M, level, stream: RngStream) -> bool:
    data = sample(spec, n, stream.child(0))
    return bootstrap_test(data, M, stream.child(1), levels=(level,)).p_value <= level


def power_cell(
    spec: DistributionSpec,
    n: int,
    R: int,
    M: int,
    level: float,
    rng: RngStream,
    workers: int = 1,
) -> CellResult:
    """Rejection proportion of the level-`level` test over `R` samples of size `n`.

    Replications that fail (overflowing draws, degenerate fits) are dropped
    and counted; more than 1% failures raises CellAbortedError.
    """
    def run(r):
        try:
            return _one_replication(spec, n, M, level, rng.child(r))
        except _REPLICATION_ERRORS:
            return None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, range(R)))
    else:
        outcomes = [run(r) for r in range(R)]

    errors = sum(o is None for o in outcomes)
    if errors > MAX_ERROR_FRACTION * R:
        exc = CellAbortedError(
            f"{spec.label}, n={n}: {errors} of {R} replications failed "
            f"(limit {MAX_ERROR_FRACTION:.0%})"
        )
        exc.errors = errors
        raise exc
    return CellResult(
        label=spec.label,
        distribution=spec.to_string(),
        n=int(n),
        rejections=sum(o is True for o in outcomes),
        replications=R - errors,
        errors=errors,
    )


@dataclass(frozen=True)
class PowerTable:
    cells: tuple
    level: float
    replications: int
    bootstrap_M: int
    seed: int

    def __len__(self):
        return len(self.cells)

    def get(self, label: str, n: int) -> CellResult:
        for cell in self.cells:
            if cell.label == label and cell.n == n:
                return cell
        raise KeyError((label, n))

    @property
    def labels(self) -> list[str]:
        return list(dict.fromkeys(c.label for c in self.cells))

    @property
    def sizes(self) -> list[int]:
        return sorted({c.n for c in self.cells})

    def to_csv(self) -> str:
        """Rows keyed by n, one column per distribution label; blank where absent."""
        lookup = {(c.label, c.n): c for c in self.cells}
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        labels = self.labels
        writer.writerow(["n", *labels])
        for n in self.sizes:
            row = [n]
            for label in labels:
                cell = lookup.get((label, n))
                row.append("" if cell is None or cell.aborted else repr(cell.proportion))
            writer.writerow(row)
        return buf.getvalue()

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(
            {
                "level": self.level,
                "replications": self.replications,
                "bootstrap": self.bootstrap_M,
                "seed": self.seed,
                "cells": [c.to_dict() for c in self.cells],
            },
            indent=indent,
        )


def power_table(
    config: PowerStudyConfig,
    workers: int = 1,
    progress: Callable[[int, int, CellResult], None] | None = None,
) -> PowerTable:
    """Evaluate every cell of `config`, in config order.

    A cell that exceeds the failure budget is kept in the table with its
    ``aborted`` reason instead of stopping the study.
    """
    master = RngStream(config.seed)
    results = []
    for k, (spec, n) in enumerate(config.cells):
        try:
            cell = power_cell(
                spec, n, config.replications, config.bootstrap_M, config.level,
                master.child(k), workers=workers,
            )
        except CellAbortedError as exc:
            failed = getattr(exc, "errors", config.replications)
            cell = CellResult(spec.label, spec.to_string(), n, 0, 0, failed, str(exc))
        results.append(cell)
        if progress is not None:
            progress(k, len(config.cells), cell)
    return PowerTable(
        cells=tuple(results),
        level=config.level,
        replications=config.replications,
        bootstrap_M=config.bootstrap_M,
        seed=config.seed,
    )


def bundled_config(name: str = "table1") -> Path:
    """Path of a config file shipped with the package (``table1`` or ``desk``)."""
    path = Path(__file__).parent / "data" / f"{name}.toml"
    if not path.exists():
        raise ConfigError(f"no bundled config named {name!r}")
    return path
