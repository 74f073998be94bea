"""Reproducible, splittable random number streams.

A stream is identified by ``(seed, stream_id)`` plus an optional path of
child indices. Each distinct identity maps to an independent
``numpy.random.SeedSequence`` (via ``spawn_key``), so work can be split into
tasks that draw from their own stream regardless of scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

_U64 = 2**64


@dataclass(frozen=True)
class RngStream:
    """Identity of an independent random stream.

    Parameters
    ----------
    seed : int
        Master seed, ``0 <= seed < 2**64``.
    stream_id : int
        Stream number under the master seed, ``0 <= stream_id < 2**64``.
    path : tuple of int
        Child indices appended by :meth:`child`.
    """

    seed: int
    stream_id: int = 0
    path: tuple[int, ...] = ()

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or not 0 <= value < _U64:
                raise ParameterError(f"{name} must be an integer in [0, 2**64), got {value!r}")
        if any(i < 0 for i in self.path):
            raise ParameterError("child indices must be non-negative")

    def child(self, index: int) -> RngStream:
        """Return the independent sub-stream number `index`."""
        return RngStream(self.seed, self.stream_id, self.path + (int(index),))

    def seed_sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream_id), *self.path))

    def generator(self) -> np.random.Generator:
        """A fresh PCG64 generator positioned at the start of this stream."""
        return np.random.Generator(np.random.PCG64(self.seed_sequence()))


def as_generator(rng: RngStream | np.random.Generator) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")
