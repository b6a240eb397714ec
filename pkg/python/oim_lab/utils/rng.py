"""
Counter-based, splittable random streams.

Every random decision of the lab is drawn from a stream identified by
(master seed, replication, round, purpose). Streams are derived with
`numpy.random.SeedSequence` spawn keys and drive a `Philox` counter-based
generator, so results do not depend on the order in which streams are
created, on parallelism, or on how many replications are requested.
"""

import enum
from typing import Optional

import numpy as np


class Purpose(enum.IntEnum):
    THRESHOLDS = 0
    TAU = 1
    IC_EDGES = 2
    EVALUATION = 3
    ORACLE = 4
    EXPLORATION = 5
    INSTANCE = 6


class StreamFactory:
    def __init__(self, master_seed: int) -> None:
        if master_seed < 0:
            raise ValueError(f"master seed must be non-negative, got {master_seed}")
        self.master_seed = master_seed

    def stream(self, purpose: Purpose, replication: int = 0, round_no: int = 0) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(replication, round_no, int(purpose)))
        return np.random.Generator(np.random.Philox(seq))

    def for_replication(self, replication: int) -> "ReplicationStreams":
        return ReplicationStreams(self, replication)


class ReplicationStreams:
    """
    Streams of one replication. The evaluation stream is a single long-lived
    stream, so learner randomness and evaluation randomness never interleave.
    """

    def __init__(self, factory: StreamFactory, replication: int) -> None:
        self._factory = factory
        self.replication = replication
        self._evaluation: Optional[np.random.Generator] = None

    def round(self, purpose: Purpose, round_no: int) -> np.random.Generator:
        return self._factory.stream(purpose, self.replication, round_no)

    @property
    def evaluation(self) -> np.random.Generator:
        if self._evaluation is None:
            self._evaluation = self._factory.stream(Purpose.EVALUATION, self.replication, 0)
        return self._evaluation


def make_rng(seed: int) -> np.random.Generator:
    """Convenience stream for library callers and tests."""
    return StreamFactory(seed).stream(Purpose.INSTANCE)
