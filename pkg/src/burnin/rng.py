"""Per-replication random streams.

Each replication owns a Philox (counter-based) generator keyed by the master
seed, a namespace and its replication index, so results do not depend on how
replications are scheduled across workers.
"""

from dataclasses import dataclass

import numpy as np

# namespaces keep e.g. null and alternative runs on disjoint streams
NS_DEFAULT = 0
NS_ALTERNATIVE = 1
NS_NULL = 2
NS_METRICS = 3


@dataclass(frozen=True)
class RngStream:
    master_seed: int
    replication_index: int = 0
    namespace: int = NS_DEFAULT

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise ValueError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")
        if self.replication_index < 0:
            raise ValueError("replication_index must be nonnegative")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.master_seed, spawn_key=(self.namespace, self.replication_index))
        return np.random.Generator(np.random.Philox(ss))

    def child(self, replication_index: int) -> "RngStream":
        return RngStream(self.master_seed, replication_index, self.namespace)

    def in_namespace(self, namespace: int) -> "RngStream":
        return RngStream(self.master_seed, self.replication_index, namespace)
