from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

UNSENSED = -1


@dataclass
class Observation:
    """Vista local de un usuario: z_k ∈ {-1, 0, 1} y máscara de sensado δ_k."""
    values: np.ndarray
    sensed: np.ndarray

    @classmethod
    def unsensed(cls, num_channels: int) -> "Observation":
        """Observación 'nada sensado todavía' (entrada del slot 1)."""
        return cls(np.full(num_channels, UNSENSED, dtype=np.int8), np.zeros(num_channels, dtype=np.int8))

    @property
    def num_channels(self) -> int:
        return int(self.values.shape[0])

    def to_dict(self) -> dict:
        return {"values": self.values.tolist(), "sensed": self.sensed.tolist()}


@dataclass
class SlotOutcome:
    """Resultado de un slot: canal de transmisión por usuario (None = silencio) y recompensas."""
    transmit_channels: List[Optional[int]]
    rewards: np.ndarray
    channel_counts: np.ndarray = field(default=None)

    @property
    def total(self) -> int:
        return int(self.rewards.sum())

    @property
    def successes(self) -> int:
        return int(np.sum(self.rewards == 2))

    @property
    def collisions(self) -> int:
        """Transmisiones colisionadas (una por usuario afectado)."""
        return int(np.sum(self.rewards == -1))

    @property
    def silent(self) -> int:
        return int(np.sum(self.rewards == 0))
