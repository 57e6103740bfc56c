from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import UsageError


@dataclass
class EpisodeRecord:
    """
    Un episodio completo de T slots tal y como se guarda en el replay buffer.

    Índices en base 0 (el slot t del episodio es la fila t):
      - states[t]: estado real de los canales en el slot t; states[T] es el
        estado siguiente al último slot.
      - observations[t]: observación disponible como entrada en el slot t;
        observations[0] es "nada sensado" (-1) y observations[T] la última.
      - actions[t], rewards[t]: acción y recompensa de cada agente en el slot t.
    """
    states: np.ndarray        # (T+1, K) int8
    observations: np.ndarray  # (T+1, N, K) int8
    actions: np.ndarray       # (T, N) int64
    rewards: np.ndarray       # (T, N) int64

    def __post_init__(self):
        self.states = np.asarray(self.states, dtype=np.int8)
        self.observations = np.asarray(self.observations, dtype=np.int8)
        self.actions = np.asarray(self.actions, dtype=np.int64)
        self.rewards = np.asarray(self.rewards, dtype=np.int64)
        T, N = self.actions.shape
        if self.rewards.shape != (T, N):
            raise UsageError(f"Recompensas {self.rewards.shape} incompatibles con acciones {(T, N)}")
        if self.states.shape[0] != T + 1 or self.observations.shape[:2] != (T + 1, N):
            raise UsageError(f"Episodio incoherente: T={T}, N={N}, estados {self.states.shape}, "
                             f"observaciones {self.observations.shape}")

    @property
    def num_slots(self) -> int:
        return int(self.actions.shape[0])

    @property
    def num_agents(self) -> int:
        return int(self.actions.shape[1])

    @property
    def num_channels(self) -> int:
        return int(self.states.shape[1])

    @property
    def total_rewards(self) -> np.ndarray:
        """r_t^tot = Σ_n r_t^n, por slot."""
        return self.rewards.sum(axis=1)

    @property
    def successes(self) -> int:
        return int(np.sum(self.rewards == 2))

    @property
    def collisions(self) -> int:
        return int(np.sum(self.rewards == -1))

    @property
    def silent(self) -> int:
        return int(np.sum(self.rewards == 0))

    def previous_actions(self) -> np.ndarray:
        """(T, N): acción del slot anterior, -1 en el primer slot."""
        prev = np.full_like(self.actions, -1)
        prev[1:] = self.actions[:-1]
        return prev

    def to_arrays(self, prefix: str) -> dict:
        return {f"{prefix}.states": self.states, f"{prefix}.observations": self.observations,
                f"{prefix}.actions": self.actions, f"{prefix}.rewards": self.rewards}

    @classmethod
    def from_arrays(cls, arrays: dict, prefix: str) -> "EpisodeRecord":
        return cls(arrays[f"{prefix}.states"], arrays[f"{prefix}.observations"],
                   arrays[f"{prefix}.actions"], arrays[f"{prefix}.rewards"])


@dataclass
class EpisodeBatch:
    """B episodios apilados en el eje 0."""
    states: np.ndarray        # (B, T+1, K)
    observations: np.ndarray  # (B, T+1, N, K)
    actions: np.ndarray       # (B, T, N)
    rewards: np.ndarray       # (B, T, N)

    @property
    def batch_size(self) -> int:
        return int(self.actions.shape[0])

    @property
    def num_slots(self) -> int:
        return int(self.actions.shape[1])

    @property
    def num_agents(self) -> int:
        return int(self.actions.shape[2])

    @property
    def total_rewards(self) -> np.ndarray:
        return self.rewards.sum(axis=2).astype(np.float64)

    def previous_actions(self) -> np.ndarray:
        prev = np.full_like(self.actions, -1)
        prev[:, 1:] = self.actions[:, :-1]
        return prev


def stack_episodes(episodes: Sequence[EpisodeRecord]) -> EpisodeBatch:
    if not episodes:
        raise UsageError("No se puede formar un batch sin episodios.")
    lengths = {ep.num_slots for ep in episodes}
    if len(lengths) > 1:
        raise UsageError(f"Todos los episodios del batch deben tener la misma longitud: {sorted(lengths)}")
    return EpisodeBatch(
        states=np.stack([ep.states for ep in episodes]),
        observations=np.stack([ep.observations for ep in episodes]),
        actions=np.stack([ep.actions for ep in episodes]),
        rewards=np.stack([ep.rewards for ep in episodes]),
    )
