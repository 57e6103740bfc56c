import logging
from collections import deque
from typing import List

import numpy as np

from ..errors import ConfigurationError, UsageError
from ..models.episode_record import EpisodeRecord

logger = logging.getLogger(__name__)


class ReplayBuffer:
    """
    Buffer FIFO de episodios completos. Al llegar a la capacidad se descarta
    siempre el episodio más antiguo.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ConfigurationError(f"Capacidad del replay buffer inválida: {capacity}")
        self.capacity = int(capacity)
        self._episodes: deque = deque(maxlen=self.capacity)

    def __len__(self) -> int:
        return len(self._episodes)

    def __getitem__(self, index: int) -> EpisodeRecord:
        return self._episodes[index]

    def store_episode(self, episode: EpisodeRecord):
        if self._episodes and episode.actions.shape != self._episodes[0].actions.shape:
            raise UsageError(f"Episodio de forma {episode.actions.shape} distinta a la del buffer "
                             f"{self._episodes[0].actions.shape}")
        self._episodes.append(episode)

    def sample_batch(self, batch_size: int, rng: np.random.Generator) -> List[EpisodeRecord]:
        """B episodios uniformes con reemplazo."""
        if not self._episodes:
            raise UsageError("No se puede muestrear de un replay buffer vacío.")
        if batch_size < 1:
            raise ConfigurationError(f"Tamaño de batch inválido: {batch_size}")
        indices = rng.integers(len(self._episodes), size=batch_size)
        return [self._episodes[i] for i in indices]

    def clear(self):
        self._episodes.clear()

    def to_arrays(self) -> dict:
        arrays = {}
        for i, episode in enumerate(self._episodes):
            arrays.update(episode.to_arrays(f"buffer.{i}"))
        return arrays

    def load_arrays(self, arrays: dict, size: int):
        episodes = [EpisodeRecord.from_arrays(arrays, f"buffer.{i}") for i in range(size)]
        self._episodes = deque(episodes, maxlen=self.capacity)
        logger.debug(f"Replay buffer restaurado con {size} episodios.")


def store_episode(buffer: ReplayBuffer, episode: EpisodeRecord):
    buffer.store_episode(episode)


def sample_batch(buffer: ReplayBuffer, batch_size: int, rng: np.random.Generator) -> List[EpisodeRecord]:
    return buffer.sample_batch(batch_size, rng)
