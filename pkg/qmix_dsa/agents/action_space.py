"""
Espacio de acciones de sensado: todos los M-subconjuntos de K canales,
numerados en orden lexicográfico de subconjuntos crecientes.
"""
from math import comb
from typing import Sequence

import numpy as np

from ..errors import ConfigurationError, UsageError
from ..models.sense_action import SenseAction


def unrank_lex(index: int, num_channels: int, num_sensed: int) -> tuple:
    """M-subconjunto (base 0) con rango lexicográfico ``index``."""
    subset = []
    candidate = 0
    for position in range(num_sensed):
        remaining = num_sensed - position - 1
        while True:
            block = comb(num_channels - candidate - 1, remaining)
            if index < block:
                break
            index -= block
            candidate += 1
        subset.append(candidate)
        candidate += 1
    return tuple(subset)


def rank_lex(subset: Sequence[int], num_channels: int) -> int:
    """Rango lexicográfico de un subconjunto estrictamente creciente (base 0)."""
    num_sensed = len(subset)
    rank = 0
    previous = -1
    for position, channel in enumerate(subset):
        remaining = num_sensed - position - 1
        for skipped in range(previous + 1, channel):
            rank += comb(num_channels - skipped - 1, remaining)
        previous = channel
    return rank


class ActionSpace:
    """Las C(K, M) acciones de un usuario, con rank/unrank."""

    def __init__(self, num_channels: int, num_sensed: int):
        if num_channels < 1 or not 1 <= num_sensed <= num_channels:
            raise ConfigurationError(f"M={num_sensed} fuera de rango para K={num_channels}: se requiere 1 <= M <= K")
        self.num_channels = int(num_channels)
        self.num_sensed = int(num_sensed)
        self.size = comb(self.num_channels, self.num_sensed)
        # Tabla (size, M) para traducir índices en lote
        self.table = np.array([unrank_lex(i, self.num_channels, self.num_sensed) for i in range(self.size)],
                              dtype=np.int64).reshape(self.size, self.num_sensed)

    def __len__(self) -> int:
        return self.size

    def unrank(self, index: int) -> SenseAction:
        if not 0 <= index < self.size:
            raise UsageError(f"Índice de acción fuera de rango: {index} (hay {self.size})")
        return SenseAction(int(index), tuple(int(c) for c in self.table[index]))

    def rank(self, channels: Sequence[int]) -> int:
        channels = tuple(int(c) for c in channels)
        if len(channels) != self.num_sensed or any(c < 0 or c >= self.num_channels for c in channels):
            raise UsageError(f"Subconjunto inválido para K={self.num_channels}, M={self.num_sensed}: {channels}")
        if any(b <= a for a, b in zip(channels, channels[1:])):
            raise UsageError(f"El subconjunto debe ser estrictamente creciente: {channels}")
        return rank_lex(channels, self.num_channels)


def enumerate_actions(num_channels: int, num_sensed: int) -> ActionSpace:
    return ActionSpace(num_channels, num_sensed)
