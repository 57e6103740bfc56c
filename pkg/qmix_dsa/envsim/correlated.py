"""
Canales correlados: los K canales se parten en subconjuntos contiguos; el
primer canal de cada subconjunto (líder) sigue una cadena de Markov simétrica
y el resto lo copia o lo invierte.
"""
from typing import Sequence

import numpy as np

from ..errors import ConfigurationError
from .channel_interface import ChannelModel


class CorrelatedPattern(ChannelModel):
    kind = "correlated"

    def __init__(self, subset_sizes: Sequence[int], invert: Sequence[bool], leader_switch_prob: float = 0.3):
        sizes = [int(s) for s in subset_sizes]
        if not sizes or any(s <= 0 for s in sizes):
            raise ConfigurationError(f"Tamaños de subconjunto inválidos: {subset_sizes}")
        super().__init__(sum(sizes))
        if len(invert) != self.num_channels:
            raise ConfigurationError("Se necesita un flag de inversión por canal.")
        if not 0.0 < leader_switch_prob < 1.0:
            raise ConfigurationError(f"Probabilidad de conmutación del líder fuera de (0, 1): {leader_switch_prob}")

        self.subset_sizes = sizes
        self.leaders = np.cumsum([0] + sizes[:-1])
        self.leader_of = np.repeat(np.arange(len(sizes)), sizes)
        self.invert = np.array(invert, dtype=np.int8)
        self.invert[self.leaders] = 0
        self.leader_switch_prob = float(leader_switch_prob)

    def _expand(self, leader_states: np.ndarray) -> np.ndarray:
        return np.bitwise_xor(leader_states[self.leader_of].astype(np.int8), self.invert)

    def expected_idle(self) -> float:
        # Líderes simétricos: idle estacionario 0.5 en todos los canales
        return self.num_channels / 2.0

    def initial_state(self, rng: np.random.Generator) -> np.ndarray:
        return self._expand((rng.random(len(self.subset_sizes)) < 0.5).astype(np.int8))

    def step(self, state: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        leader_states = state[self.leaders]
        flips = rng.random(len(self.subset_sizes)) < self.leader_switch_prob
        return self._expand(np.where(flips, 1 - leader_states, leader_states).astype(np.int8))

    def is_consistent(self, state: np.ndarray) -> bool:
        """Cada seguidor es igual a su líder o a su complemento, según su flag."""
        return bool(np.array_equal(state, self._expand(state[self.leaders])))

    def get_info(self) -> dict:
        info = super().get_info()
        info.update({'subset_sizes': self.subset_sizes, 'invert': self.invert.tolist(),
                     'leader_switch_prob': self.leader_switch_prob})
        return info


def init_correlated(num_channels: int, rng: np.random.Generator, subset_sizes: Sequence[int] | None = None,
                    leader_switch_prob: float = 0.3) -> CorrelatedPattern:
    """Crea el patrón con flags de inversión aleatorios (equiprobables) para los seguidores."""
    if subset_sizes is None:
        if num_channels % 4 != 0:
            raise ConfigurationError(f"{num_channels} canales no se reparten en 4 subconjuntos iguales; indique subset_sizes.")
        subset_sizes = [num_channels // 4] * 4
    if sum(subset_sizes) != num_channels:
        raise ConfigurationError(f"Los subconjuntos {list(subset_sizes)} no cubren exactamente {num_channels} canales.")
    invert = rng.random(num_channels) < 0.5
    return CorrelatedPattern(subset_sizes, invert, leader_switch_prob)
