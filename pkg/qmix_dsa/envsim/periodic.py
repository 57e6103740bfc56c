"""
Canales periódicos: un único bloque contiguo de canales idle que rota en
round-robin (bloque 0→1→2→3→0) con probabilidad q por slot.
"""
import numpy as np

from ..errors import ConfigurationError, UsageError
from .channel_interface import ChannelModel


class PeriodicPattern(ChannelModel):
    kind = "periodic"

    def __init__(self, num_channels: int, num_groups: int = 4, switch_prob: float = 0.75):
        super().__init__(num_channels)
        if num_groups <= 0 or self.num_channels % num_groups != 0:
            raise ConfigurationError(
                f"{num_channels} canales no se pueden repartir en {num_groups} bloques iguales.")
        if not 0.0 <= switch_prob <= 1.0:
            raise ConfigurationError(f"Probabilidad de conmutación fuera de [0, 1]: {switch_prob}")
        self.num_groups = int(num_groups)
        self.group_size = self.num_channels // self.num_groups
        self.switch_prob = float(switch_prob)

    def state_for_group(self, group: int) -> np.ndarray:
        state = np.zeros(self.num_channels, dtype=np.int8)
        start = group * self.group_size
        state[start:start + self.group_size] = 1
        return state

    def current_group(self, state: np.ndarray) -> int:
        """Índice del bloque idle en ``state``."""
        idle = np.flatnonzero(state)
        if idle.size != self.group_size:
            raise UsageError(f"Estado no periódico: {idle.size} canales idle (esperado {self.group_size}).")
        group = int(idle[0]) // self.group_size
        if not np.array_equal(state, self.state_for_group(group)):
            raise UsageError("Estado no periódico: los canales idle no forman un bloque.")
        return group

    def expected_idle(self) -> float:
        return float(self.group_size)

    def initial_state(self, rng: np.random.Generator) -> np.ndarray:
        return self.state_for_group(int(rng.integers(self.num_groups)))

    def step(self, state: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        group = self.current_group(state)
        if rng.random() < self.switch_prob:
            group = (group + 1) % self.num_groups
        return self.state_for_group(group)

    def get_info(self) -> dict:
        info = super().get_info()
        info.update({'num_groups': self.num_groups, 'switch_prob': self.switch_prob})
        return info
