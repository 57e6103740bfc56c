"""
Entorno que cambia de dinámica en una época fija, sin que los agentes lo sepan.
"""
import numpy as np

from ..errors import ConfigurationError
from .channel_interface import ChannelModel


class SwitchingChannelModel(ChannelModel):
    """Usa ``first`` antes de ``switch_epoch`` y ``second`` a partir de ella (épocas desde 1)."""
    kind = "switching"

    def __init__(self, first: ChannelModel, second: ChannelModel, switch_epoch: int):
        if first.num_channels != second.num_channels:
            raise ConfigurationError(
                f"Los entornos a conmutar tienen K distinto: {first.num_channels} != {second.num_channels}")
        if int(switch_epoch) < 1:
            raise ConfigurationError(f"Época de conmutación inválida: {switch_epoch}")
        super().__init__(first.num_channels)
        self.first = first
        self.second = second
        self.switch_epoch = int(switch_epoch)
        self.switched = False

    def model_for_epoch(self, epoch: int) -> ChannelModel:
        return self.second if epoch >= self.switch_epoch else self.first

    @property
    def active(self) -> ChannelModel:
        return self.second if self.switched else self.first

    def set_epoch(self, epoch: int) -> bool:
        """Selecciona el modelo de la época. Devuelve True si el modelo activo cambió."""
        switched = epoch >= self.switch_epoch
        changed = switched != self.switched
        self.switched = switched
        if changed:
            self.logger.info(f"Época {epoch}: dinámica de canales cambiada a '{self.active.kind}'.")
        return changed

    def expected_idle(self) -> float | None:
        return self.active.expected_idle()

    def initial_state(self, rng: np.random.Generator) -> np.ndarray:
        return self.active.initial_state(rng)

    def step(self, state: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        return self.active.step(state, rng)

    def runtime_state(self) -> dict:
        return {"switched": self.switched,
                "first": self.first.runtime_state(),
                "second": self.second.runtime_state()}

    def restore_runtime_state(self, state: dict):
        self.switched = bool(state.get("switched", False))
        self.first.restore_runtime_state(state.get("first", {}))
        self.second.restore_runtime_state(state.get("second", {}))

    def get_info(self) -> dict:
        info = super().get_info()
        info.update({'first': self.first.get_info(), 'second': self.second.get_info(),
                     'switch_epoch': self.switch_epoch, 'switched': self.switched})
        return info


def make_switching_env(first: ChannelModel, second: ChannelModel, switch_epoch: int) -> SwitchingChannelModel:
    return SwitchingChannelModel(first, second, switch_epoch)
