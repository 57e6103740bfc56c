"""
Interfaz base para los modelos de ocupación de canal.
Define el contrato que deben implementar todos los modelos (Markov, periódico,
correlado, traza, conmutado).
"""

from abc import ABC, abstractmethod
import logging

import numpy as np

from ..errors import ConfigurationError, UsageError

logger = logging.getLogger(__name__)

IDLE = 1
BUSY = 0


class ChannelModel(ABC):
    """
    Interfaz abstracta de un modelo de canales.

    El estado de los K canales es un ChannelStateVector: array int8 con
    1 = idle y 0 = busy.
    """
    kind = "base"

    def __init__(self, num_channels: int):
        """
        Args:
            num_channels: número de canales ortogonales K.
        """
        if int(num_channels) <= 0:
            raise ConfigurationError(f"Número de canales inválido: {num_channels}. Debe ser > 0.")
        self.num_channels = int(num_channels)
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")

    @abstractmethod
    def initial_state(self, rng: np.random.Generator) -> np.ndarray:
        """Estado inicial de los canales."""
        raise NotImplementedError

    @abstractmethod
    def step(self, state: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """Transición al inicio del siguiente slot."""
        raise NotImplementedError

    def expected_idle(self) -> float | None:
        """Número esperado de canales idle por slot en régimen estacionario, si se conoce."""
        return None

    # Estado mutable propio del modelo (cursores, modelo activo...); vacío por defecto
    def runtime_state(self) -> dict:
        return {}

    def restore_runtime_state(self, state: dict):
        pass

    def check_state(self, state: np.ndarray):
        if state.shape != (self.num_channels,):
            raise UsageError(f"Estado de longitud {state.shape}, se esperaba ({self.num_channels},)")

    def get_info(self) -> dict:
        """
        Retorna información del modelo.

        Returns:
            Diccionario con información del modelo
        """
        return {
            'type': self.__class__.__name__,
            'kind': self.kind,
            'num_channels': self.num_channels,
            'expected_idle': self.expected_idle(),
        }


def step_channels(model: ChannelModel, state: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Avanza un slot el estado de los canales según ``model``."""
    state = np.asarray(state, dtype=np.int8)
    model.check_state(state)
    return model.step(state, rng)
