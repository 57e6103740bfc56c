"""
Interfaz base para los algoritmos de aprendizaje (qmix, iql, random).
Define el contrato que usan el Trainer y el ExperimentRunner, que no
conocen el algoritmo concreto.
"""

from abc import ABC, abstractmethod
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..agents.action_space import ActionSpace
from ..models.episode_record import EpisodeRecord
from ..models.experiment_config import ExperimentConfig

logger = logging.getLogger(__name__)


class LearnerInterface(ABC):
    """
    Interfaz abstracta de un learner: política descentralizada para actuar
    y, si es entrenable, un paso de gradiente sobre un batch de episodios.
    """
    name = "base"
    trainable = True

    def __init__(self, config: ExperimentConfig):
        """
        Args:
            config: configuración del experimento (K, N, M, anchos de red...).
        """
        self.config = config
        self.num_agents = config.num_users
        self.action_space = ActionSpace(config.num_channels, config.num_sensed)
        self.num_actions = self.action_space.size
        self.train_steps = 0
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")

    @abstractmethod
    def init_params(self, rng: np.random.Generator) -> None:
        """(Re)inicializa todos los parámetros y el estado del optimizador."""
        raise NotImplementedError

    @abstractmethod
    def initial_hidden(self) -> Optional[np.ndarray]:
        """Estado oculto de los N agentes al empezar un episodio."""
        raise NotImplementedError

    @abstractmethod
    def act(self, observations: np.ndarray, prev_actions: np.ndarray, hidden: Optional[np.ndarray],
            epsilon: float, rng: np.random.Generator) -> Tuple[np.ndarray, Optional[np.ndarray]]:
        """
        Elige la acción de cada agente a partir solo de su historia local.

        Args:
            observations: (N, K) observación actual de cada agente.
            prev_actions: (N,) acción del slot anterior (-1 en el primero).
            hidden: estado oculto (N, H) o None.
            epsilon: probabilidad de exploración.
            rng: stream de exploración.

        Returns:
            (acciones (N,), nuevo estado oculto)
        """
        raise NotImplementedError

    @abstractmethod
    def train_step(self, episodes: List[EpisodeRecord]) -> float:
        """Un paso de gradiente sobre el batch. Devuelve la pérdida."""
        raise NotImplementedError

    def sync_target(self) -> None:
        """Copia θ en θ⁻ (no-op si no hay red objetivo)."""

    # Persistencia: arrays con nombre y contadores
    def state_arrays(self) -> Dict[str, np.ndarray]:
        return {}

    def load_state_arrays(self, arrays: Dict[str, np.ndarray], counters: Dict[str, int]) -> None:
        self.train_steps = int(counters.get("train_steps", 0))

    def counters(self) -> Dict[str, int]:
        return {"train_steps": self.train_steps}

    def get_info(self) -> dict:
        """
        Retorna información del learner.

        Returns:
            Diccionario con información del learner
        """
        return {
            'type': self.__class__.__name__,
            'algorithm': self.name,
            'num_agents': self.num_agents,
            'num_actions': self.num_actions,
            'train_steps': self.train_steps,
        }
