"""
Entorno de acceso dinámico al espectro: N usuarios, K canales, M canales
sensados por usuario y slot.
"""
import copy
import logging
from typing import List, Sequence, Tuple

import numpy as np

from .. import seeding
from ..errors import ConfigurationError
from ..models.observation import Observation, SlotOutcome
from .channel_interface import ChannelModel, step_channels
from .slot import observe, resolve_slot
from .switching import SwitchingChannelModel


class SpectrumEnvironment:
    """
    Mantiene el estado real de los canales y resuelve los slots.

    El proceso de canales es continuo entre episodios; cada instancia es
    dueña de sus generadores (dinámica y desempate de transmisión).
    """

    def __init__(self, model: ChannelModel, num_users: int, num_sensed: int,
                 dynamics_rng: np.random.Generator, transmit_rng: np.random.Generator):
        if num_users < 1:
            raise ConfigurationError(f"Número de usuarios inválido: {num_users}")
        if not 1 <= num_sensed <= model.num_channels:
            raise ConfigurationError(f"M={num_sensed} fuera de [1, {model.num_channels}]")
        self.model = model
        self.num_users = int(num_users)
        self.num_sensed = int(num_sensed)
        self.dynamics_rng = dynamics_rng
        self.transmit_rng = transmit_rng
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")
        self.state = model.initial_state(dynamics_rng)

    @classmethod
    def from_seed(cls, model: ChannelModel, num_users: int, num_sensed: int, seed: int) -> "SpectrumEnvironment":
        return cls(model, num_users, num_sensed,
                   seeding.make_rng(seed, seeding.CHANNEL_DYNAMICS),
                   seeding.make_rng(seed, seeding.TRANSMIT))

    @property
    def num_channels(self) -> int:
        return self.model.num_channels

    def begin_epoch(self, epoch: int) -> bool:
        """
        Notifica el inicio de una época. En entornos conmutados, al activarse
        el segundo modelo el estado se vuelve a muestrear de su distribución
        inicial. Devuelve True si hubo cambio.
        """
        if isinstance(self.model, SwitchingChannelModel) and self.model.set_epoch(epoch):
            self.state = self.model.initial_state(self.dynamics_rng)
            return True
        return False

    def play_slot(self, joint_sense: Sequence) -> Tuple[np.ndarray, SlotOutcome, List[Observation]]:
        """
        Juega un slot con el estado actual y avanza los canales.

        Returns:
            (estado del slot, resultado, observaciones por usuario)
        """
        if len(joint_sense) != self.num_users:
            raise ConfigurationError(f"Se esperaban {self.num_users} acciones, recibidas {len(joint_sense)}")
        state = self.state
        outcome = resolve_slot(state, joint_sense, self.transmit_rng, self.num_sensed)
        observations = [observe(state, sense) for sense in joint_sense]
        self.state = step_channels(self.model, state, self.dynamics_rng)
        return state, outcome, observations

    def fork(self, dynamics_rng: np.random.Generator, transmit_rng: np.random.Generator) -> "SpectrumEnvironment":
        """Copia independiente (modelo y estado) con generadores propios, p. ej. para evaluar."""
        clone = copy.copy(self)
        clone.model = copy.deepcopy(self.model)
        clone.state = self.state.copy()
        clone.dynamics_rng = dynamics_rng
        clone.transmit_rng = transmit_rng
        return clone

    def runtime_state(self) -> dict:
        return {
            "state": self.state.tolist(),
            "model": self.model.runtime_state(),
            "dynamics_rng": seeding.get_rng_state(self.dynamics_rng),
            "transmit_rng": seeding.get_rng_state(self.transmit_rng),
        }

    def restore_runtime_state(self, runtime: dict):
        state = np.array(runtime["state"], dtype=np.int8)
        self.model.check_state(state)
        self.model.restore_runtime_state(runtime.get("model", {}))
        seeding.set_rng_state(self.dynamics_rng, runtime["dynamics_rng"])
        seeding.set_rng_state(self.transmit_rng, runtime["transmit_rng"])
        self.state = state
