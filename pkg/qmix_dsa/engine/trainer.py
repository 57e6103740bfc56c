"""
Bucle de entrenamiento por épocas: recoger episodios con ε-greedy, guardarlos
en el replay buffer y dar pasos de gradiente sobre batches muestreados.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from .. import seeding
from ..agents.exploration import EpsilonSchedule
from ..envsim.environment import SpectrumEnvironment
from ..models.episode_record import EpisodeRecord
from ..models.experiment_config import ExperimentConfig
from .episode_runner import run_episode
from .learner_interface import LearnerInterface
from .replay_buffer import ReplayBuffer


@dataclass
class TrainerState:
    """Contadores del entrenamiento (los de θ, θ⁻ y Adam viven en el learner)."""
    epoch: int = 0
    global_slots: int = 0       # slots de entorno recogidos en total
    epsilon_slots: int = 0      # slots desde el último reinicio del schedule
    episodes: int = 0
    resets: int = 0

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    @classmethod
    def from_dict(cls, data: dict) -> "TrainerState":
        return cls(**{k: int(v) for k, v in data.items() if k in cls.__dataclass_fields__})


@dataclass
class EpochResult:
    epoch: int
    episodes: List[EpisodeRecord] = field(default_factory=list)
    epsilons: List[float] = field(default_factory=list)
    losses: List[float] = field(default_factory=list)
    env_switched: bool = False

    @property
    def mean_loss(self) -> float:
        return float(np.mean(self.losses)) if self.losses else float("nan")


class Trainer:
    """
    Dueño del learner, el replay buffer y los streams de exploración,
    muestreo y pesos. Single-thread y determinista por semilla.
    """

    def __init__(self, config: ExperimentConfig, learner: LearnerInterface, env: SpectrumEnvironment,
                 weights_rng: np.random.Generator | None = None):
        self.config = config
        self.learner = learner
        self.env = env
        self.buffer = ReplayBuffer(config.buffer_capacity)
        self.schedule = EpsilonSchedule(config.epsilon_start, config.epsilon_end, config.epsilon_decay_steps)
        self.exploration_rng = seeding.make_rng(config.seed, seeding.EXPLORATION)
        self.sampling_rng = seeding.make_rng(config.seed, seeding.SAMPLING)
        self.weights_rng = weights_rng or seeding.make_rng(config.seed, seeding.WEIGHTS)
        self.state = TrainerState()
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")

    @property
    def epsilon(self) -> float:
        return self.schedule.value(self.state.epsilon_slots)

    @property
    def exploration_settled(self) -> bool:
        """ε ya alcanzó su valor final."""
        return self.state.epsilon_slots >= self.schedule.decay_steps

    def collect_episode(self) -> EpisodeRecord:
        start = self.state.epsilon_slots
        episode = run_episode(self.env, self.learner, self.config.slots_per_episode, self.exploration_rng,
                              epsilon=lambda t: self.schedule.value(start + t))
        self.state.global_slots += episode.num_slots
        self.state.epsilon_slots += episode.num_slots
        self.state.episodes += 1
        return episode

    def train_epoch(self, epoch: int) -> EpochResult:
        """
        Una época: (1) episodes_per_epoch episodios guardados en el buffer;
        (2) train_steps_per_epoch pasos de gradiente si el buffer tiene al
        menos B episodios; (3) θ⁻ := θ cada target_sync_interval pasos.
        """
        result = EpochResult(epoch, env_switched=self.env.begin_epoch(epoch))
        if result.env_switched:
            self.logger.info(f"Época {epoch}: el entorno cambia a {self.env.model.get_info()['kind']}")

        for _ in range(self.config.episodes_per_epoch):
            result.epsilons.append(self.epsilon)
            episode = self.collect_episode()
            result.episodes.append(episode)
            if self.learner.trainable:
                self.buffer.store_episode(episode)

        if self.learner.trainable and len(self.buffer) >= self.config.batch_size:
            for _ in range(self.config.train_steps_per_epoch):
                batch = self.buffer.sample_batch(self.config.batch_size, self.sampling_rng)
                result.losses.append(self.learner.train_step(batch))
                if self.learner.train_steps % self.config.target_sync_interval == 0:
                    self.learner.sync_target()
        elif self.learner.trainable:
            self.logger.debug(f"Época {epoch}: buffer con {len(self.buffer)} episodios < B, sin entrenamiento")

        self.state.epoch = epoch
        return result

    def reset(self):
        """Vuelve al estado inicial: parámetros, Adam, replay buffer y schedule de ε."""
        self.learner.init_params(self.weights_rng)
        self.buffer.clear()
        self.state.epsilon_slots = 0
        self.state.resets += 1
        self.logger.warning(f"Learner reiniciado (reinicio nº {self.state.resets})")

    def rng_states(self) -> Dict[str, dict]:
        return {
            "exploration": seeding.get_rng_state(self.exploration_rng),
            "sampling": seeding.get_rng_state(self.sampling_rng),
            "weights": seeding.get_rng_state(self.weights_rng),
        }

    def restore_rng_states(self, states: Dict[str, dict]):
        seeding.set_rng_state(self.exploration_rng, states["exploration"])
        seeding.set_rng_state(self.sampling_rng, states["sampling"])
        seeding.set_rng_state(self.weights_rng, states["weights"])


def train_epoch(trainer: Trainer, env: SpectrumEnvironment | None = None,
                config: ExperimentConfig | None = None, epoch: int | None = None) -> EpochResult:
    if env is not None:
        trainer.env = env
    if config is not None:
        trainer.config = config
    return trainer.train_epoch(trainer.state.epoch + 1 if epoch is None else epoch)


def sync_target(trainer: Trainer):
    trainer.learner.sync_target()
