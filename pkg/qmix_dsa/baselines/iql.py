"""
Baseline de aprendices independientes: mismo entorno, replay, red objetivo y
ε-greedy que QMIX, pero cada agente con su DRQN y su recompensa individual.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

from .. import seeding
from ..engine.episode_runner import summarize_episode
from ..engine.experiment_runner import build_environment
from ..engine.iql_learner import IqlLearner
from ..engine.trainer import Trainer
from ..envsim.environment import SpectrumEnvironment
from ..models.experiment_config import ExperimentConfig
from ..models.metrics_row import MetricsRow
from ..ndmath.tensor import ParameterStore

logger = logging.getLogger(__name__)


@dataclass
class IqlOutcome:
    learner: IqlLearner
    rows: List[MetricsRow] = field(default_factory=list)

    @property
    def params(self) -> ParameterStore:
        return self.learner.params


def iql_train(config: ExperimentConfig, env: Optional[SpectrumEnvironment] = None,
              epochs: Optional[int] = None) -> IqlOutcome:
    """
    Entrena IQL durante ``epochs`` épocas (por defecto epoch_max) sin escribir
    ficheros. Devuelve los parámetros entrenados y una fila de métricas por episodio.
    """
    config = config.with_overrides(algorithm="iql")
    env = env or build_environment(config)
    weights_rng = seeding.make_rng(config.seed, seeding.WEIGHTS)
    learner = IqlLearner(config)
    learner.init_params(weights_rng)
    trainer = Trainer(config, learner, env, weights_rng)

    outcome = IqlOutcome(learner)
    for epoch in range(1, (config.epoch_max if epochs is None else epochs) + 1):
        result = trainer.train_epoch(epoch)
        first = trainer.state.episodes - len(result.episodes)
        outcome.rows.extend(summarize_episode(ep, epoch, first + k, eps, result.mean_loss)
                            for k, (ep, eps) in enumerate(zip(result.episodes, result.epsilons)))
    logger.info(f"IQL entrenado: {len(outcome.rows)} episodios, {learner.train_steps} pasos")
    return outcome
