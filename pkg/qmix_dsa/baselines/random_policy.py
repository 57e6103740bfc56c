"""
Política de control: cada usuario sensa cada slot un M-subconjunto uniforme.
"""
from typing import List

import numpy as np

from ..envsim.environment import SpectrumEnvironment
from ..models.experiment_config import ExperimentConfig
from ..models.metrics_row import PHASE_EVAL, MetricsRow
from ..engine.episode_runner import run_episode, summarize_episode
from ..engine.random_learner import RandomLearner
from .oracle import oracle_upper_bound


def random_policy_rollout(env: SpectrumEnvironment, num_users: int, num_sensed: int, episodes: int,
                          rng: np.random.Generator, num_slots: int = 20) -> List[MetricsRow]:
    """Métricas de ``episodes`` episodios con sensado uniforme; la resolución de slots es la del entorno."""
    config = ExperimentConfig(num_channels=env.num_channels, num_users=num_users, num_sensed=num_sensed,
                              slots_per_episode=num_slots, algorithm="random")
    config.validate()
    learner = RandomLearner(config)
    rows = []
    for k in range(episodes):
        episode = run_episode(env, learner, num_slots, rng, epsilon=1.0)
        rows.append(summarize_episode(episode, 0, k, 1.0, phase=PHASE_EVAL))
    return rows


def oracle_summary(env: SpectrumEnvironment, config: ExperimentConfig, episodes: int,
                   rng: np.random.Generator) -> dict:
    """Canales idle medios por slot, cota media por episodio y tasa de éxito de la política aleatoria."""
    learner = RandomLearner(config.with_overrides(algorithm="random"))
    T, N = config.slots_per_episode, config.num_users
    idle, bounds, successes = [], [], []
    for _ in range(episodes):
        episode = run_episode(env, learner, T, rng, epsilon=1.0)
        report = oracle_upper_bound(episode.states[:T], N)
        idle.extend(report.idle_counts.tolist())
        bounds.append(report.total)
        successes.append(episode.successes)
    return {
        "episodes": episodes,
        "mean_idle_per_slot": float(np.mean(idle)) if idle else float("nan"),
        "mean_oracle_bound": float(np.mean(bounds)) if bounds else float("nan"),
        "demand": N * T,
        "random_success_rate": float(np.mean(successes)) / (N * T) if successes else float("nan"),
    }
