"""
Ejecución de un episodio de T slots contra el entorno y resumen de sus métricas.
"""
from typing import Callable, Union

import numpy as np

from ..baselines.oracle import oracle_upper_bound
from ..envsim.environment import SpectrumEnvironment
from ..models.episode_record import EpisodeRecord
from ..models.metrics_row import PHASE_TRAIN, MetricsRow
from ..models.observation import UNSENSED
from .learner_interface import LearnerInterface

EpsilonSource = Union[float, Callable[[int], float]]


def run_episode(env: SpectrumEnvironment, learner: LearnerInterface, num_slots: int,
                rng: np.random.Generator, epsilon: EpsilonSource = 0.0) -> EpisodeRecord:
    """
    Juega un episodio completo. El estado oculto de los agentes empieza en
    cero; el proceso de canales continúa desde donde lo dejó el episodio
    anterior.

    Args:
        epsilon: valor fijo o función del índice de slot dentro del episodio.
    """
    N, K = env.num_users, env.num_channels
    states = np.empty((num_slots + 1, K), dtype=np.int8)
    observations = np.full((num_slots + 1, N, K), UNSENSED, dtype=np.int8)
    actions = np.empty((num_slots, N), dtype=np.int64)
    rewards = np.empty((num_slots, N), dtype=np.int64)
    table = learner.action_space.table

    hidden = learner.initial_hidden()
    prev = np.full(N, -1, dtype=np.int64)
    for t in range(num_slots):
        eps = epsilon(t) if callable(epsilon) else epsilon
        chosen, hidden = learner.act(observations[t], prev, hidden, eps, rng)
        state, outcome, obs = env.play_slot([table[a] for a in chosen])
        states[t] = state
        observations[t + 1] = [o.values for o in obs]
        actions[t] = chosen
        rewards[t] = outcome.rewards
        prev = chosen
    states[num_slots] = env.state
    return EpisodeRecord(states, observations, actions, rewards)


def summarize_episode(episode: EpisodeRecord, epoch: int, index: int, epsilon: float,
                      mean_loss: float = float("nan"), phase: str = PHASE_TRAIN, resets: int = 0) -> MetricsRow:
    T, N = episode.num_slots, episode.num_agents
    oracle = oracle_upper_bound(episode.states[:T], N)
    return MetricsRow(
        epoch=int(epoch),
        episode=int(index),
        successes=episode.successes,
        collisions=episode.collisions,
        silent=episode.silent,
        total_reward=int(episode.rewards.sum()),
        success_rate=episode.successes / (N * T),
        oracle_bound=oracle.total,
        epsilon=float(epsilon),
        mean_loss=float(mean_loss),
        phase=phase,
        resets=int(resets),
    )
