"""
Comprobaciones de gradiente con formas pequeñas: red de agente, red de mezcla
y pérdida completa de QMIX.
"""
import logging
from typing import Dict, List

import numpy as np

from ..envsim.slot import observe
from ..models.episode_record import EpisodeRecord, stack_episodes
from ..models.experiment_config import ExperimentConfig
from ..ndmath import ops
from ..ndmath.gradcheck import grad_check
from .qmix_learner import QmixLearner, qmix_loss

logger = logging.getLogger(__name__)

GRADCHECK_TOLERANCE = 1e-4
# Paso de la diferencia central y umbral bajo el que dos gradientes se consideran
# nulos: con h=1e-4 el redondeo es ~1e-12·|f|, muy por debajo de 1e-6.
GRADCHECK_STEP = 1e-4
GRADCHECK_NEGLIGIBLE = 1e-6


def small_config(**overrides) -> ExperimentConfig:
    base = dict(num_channels=4, num_users=2, num_sensed=1, slots_per_episode=3, batch_size=2,
                agent_hidden_dim=5, mixing_hidden_dim=4, hypernet_hidden_dim=3)
    base.update(overrides)
    config = ExperimentConfig(**base)
    config.validate()
    return config


def random_episode(config: ExperimentConfig, rng: np.random.Generator) -> EpisodeRecord:
    """Episodio sintético coherente (observaciones = estado en los canales sensados)."""
    learner_space = QmixLearner(config).action_space
    T, N, K = config.slots_per_episode, config.num_users, config.num_channels
    states = rng.integers(0, 2, size=(T + 1, K))
    actions = rng.integers(learner_space.size, size=(T, N))
    observations = np.full((T + 1, N, K), -1)
    for t in range(T):
        for n in range(N):
            observations[t + 1, n] = observe(states[t], learner_space.table[actions[t, n]]).values
    rewards = rng.choice([-1, 0, 2], size=(T, N))
    return EpisodeRecord(states, observations, actions, rewards)


def _check_config(config: ExperimentConfig, rng: np.random.Generator, check_rng: np.random.Generator,
                  max_entries: int | None, include_mixer: bool = True) -> Dict[str, float]:
    learner = QmixLearner(config)
    learner.init_params(rng)
    batch = stack_episodes([random_episode(config, rng) for _ in range(config.batch_size)])
    store = learner.params
    inputs = learner.episode_inputs(batch)
    projections: List[np.ndarray] = [rng.normal(size=(batch.batch_size * config.num_users, learner.num_actions))
                                for _ in range(batch.num_slots)]

    def agent_objective(tape):
        (_, q_nodes), = learner.unroll(tape, store, inputs)
        return ops.add_n([ops.total(ops.mul(q, tape.constant(w))) for q, w in zip(q_nodes, projections)])

    qs = rng.normal(size=(batch.batch_size, config.num_users))
    states = batch.states[:, 0]

    def mixer_objective(tape):
        q_tot = learner.mixer.forward(tape, store, tape.constant(qs), tape.constant(states))
        return ops.total(ops.square(q_tot))

    # θ⁻ distinto de θ para que los objetivos no sean triviales
    target = store.copy()
    for p in target:
        p.values += rng.normal(scale=0.05, size=p.shape)

    def loss_objective(tape):
        return qmix_loss(learner, tape, batch, store, target)

    def check(fn, params):
        return grad_check(fn, params, perturbation=GRADCHECK_STEP, max_entries=max_entries,
                          rng=check_rng, negligible=GRADCHECK_NEGLIGIBLE)

    results = {"agent_network": check(agent_objective, store.with_prefix("agent."))}
    if include_mixer:
        results["mixer"] = check(mixer_objective, store.with_prefix("mixer."))
    results["qmix_loss"] = check(loss_objective, list(store))
    return results


def run_gradient_checks(seed: int = 0, max_entries: int | None = 40) -> Dict[str, float]:
    """
    Error relativo máximo de cada comprobación: formas pequeñas (T=3, B=2) y
    un episodio completo de 20 slots (B=1) para la retropropagación en el tiempo.
    """
    rng = np.random.default_rng(seed)
    check_rng = np.random.default_rng(seed + 1)
    results = _check_config(small_config(), rng, check_rng, max_entries)
    unrolled = _check_config(small_config(slots_per_episode=20, batch_size=1), rng, check_rng, max_entries,
                             include_mixer=False)
    results.update({f"{name}_20_slots": err for name, err in unrolled.items()})
    for name, err in results.items():
        logger.info(f"Gradcheck {name}: error relativo máximo {err:.2e}")
    return results
