from unittest.mock import patch

import numpy as np

from qmix_dsa.engine.episode_runner import run_episode, summarize_episode
from qmix_dsa.engine.gradient_suite import small_config
from qmix_dsa.engine.learner_factory import LearnerFactory
from qmix_dsa.engine.trainer import Trainer
from qmix_dsa.envsim.environment import SpectrumEnvironment
from qmix_dsa.envsim.markov import init_markov
from qmix_dsa.seeding import WEIGHTS, make_rng


def _trainer(**overrides):
    config = small_config(**overrides)
    learner = LearnerFactory.create_learner(config, make_rng(config.seed, WEIGHTS))
    env = SpectrumEnvironment.from_seed(init_markov(config.num_channels, 0), config.num_users,
                                        config.num_sensed, seed=config.seed)
    return Trainer(config, learner, env)


def test_target_sync_every_interval_steps():
    """
    Test que verifica que θ⁻ solo se copia al completar target_sync_interval pasos:
    10 pasos por época e intervalo 40, así que tras 3 épocas θ⁻ ≠ θ y tras 4 θ⁻ = θ.
    """
    trainer = _trainer(episodes_per_epoch=2, train_steps_per_epoch=10, target_sync_interval=40)
    learner = trainer.learner

    for epoch in (1, 2, 3):
        assert len(trainer.train_epoch(epoch).losses) == 10
    assert learner.train_steps == 30
    assert not learner.target_params.equals(learner.params)

    trainer.train_epoch(4)
    assert learner.train_steps == 40
    assert learner.target_params.equals(learner.params)


def test_no_training_until_buffer_holds_a_batch():
    """
    Con B = 4 y 2 episodios por época la primera época no entrena.
    """
    trainer = _trainer(batch_size=4, episodes_per_epoch=2, train_steps_per_epoch=5)

    first = trainer.train_epoch(1)
    second = trainer.train_epoch(2)

    assert first.losses == [] and np.isnan(first.mean_loss)
    assert len(second.losses) == 5
    assert len(trainer.buffer) == 4


def test_epsilon_recorded_per_episode():
    trainer = _trainer(episodes_per_epoch=3, epsilon_decay_steps=30)
    T = trainer.config.slots_per_episode

    result = trainer.train_epoch(1)

    expected = [trainer.schedule.value(i * T) for i in range(3)]
    np.testing.assert_allclose(result.epsilons, expected)
    assert trainer.state.global_slots == 3 * T
    assert trainer.state.episodes == 3


def test_training_is_deterministic_per_seed():
    """
    Test que verifica que dos entrenamientos con la misma semilla producen
    exactamente los mismos episodios y pérdidas.
    """
    a = _trainer(episodes_per_epoch=2, train_steps_per_epoch=3)
    b = _trainer(episodes_per_epoch=2, train_steps_per_epoch=3)

    for epoch in (1, 2, 3):
        ra, rb = a.train_epoch(epoch), b.train_epoch(epoch)
        assert ra.losses == rb.losses
        for ea, eb in zip(ra.episodes, rb.episodes):
            np.testing.assert_array_equal(ea.actions, eb.actions)
            np.testing.assert_array_equal(ea.rewards, eb.rewards)
    assert a.learner.params.equals(b.learner.params)


def test_reset_restarts_learner_buffer_and_schedule():
    trainer = _trainer(episodes_per_epoch=2, train_steps_per_epoch=2)
    trainer.train_epoch(1)
    before = trainer.learner.params.copy()

    trainer.reset()

    assert len(trainer.buffer) == 0
    assert trainer.state.epsilon_slots == 0
    assert trainer.state.resets == 1
    assert trainer.epsilon == trainer.config.epsilon_start
    assert trainer.learner.train_steps == 0
    assert not trainer.learner.params.equals(before)


def test_random_learner_does_not_fill_buffer():
    trainer = _trainer(algorithm="random", episodes_per_epoch=3)

    result = trainer.train_epoch(1)

    assert len(result.episodes) == 3
    assert len(trainer.buffer) == 0
    assert result.losses == []


def test_run_episode_and_summary_accounting():
    """
    Test que verifica que éxitos + colisiones + silencios = N·T y que el
    éxito nunca supera la cota del oráculo.
    """
    trainer = _trainer()
    config = trainer.config
    episode = run_episode(trainer.env, trainer.learner, config.slots_per_episode,
                          np.random.default_rng(0), epsilon=1.0)

    row = summarize_episode(episode, epoch=1, index=0, epsilon=1.0)

    assert row.successes + row.collisions + row.silent == config.num_users * config.slots_per_episode
    assert row.successes <= row.oracle_bound
    assert row.total_reward == 2 * row.successes - row.collisions
    np.testing.assert_array_equal(episode.observations[0], -1)


def test_hidden_state_resets_at_episode_start():
    """
    Test que verifica que cada episodio empieza con el estado oculto a cero, de
    modo que los Q-valores del primer slot no dependen de episodios anteriores.
    """
    trainer = _trainer()
    learner, T = trainer.learner, trainer.config.slots_per_episode
    rng = np.random.default_rng(0)

    with patch.object(learner, "act", wraps=learner.act) as spy:
        run_episode(trainer.env, learner, T, rng, epsilon=0.0)
        run_episode(trainer.env, learner, T, rng, epsilon=0.0)

    hiddens = [c.args[2] for c in spy.call_args_list]
    assert len(hiddens) == 2 * T
    np.testing.assert_array_equal(hiddens[0], 0.0)
    np.testing.assert_array_equal(hiddens[T], 0.0)
    assert np.any(hiddens[T - 1] != 0.0)

    N, K = trainer.config.num_users, trainer.config.num_channels
    observations = np.full((N, K), -1)
    prev = np.full(N, -1)
    fresh, _ = learner.agent_q_values(observations, prev, learner.initial_hidden())
    after_episodes, _ = learner.agent_q_values(observations, prev, hiddens[T])
    np.testing.assert_array_equal(fresh, after_episodes)
