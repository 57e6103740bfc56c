import numpy as np
import pytest

from qmix_dsa.engine.gradient_suite import GRADCHECK_TOLERANCE, random_episode, run_gradient_checks, small_config
from qmix_dsa.engine.iql_learner import IqlLearner, iql_targets
from qmix_dsa.engine.learner_factory import LearnerFactory
from qmix_dsa.engine.mixer import mix
from qmix_dsa.engine.qmix_learner import QmixLearner, qmix_loss, td_targets
from qmix_dsa.errors import ConfigurationError
from qmix_dsa.models.episode_record import stack_episodes
from qmix_dsa.ndmath.tape import ComputationTape


def _learner_and_batch(seed=0, **overrides):
    rng = np.random.default_rng(seed)
    config = small_config(**overrides)
    learner = QmixLearner(config)
    learner.init_params(rng)
    episodes = [random_episode(config, rng) for _ in range(config.batch_size)]
    return learner, episodes, stack_episodes(episodes)


def test_td_targets_last_slot_has_no_bootstrap():
    """
    Test que verifica que el objetivo del último slot es la recompensa total.
    """
    learner, _, batch = _learner_and_batch()
    targets = td_targets(learner, batch, learner.target_params)

    assert targets.shape == (batch.batch_size, batch.num_slots)
    np.testing.assert_allclose(targets[:, -1], batch.total_rewards[:, -1])


def test_td_targets_with_zero_discount_are_rewards():
    learner, _, batch = _learner_and_batch(gamma=0.0)

    np.testing.assert_allclose(td_targets(learner, batch, learner.target_params), batch.total_rewards)


def test_td_targets_match_manual_bootstrap():
    """
    Test que verifica y_t = r_t + γ · Q_tot⁻(s_{t+1}, argmax por agente) slot a slot.
    """
    learner, _, batch = _learner_and_batch(seed=3, gamma=0.9)
    target = learner.target_params
    q = learner.sequence_q_values(target, batch)
    targets = td_targets(learner, batch, target)

    for b in range(batch.batch_size):
        for t in range(batch.num_slots - 1):
            bootstrap = mix(q[t + 1, b].max(axis=-1), batch.states[b, t + 1], target, learner.mixer)
            assert targets[b, t] == pytest.approx(batch.total_rewards[b, t] + 0.9 * bootstrap)


def test_td_targets_ignore_online_parameters():
    """
    Perturbar θ no cambia los objetivos: solo dependen de θ⁻.
    """
    learner, _, batch = _learner_and_batch(seed=4)
    before = td_targets(learner, batch, learner.target_params)
    for p in learner.params:
        p.values += 0.5

    np.testing.assert_array_equal(td_targets(learner, batch, learner.target_params), before)


def test_qmix_loss_is_mean_squared_td_error():
    """
    Test que verifica la pérdida contra la media de los residuos al cuadrado
    calculada a mano con los Q-valores elegidos y la red de mezcla.
    """
    learner, _, batch = _learner_and_batch(seed=5)
    for p in learner.target_params:
        p.values *= 0.9
    targets = td_targets(learner, batch, learner.target_params)
    q = learner.sequence_q_values(learner.params, batch)

    residuals = []
    for b in range(batch.batch_size):
        for t in range(batch.num_slots):
            chosen = q[t, b, np.arange(batch.num_agents), batch.actions[b, t]]
            residuals.append(targets[b, t] - mix(chosen, batch.states[b, t], learner.params, learner.mixer))

    loss = qmix_loss(learner, ComputationTape(), batch, learner.params, learner.target_params)
    assert float(loss.value) == pytest.approx(np.mean(np.square(residuals)))


def test_train_steps_reduce_loss_on_fixed_batch():
    """
    Test que verifica que repetir pasos de Adam sobre el mismo batch reduce la pérdida.
    """
    learner, episodes, _ = _learner_and_batch(seed=6, learning_rate=0.01)

    first = learner.train_step(episodes)
    for _ in range(150):
        last = learner.train_step(episodes)

    assert last < first
    assert learner.train_steps == 151
    assert learner.optimizer.steps_taken() == 151


def test_sync_target_copies_parameters():
    learner, episodes, _ = _learner_and_batch(seed=7)
    learner.train_step(episodes)
    assert not learner.target_params.equals(learner.params)

    learner.sync_target()
    assert learner.target_params.equals(learner.params)


def test_gradient_checks_pass():
    """
    Test que verifica los gradientes de la red de agente, de la mezcla y de la pérdida completa,
    también desenrollando un episodio de 20 slots con un batch de un episodio.
    """
    results = run_gradient_checks(seed=0)

    assert set(results) == {"agent_network", "mixer", "qmix_loss", "agent_network_20_slots", "qmix_loss_20_slots"}
    assert all(err < GRADCHECK_TOLERANCE for err in results.values())


def test_iql_targets_and_per_agent_networks():
    """
    IQL usa una red por agente y objetivos por agente de forma (B, T, N).
    """
    rng = np.random.default_rng(8)
    config = small_config(algorithm="iql")
    learner = IqlLearner(config)
    learner.init_params(rng)
    batch = stack_episodes([random_episode(config, rng) for _ in range(config.batch_size)])

    targets = iql_targets(learner, batch, learner.target_params)

    assert targets.shape == (batch.batch_size, batch.num_slots, batch.num_agents)
    np.testing.assert_allclose(targets[:, -1], batch.rewards[:, -1])
    assert learner.params.with_prefix("agent0.") and learner.params.with_prefix("agent1.")
    assert not learner.params.with_prefix("mixer.")


def test_learner_factory():
    rng = np.random.default_rng(0)
    assert isinstance(LearnerFactory.create_learner(small_config(), rng), QmixLearner)
    assert LearnerFactory.get_supported_types() == ['qmix', 'iql', 'random']
    config = small_config()
    config.algorithm = "vdn"
    with pytest.raises(ConfigurationError, match="Algoritmo no soportado"):
        LearnerFactory.create_learner(config, rng)


def _constant_mixer(learner, value):
    """Red de mezcla que devuelve ``value`` para cualquier entrada (θ y θ⁻)."""
    for p in learner.params.with_prefix("mixer."):
        p.values[...] = 0.0
    learner.params["mixer.hyper_b2.1.b"].values[:] = value
    learner.sync_target()


def test_converged_targets_give_zero_loss_and_gradients():
    """
    Test que verifica que con θ⁻ = θ y Q_t = y_t en todos los slots la pérdida
    y todos los gradientes son cero.
    """
    learner, episodes, _ = _learner_and_batch(seed=9, gamma=1.0)
    _constant_mixer(learner, 2.0)
    # Q_tot ≡ 2: y_t = 0 + 2 antes del último slot y y_T = r_T = 2
    for episode in episodes:
        episode.rewards[:] = 0
        episode.rewards[-1] = [2, 0]
    batch = stack_episodes(episodes)

    learner.params.zero_grad()
    tape = ComputationTape()
    loss = qmix_loss(learner, tape, batch, learner.params, learner.target_params)
    tape.backward(loss)

    assert abs(float(loss.value)) < 1e-10
    assert all(np.max(np.abs(p.grad)) < 1e-10 for p in learner.params)


def test_qmix_loss_single_slot_example():
    """
    Un episodio de un slot con Q_tot = 1 y y = r^tot = 3 da pérdida (3 − 1)² = 4.
    """
    learner, episodes, _ = _learner_and_batch(seed=10, slots_per_episode=1, batch_size=1)
    _constant_mixer(learner, 1.0)
    episodes[0].rewards[0] = [2, 1]

    loss = qmix_loss(learner, ComputationTape(), stack_episodes(episodes), learner.params, learner.target_params)

    assert float(loss.value) == pytest.approx(4.0)
