from math import comb

import numpy as np
import pytest

from qmix_dsa.agents.action_space import ActionSpace
from qmix_dsa.agents.drqn import DrqnAgentNetwork, agent_q_forward
from qmix_dsa.agents.encoding import encode_input, input_dim
from qmix_dsa.agents.exploration import EpsilonSchedule, greedy_action, select_action
from qmix_dsa.engine.mixer import greedy_joint_action
from qmix_dsa.errors import ConfigurationError, UsageError
from qmix_dsa.models.observation import Observation
from qmix_dsa.ndmath.tape import ComputationTape
from qmix_dsa.ndmath.tensor import ParameterStore


def test_action_space_lexicographic_order():
    """
    Test que verifica la numeración lexicográfica de los 2-subconjuntos de 4 canales.
    """
    space = ActionSpace(4, 2)

    assert len(space) == 6
    assert [space.unrank(i).channels for i in range(6)] == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_rank_inverts_unrank():
    """
    Test que verifica rank(unrank(i)) = i en todo el espacio de K=16, M=4.
    """
    space = ActionSpace(16, 4)

    assert space.size == comb(16, 4) == 1820
    assert all(space.rank(space.unrank(i).channels) == i for i in range(space.size))


def test_action_space_errors():
    space = ActionSpace(4, 2)
    with pytest.raises(UsageError, match="fuera de rango"):
        space.unrank(6)
    with pytest.raises(UsageError, match="estrictamente creciente"):
        space.rank((2, 1))
    with pytest.raises(ConfigurationError, match="1 <= M <= K"):
        ActionSpace(4, 5)


def test_encode_input_layout():
    """
    Bloques: one-hot de z por canal (-1, 0, 1), acción anterior y agente.
    """
    obs = Observation(np.array([-1, 1], dtype=np.int8), np.array([0, 1], dtype=np.int8))

    first_slot = encode_input(obs, None, agent_id=1, num_actions=2, num_agents=2)
    later_slot = encode_input(obs, 1, agent_id=0, num_actions=2, num_agents=2)

    assert input_dim(2, 2, 2) == 10
    np.testing.assert_array_equal(first_slot, [1, 0, 0, 0, 0, 1, 0, 0, 0, 1])
    np.testing.assert_array_equal(later_slot, [1, 0, 0, 0, 0, 1, 0, 1, 1, 0])


def test_epsilon_schedule_linear_then_constant():
    schedule = EpsilonSchedule(0.4, 0.05, 10000)

    assert schedule.value(0) == pytest.approx(0.4)
    assert schedule.value(5000) == pytest.approx(0.225)
    assert schedule.value(10000) == pytest.approx(0.05)
    assert schedule.value(50000) == pytest.approx(0.05)


def test_select_action_greedy_and_uniform():
    """
    Con ε = 0 se elige el primer máximo; con ε = 1 las acciones son uniformes.
    """
    rng = np.random.default_rng(0)
    q = np.array([1.0, 3.0, 3.0])

    assert greedy_action(q) == 1
    assert select_action(q, 0.0, rng) == 1

    counts = np.bincount([select_action(q, 1.0, rng) for _ in range(3000)], minlength=3)
    np.testing.assert_allclose(counts / 3000, 1 / 3, atol=0.04)

    with pytest.raises(ValueError, match="vacío"):
        select_action(np.array([]), 0.1, rng)


def test_select_action_with_full_exploration_is_uniform():
    """
    Test que verifica que con ε = 1, en 10^5 extracciones sobre 4 acciones,
    cada frecuencia queda en 0.25 ± 0.01.
    """
    rng = np.random.default_rng(11)
    q = np.array([0.0, 5.0, -1.0, 2.0])
    draws = 100_000

    counts = np.bincount([select_action(q, 1.0, rng) for _ in range(draws)], minlength=4)

    np.testing.assert_allclose(counts / draws, 0.25, atol=0.01)


def test_greedy_selection_is_scale_covariant():
    """
    Test que verifica que la acción greedy no cambia con c·q + d (c > 0), ni por
    agente ni en la acción conjunta.
    """
    rng = np.random.default_rng(12)
    for _ in range(200):
        q = rng.normal(size=6)
        c, d = rng.uniform(0.01, 100.0), rng.normal(scale=50.0)
        assert select_action(q, 0.0, rng) == select_action(c * q + d, 0.0, rng)

    qs = [rng.normal(size=5) for _ in range(3)]
    assert greedy_joint_action(qs) == greedy_joint_action([3.0 * q - 7.0 for q in qs])


def _network(rng, input_dim=7, num_actions=3, hidden_dim=5):
    network = DrqnAgentNetwork(input_dim, num_actions, hidden_dim)
    store = network.init_params(ParameterStore(), rng)
    return network, store


def test_forward_sequence_matches_step_by_step():
    """
    Test que verifica que desenrollar un episodio en la cinta da los mismos
    Q-valores que ir slot a slot arrastrando el estado oculto.
    """
    rng = np.random.default_rng(4)
    network, store = _network(rng)
    inputs = rng.normal(size=(4, 3, network.input_dim))

    unrolled = network.forward_sequence(ComputationTape.inference(), store, inputs)

    hidden = network.initial_hidden(3)
    for t in range(4):
        q, hidden = network.step(store, inputs[t], hidden)
        np.testing.assert_allclose(unrolled[t].value, q)


def test_hidden_state_carries_history():
    """
    La misma entrada en el slot 2 da Q-valores distintos si el slot 1 fue distinto.
    """
    rng = np.random.default_rng(5)
    network, store = _network(rng)
    h0 = network.initial_hidden(1)[0]
    x_a, x_b, x_same = rng.normal(size=(3, network.input_dim))

    _, h_a = agent_q_forward(x_a, h0, store, network)
    _, h_b = agent_q_forward(x_b, h0, store, network)
    q_a, _ = agent_q_forward(x_same, h_a, store, network)
    q_b, _ = agent_q_forward(x_same, h_b, store, network)

    assert q_a.shape == (network.num_actions,)
    assert not np.allclose(q_a, q_b)


def test_agent_q_forward_rejects_wrong_input_dim():
    network, store = _network(np.random.default_rng(0))
    with pytest.raises(ConfigurationError, match="se esperaba 7"):
        agent_q_forward(np.zeros(6), np.zeros(5), store, network)
