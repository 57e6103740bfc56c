import itertools

import numpy as np
import pytest

from qmix_dsa.engine.mixer import MixingNetwork, greedy_joint_action, mix
from qmix_dsa.errors import ConfigurationError
from qmix_dsa.ndmath.tensor import ParameterStore


def _mixer(num_agents=3, state_dim=4, seed=0):
    network = MixingNetwork(num_agents, state_dim, mixing_hidden_dim=8, hypernet_hidden_dim=6)
    store = network.init_params(ParameterStore(), np.random.default_rng(seed))
    return network, store


def test_mixing_is_monotone_in_every_agent_q():
    """
    Test que verifica con 1000 sondas aleatorias que dQ_tot/dq_n >= 0
    (diferencias centrales) para todos los agentes.
    """
    network, store = _mixer()
    rng = np.random.default_rng(1)
    samples = 1000
    qs = rng.normal(scale=3.0, size=(samples, 3))
    states = rng.integers(0, 2, size=(samples, 4))
    h = 1e-5

    for n in range(3):
        step = np.zeros(3)
        step[n] = h
        derivative = (mix(qs + step, states, store, network) - mix(qs - step, states, store, network)) / (2 * h)
        assert derivative.min() >= -1e-9


def test_mixing_weights_are_non_negative():
    network, store = _mixer()
    w1, w2 = network.mixing_weights(store, np.random.default_rng(2).integers(0, 2, size=(20, 4)))

    assert w1.shape == (20, 3, 8)
    assert np.all(w1 >= 0) and np.all(w2 >= 0)


@pytest.mark.parametrize("num_agents,num_actions", [(2, 6), (3, 4), (4, 10)])
def test_decentralised_argmax_equals_joint_argmax(num_agents, num_actions):
    """
    Test que verifica que el argmax por agente coincide con el argmax de Q_tot
    sobre el espacio conjunto completo (fuerza bruta).
    """
    network, store = _mixer(num_agents=num_agents, seed=num_agents)
    rng = np.random.default_rng(num_actions)
    for _ in range(5):
        agent_qs = [rng.normal(size=num_actions) for _ in range(num_agents)]
        state = rng.integers(0, 2, size=4)

        joint = list(itertools.product(range(num_actions), repeat=num_agents))
        chosen = np.array([[agent_qs[n][a] for n, a in enumerate(actions)] for actions in joint])
        q_tot = mix(chosen, np.tile(state, (len(joint), 1)), store, network)

        assert greedy_joint_action(agent_qs) == joint[int(np.argmax(q_tot))]


def test_mix_single_input_returns_float():
    network, store = _mixer()
    value = mix(np.zeros(3), np.ones(4), store, network)

    assert isinstance(value, float)


def test_mix_shape_errors():
    network, store = _mixer()
    with pytest.raises(ConfigurationError, match="Se esperaban 3 Q-valores"):
        mix(np.zeros(2), np.ones(4), store, network)
    with pytest.raises(ConfigurationError, match="se esperaba 4"):
        mix(np.zeros(3), np.ones(5), store, network)
    with pytest.raises(ConfigurationError, match="mismo número de acciones"):
        greedy_joint_action([np.zeros(3), np.zeros(4)])


def test_zero_network_mixes_to_zero():
    network, store = _mixer()
    for p in store:
        p.values[...] = 0.0
    rng = np.random.default_rng(3)

    np.testing.assert_array_equal(mix(rng.normal(size=(10, 3)), rng.integers(0, 2, size=(10, 4)), store, network), 0.0)


def test_raising_one_agent_q_never_lowers_total():
    """
    Test que verifica con 1000 sondas que sumar +1 al Q-valor de un agente no reduce Q_tot.
    """
    network, store = _mixer(seed=5)
    rng = np.random.default_rng(4)
    qs = rng.normal(scale=3.0, size=(1000, 3))
    states = rng.integers(0, 2, size=(1000, 4))
    base = mix(qs, states, store, network)

    for n in range(3):
        raised = qs.copy()
        raised[:, n] += 1.0
        assert np.all(mix(raised, states, store, network) >= base - 1e-12)
