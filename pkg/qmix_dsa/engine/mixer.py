"""
Red de mezcla monótona de QMIX.

Las hiperredes reciben el estado global s (ocupación real de los K canales) y
generan los pesos de la red de mezcla:

    W1 = |hyper_w1(s)|   (N × E)   hyper_w1: Linear(K→H) → ReLU → Linear(H→N·E)
    b1 =  hyper_b1(s)    (E)       lineal
    W2 = |hyper_w2(s)|   (E)       hyper_w2: Linear(K→H) → ReLU → Linear(H→E)
    b2 =  hyper_b2(s)    (escalar) hyper_b2: Linear(K→H) → ReLU → Linear(H→1)

    Q_tot = W2ᵀ · elu(W1ᵀ · q + b1) + b2

El valor absoluto hace ∂Q_tot/∂q_n >= 0 para todo estado.
"""
from typing import Sequence, Tuple

import numpy as np

from ..errors import ConfigurationError
from ..ndmath import ops
from ..ndmath.layers import dense, init_dense
from ..ndmath.tape import ComputationTape, Node
from ..ndmath.tensor import ParameterStore


class MixingNetwork:

    def __init__(self, num_agents: int, state_dim: int, mixing_hidden_dim: int = 32,
                 hypernet_hidden_dim: int = 32, prefix: str = "mixer"):
        if min(num_agents, state_dim, mixing_hidden_dim, hypernet_hidden_dim) < 1:
            raise ConfigurationError("Dimensiones de la red de mezcla deben ser >= 1")
        self.num_agents = int(num_agents)
        self.state_dim = int(state_dim)
        self.embed_dim = int(mixing_hidden_dim)
        self.hyper_dim = int(hypernet_hidden_dim)
        self.prefix = prefix

    def init_params(self, store: ParameterStore, rng: np.random.Generator) -> ParameterStore:
        p, K, H, E = self.prefix, self.state_dim, self.hyper_dim, self.embed_dim
        init_dense(store, f"{p}.hyper_w1.0", K, H, rng)
        init_dense(store, f"{p}.hyper_w1.1", H, self.num_agents * E, rng)
        init_dense(store, f"{p}.hyper_b1", K, E, rng)
        init_dense(store, f"{p}.hyper_w2.0", K, H, rng)
        init_dense(store, f"{p}.hyper_w2.1", H, E, rng)
        init_dense(store, f"{p}.hyper_b2.0", K, H, rng)
        init_dense(store, f"{p}.hyper_b2.1", H, 1, rng)
        return store

    def forward(self, tape: ComputationTape, store: ParameterStore, agent_qs: Node, states: Node) -> Node:
        """
        Args:
            agent_qs: (B, N) Q-valores de las acciones elegidas.
            states: (B, K) estados globales.

        Returns:
            nodo (B,) con Q_tot.
        """
        if agent_qs.value.ndim != 2 or agent_qs.value.shape[1] != self.num_agents:
            raise ConfigurationError(
                f"Q-valores de forma {agent_qs.value.shape}, se esperaba (B, {self.num_agents})")
        if states.value.shape != (agent_qs.value.shape[0], self.state_dim):
            raise ConfigurationError(
                f"Estados de forma {states.value.shape}, se esperaba ({agent_qs.value.shape[0]}, {self.state_dim})")
        batch = agent_qs.value.shape[0]

        def lin(name: str, x: Node) -> Node:
            return dense(x, tape.param(store[f"{self.prefix}.{name}.W"]), tape.param(store[f"{self.prefix}.{name}.b"]))

        def two_layer(name: str) -> Node:
            return lin(f"{name}.1", ops.activate("relu", lin(f"{name}.0", states)))

        w1 = ops.reshape(ops.absolute(two_layer("hyper_w1")), (batch, self.num_agents, self.embed_dim))
        b1 = lin("hyper_b1", states)
        hidden = ops.activate("elu", ops.add(ops.weighted_sum(agent_qs, w1), b1))
        w2 = ops.reshape(ops.absolute(two_layer("hyper_w2")), (batch, self.embed_dim, 1))
        b2 = two_layer("hyper_b2")
        q_tot = ops.add(ops.weighted_sum(hidden, w2), b2)
        return ops.reshape(q_tot, (batch,))

    def mixing_weights(self, store: ParameterStore, states: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """(W1, W2) generados para un lote de estados, ya con valor absoluto."""
        states = np.atleast_2d(np.asarray(states, dtype=np.float64))
        tape = ComputationTape.inference()
        lin = lambda name, x: dense(x, tape.param(store[f"{self.prefix}.{name}.W"]),
                                    tape.param(store[f"{self.prefix}.{name}.b"]))
        s = tape.constant(states)
        w1 = ops.absolute(lin("hyper_w1.1", ops.activate("relu", lin("hyper_w1.0", s))))
        w2 = ops.absolute(lin("hyper_w2.1", ops.activate("relu", lin("hyper_w2.0", s))))
        return w1.value.reshape(-1, self.num_agents, self.embed_dim), w2.value


def mix(agent_qs, state, store: ParameterStore, network: MixingNetwork) -> np.ndarray | float:
    """
    Q_tot para un vector de Q-valores (N,) y un estado (K,), o para lotes
    (B, N) y (B, K).
    """
    agent_qs = np.asarray(agent_qs, dtype=np.float64)
    state = np.asarray(state, dtype=np.float64)
    single = agent_qs.ndim == 1
    if agent_qs.shape[-1] != network.num_agents:
        raise ConfigurationError(f"Se esperaban {network.num_agents} Q-valores, recibidos {agent_qs.shape[-1]}")
    if state.shape[-1] != network.state_dim:
        raise ConfigurationError(f"Estado de longitud {state.shape[-1]}, se esperaba {network.state_dim}")
    tape = ComputationTape.inference()
    out = network.forward(tape, store, tape.constant(np.atleast_2d(agent_qs)),
                          tape.constant(np.atleast_2d(state))).value
    return float(out[0]) if single else out


def greedy_joint_action(agent_qs: Sequence[np.ndarray]) -> Tuple[int, ...]:
    """Argmax por agente (desempate por índice más bajo); por monotonía maximiza también Q_tot."""
    sizes = {len(q) for q in agent_qs}
    if len(sizes) > 1:
        raise ConfigurationError(f"Todos los agentes deben tener el mismo número de acciones: {sorted(sizes)}")
    return tuple(int(np.argmax(q)) for q in agent_qs)
