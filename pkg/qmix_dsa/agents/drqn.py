"""
Red DRQN de un agente: dense(entrada→H) + ReLU → GRU(H) → dense(H→C(K,M)).
"""
from typing import List, Tuple

import numpy as np

from ..errors import ConfigurationError
from ..ndmath import ops
from ..ndmath.layers import dense, gru, gru_nodes, init_dense, init_gru
from ..ndmath.tape import ComputationTape, Node
from ..ndmath.tensor import ParameterStore


class DrqnAgentNetwork:
    """
    Describe la arquitectura y el prefijo de nombres de sus parámetros dentro
    de un ParameterStore. La red no guarda pesos: todos viven en el almacén.
    """

    def __init__(self, input_dim: int, num_actions: int, hidden_dim: int = 64, prefix: str = "agent"):
        if min(input_dim, num_actions, hidden_dim) < 1:
            raise ConfigurationError(
                f"Dimensiones de red inválidas: entrada={input_dim}, acciones={num_actions}, oculto={hidden_dim}")
        self.input_dim = int(input_dim)
        self.num_actions = int(num_actions)
        self.hidden_dim = int(hidden_dim)
        self.prefix = prefix

    def init_params(self, store: ParameterStore, rng: np.random.Generator) -> ParameterStore:
        init_dense(store, f"{self.prefix}.fc1", self.input_dim, self.hidden_dim, rng)
        init_gru(store, f"{self.prefix}.gru", self.hidden_dim, self.hidden_dim, rng)
        init_dense(store, f"{self.prefix}.fc2", self.hidden_dim, self.num_actions, rng)
        return store

    def check_params(self, store: ParameterStore):
        W = store[f"{self.prefix}.fc1.W"]
        if W.shape != (self.hidden_dim, self.input_dim):
            raise ConfigurationError(
                f"Parámetros de '{self.prefix}' con forma {W.shape}, se esperaba {(self.hidden_dim, self.input_dim)}")
        head = store[f"{self.prefix}.fc2.W"]
        if head.shape != (self.num_actions, self.hidden_dim):
            raise ConfigurationError(
                f"Cabeza de '{self.prefix}' con {head.shape[0]} acciones, se esperaban {self.num_actions}")

    def initial_hidden(self, rows: int) -> np.ndarray:
        return np.zeros((rows, self.hidden_dim))

    def forward_sequence(self, tape: ComputationTape, store: ParameterStore, inputs: np.ndarray) -> List[Node]:
        """
        Desenrolla la red sobre una secuencia completa.

        Args:
            inputs: (T, filas, D); el estado oculto empieza en cero.

        Returns:
            Lista de T nodos (filas, A) con los Q-valores por slot.
        """
        p = lambda name: tape.param(store[f"{self.prefix}.{name}"])
        x = tape.constant(inputs)
        # La capa de entrada no depende de h: se aplica a toda la secuencia de una vez
        embedded = ops.activate("relu", dense(x, p("fc1.W"), p("fc1.b")))
        gru_params = gru_nodes(tape, store, f"{self.prefix}.gru")
        h = tape.constant(self.initial_hidden(inputs.shape[1]))
        qs = []
        for t in range(inputs.shape[0]):
            h = gru(ops.row(embedded, t), h, gru_params)
            qs.append(dense(h, p("fc2.W"), p("fc2.b")))
        return qs

    def step(self, store: ParameterStore, inputs: np.ndarray, hidden: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Un slot en modo inferencia: (filas, D), (filas, H) -> (Q, h')."""
        tape = ComputationTape.inference()
        p = lambda name: tape.param(store[f"{self.prefix}.{name}"])
        embedded = ops.activate("relu", dense(tape.constant(inputs), p("fc1.W"), p("fc1.b")))
        h = gru(embedded, tape.constant(hidden), gru_nodes(tape, store, f"{self.prefix}.gru"))
        q = dense(h, p("fc2.W"), p("fc2.b"))
        return q.value, h.value


def agent_q_forward(inputs: np.ndarray, hidden: np.ndarray, store: ParameterStore,
                    network: DrqnAgentNetwork) -> Tuple[np.ndarray, np.ndarray]:
    """Q-valores y nuevo estado oculto para una entrada codificada (o un lote de ellas)."""
    single = np.ndim(inputs) == 1
    inputs = np.atleast_2d(inputs)
    hidden = np.atleast_2d(hidden)
    if inputs.shape[-1] != network.input_dim:
        raise ConfigurationError(f"Entrada de dimensión {inputs.shape[-1]}, se esperaba {network.input_dim}")
    network.check_params(store)
    q, h = network.step(store, inputs, hidden)
    return (q[0], h[0]) if single else (q, h)
