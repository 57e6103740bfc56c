"""
Base común de los learners con agentes DRQN (qmix e iql).

Cada subclase declara sus "grupos de agentes": pares (red, agentes que la
usan). QMIX tiene un único grupo con la red compartida; IQL un grupo por
agente. Actuar, desenrollar episodios y la red objetivo funcionan igual
para ambos.
"""
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..agents.drqn import DrqnAgentNetwork
from ..agents.encoding import encode_batch, input_dim
from ..agents.exploration import select_action
from ..errors import DataError
from ..models.episode_record import EpisodeBatch, EpisodeRecord, stack_episodes
from ..models.experiment_config import ExperimentConfig
from ..ndmath.optim import AdamConfig, AdamOptimizer
from ..ndmath.tape import ComputationTape, Node
from ..ndmath.tensor import ParameterStore
from .learner_interface import LearnerInterface

AgentGroup = Tuple[DrqnAgentNetwork, np.ndarray]


class RecurrentLearner(LearnerInterface):

    def __init__(self, config: ExperimentConfig):
        super().__init__(config)
        self.input_dim = input_dim(config.num_channels, self.num_actions, self.num_agents)
        self.params: ParameterStore = ParameterStore()
        self.target_params: ParameterStore = ParameterStore()
        self.optimizer: Optional[AdamOptimizer] = None
        self.groups: List[AgentGroup] = self._build_groups()

    def _build_groups(self) -> List[AgentGroup]:
        raise NotImplementedError

    def _init_extra_params(self, store: ParameterStore, rng: np.random.Generator):
        """Parámetros adicionales a las redes de agente (la red de mezcla)."""

    def init_params(self, rng: np.random.Generator) -> None:
        store = ParameterStore()
        for network, _ in self.groups:
            network.init_params(store, rng)
        self._init_extra_params(store, rng)
        self.params = store
        self.target_params = store.copy()
        self.optimizer = AdamOptimizer(store, AdamConfig(lr=self.config.learning_rate,
                                                         clip_norm=self.config.grad_clip_norm or None))
        self.train_steps = 0
        self.logger.info(f"Parámetros inicializados: {len(store)} tensores, {store.num_values()} valores")

    def initial_hidden(self) -> np.ndarray:
        return np.zeros((self.num_agents, self.config.agent_hidden_dim))

    def agent_q_values(self, observations: np.ndarray, prev_actions: np.ndarray,
                       hidden: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Q-valores (N, A) y nuevo oculto (N, H) de un slot, con θ."""
        inputs = encode_batch(observations, prev_actions, np.arange(self.num_agents),
                              self.num_actions, self.num_agents)
        q = np.empty((self.num_agents, self.num_actions))
        new_hidden = np.empty_like(hidden)
        for network, agents in self.groups:
            q[agents], new_hidden[agents] = network.step(self.params, inputs[agents], hidden[agents])
        return q, new_hidden

    def act(self, observations, prev_actions, hidden, epsilon, rng):
        q, hidden = self.agent_q_values(np.asarray(observations), np.asarray(prev_actions), hidden)
        actions = np.array([select_action(q[n], epsilon, rng) for n in range(self.num_agents)], dtype=np.int64)
        return actions, hidden

    def episode_inputs(self, batch: EpisodeBatch) -> np.ndarray:
        """(T, B, N, D): entrada de cada agente en cada slot del batch."""
        T, N = batch.num_slots, batch.num_agents
        ids = np.broadcast_to(np.arange(N), (batch.batch_size, T, N))
        inputs = encode_batch(batch.observations[:, :T], batch.previous_actions(), ids,
                              self.num_actions, self.num_agents)
        return inputs.transpose(1, 0, 2, 3)

    def unroll(self, tape: ComputationTape, store: ParameterStore,
               inputs: np.ndarray) -> List[Tuple[np.ndarray, List[Node]]]:
        """
        Desenrolla cada grupo sobre el episodio completo (oculto desde cero).

        Returns:
            por grupo: (agentes, lista de T nodos (B·g, A)), filas en orden (b, agente)
        """
        T, B = inputs.shape[:2]
        out = []
        for network, agents in self.groups:
            x = inputs[:, :, agents].reshape(T, B * len(agents), self.input_dim)
            out.append((agents, network.forward_sequence(tape, store, x)))
        return out

    def sequence_q_values(self, store: ParameterStore, batch: EpisodeBatch) -> np.ndarray:
        """Q-valores (T, B, N, A) de todo el batch en modo inferencia."""
        inputs = self.episode_inputs(batch)
        T, B = inputs.shape[:2]
        q = np.empty((T, B, self.num_agents, self.num_actions))
        for agents, nodes in self.unroll(ComputationTape.inference(), store, inputs):
            for t, node in enumerate(nodes):
                q[t][:, agents] = node.value.reshape(B, len(agents), self.num_actions)
        return q

    def loss(self, tape: ComputationTape, batch: EpisodeBatch) -> Node:
        raise NotImplementedError

    def train_step(self, episodes: Sequence[EpisodeRecord]) -> float:
        batch = stack_episodes(episodes)
        self.params.zero_grad()
        tape = ComputationTape()
        loss = self.loss(tape, batch)
        tape.backward(loss)
        self.optimizer.step()
        self.train_steps += 1
        return float(loss.value)

    def sync_target(self) -> None:
        self.target_params.copy_from(self.params)

    def state_arrays(self) -> Dict[str, np.ndarray]:
        arrays = {f"theta.{k}": v for k, v in self.params.to_arrays().items()}
        arrays.update({f"target.{k}": v for k, v in self.target_params.to_arrays().items()})
        arrays.update(self.optimizer.to_arrays())
        return arrays

    def load_state_arrays(self, arrays, counters) -> None:
        def strip(prefix: str) -> dict:
            return {k[len(prefix):]: v for k, v in arrays.items() if k.startswith(prefix)}

        # Se valida todo antes de escribir en ningún parámetro
        adam_keys = [f"adam.{m}.{name}" for name in self.params.names() for m in ("m", "v")]
        missing = [k for k in adam_keys if k not in arrays]
        if missing:
            raise DataError(f"Falta el array '{missing[0]}' en el checkpoint.")
        for key in adam_keys:
            expected = self.params[key.split(".", 2)[2]].shape
            if tuple(np.shape(arrays[key])) != expected:
                raise DataError(f"Forma incorrecta para '{key}': {np.shape(arrays[key])} (esperado {expected})")
        theta, target = strip("theta."), strip("target.")
        scratch = self.params.copy()
        scratch.load_arrays(theta)
        scratch.load_arrays(target)

        self.params.load_arrays(theta)
        self.target_params.load_arrays(target)
        self.optimizer.load_arrays(arrays, int(counters.get("adam_t", 0)))
        super().load_state_arrays(arrays, counters)

    def counters(self) -> Dict[str, int]:
        return {"train_steps": self.train_steps, "adam_t": self.optimizer.steps_taken()}
