"""
QMIX: una red DRQN compartida por todos los agentes (con identidad one-hot
en la entrada) y la red de mezcla monótona condicionada al estado global.
Solo la red de agente se usa al actuar; la mezcla solo existe en el
entrenamiento.
"""
from typing import List

import numpy as np

from ..agents.drqn import DrqnAgentNetwork
from ..models.episode_record import EpisodeBatch
from ..ndmath import ops
from ..ndmath.tape import ComputationTape, Node
from ..ndmath.tensor import ParameterStore
from .mixer import MixingNetwork
from .recurrent_learner import AgentGroup, RecurrentLearner


def td_targets(learner: "QmixLearner", batch: EpisodeBatch, target_params: ParameterStore) -> np.ndarray:
    """
    Objetivos y_t (B, T) bajo θ⁻:
      y_t     = r_t^tot + γ · Q_tot⁻(s_{t+1}, â_{t+1})   para t < T-1
      y_{T-1} = r_{T-1}^tot                              (último slot, sin bootstrap)
    donde â es la acción greedy de cada red de agente objetivo.
    """
    T, B = batch.num_slots, batch.batch_size
    targets = batch.total_rewards.copy()
    if T == 1:
        return targets
    q = learner.sequence_q_values(target_params, batch)           # (T, B, N, A)
    best = q[1:].max(axis=-1)                                     # (T-1, B, N)
    states = batch.states[:, 1:T].transpose(1, 0, 2).reshape((T - 1) * B, -1)
    tape = ComputationTape.inference()
    q_next = learner.mixer.forward(tape, target_params, tape.constant(best.reshape((T - 1) * B, -1)),
                                   tape.constant(states)).value.reshape(T - 1, B)
    targets[:, :T - 1] += learner.config.gamma * q_next.T
    return targets


def chosen_q_tot(learner: "QmixLearner", tape: ComputationTape, store: ParameterStore,
                 batch: EpisodeBatch) -> List[Node]:
    """Q_tot bajo θ de las acciones realmente tomadas, un nodo (B,) por slot."""
    B, N = batch.batch_size, batch.num_agents
    (_, q_nodes), = learner.unroll(tape, store, learner.episode_inputs(batch))
    out = []
    for t, q_t in enumerate(q_nodes):
        chosen = ops.reshape(ops.pick(q_t, batch.actions[:, t].reshape(B * N)), (B, N))
        out.append(learner.mixer.forward(tape, store, chosen, tape.constant(batch.states[:, t])))
    return out


def qmix_loss(learner: "QmixLearner", tape: ComputationTape, batch: EpisodeBatch,
              params: ParameterStore, target_params: ParameterStore) -> Node:
    """L(θ) = 1/(B·T) · Σ_b Σ_t (y_t − Q_tot(τ_t, a_t))²"""
    targets = td_targets(learner, batch, target_params)
    residuals = [ops.total(ops.square(ops.sub(q_tot, tape.constant(targets[:, t]))))
                 for t, q_tot in enumerate(chosen_q_tot(learner, tape, params, batch))]
    return ops.scale(ops.add_n(residuals), 1.0 / (batch.batch_size * batch.num_slots))


class QmixLearner(RecurrentLearner):
    name = "qmix"

    def _build_groups(self) -> List[AgentGroup]:
        self.mixer = MixingNetwork(self.num_agents, self.config.num_channels,
                                   self.config.mixing_hidden_dim, self.config.hypernet_hidden_dim)
        network = DrqnAgentNetwork(self.input_dim, self.num_actions, self.config.agent_hidden_dim, prefix="agent")
        return [(network, np.arange(self.num_agents))]

    @property
    def agent_network(self) -> DrqnAgentNetwork:
        return self.groups[0][0]

    def _init_extra_params(self, store, rng):
        self.mixer.init_params(store, rng)

    def loss(self, tape: ComputationTape, batch: EpisodeBatch) -> Node:
        return qmix_loss(self, tape, batch, self.params, self.target_params)

    def get_info(self) -> dict:
        info = super().get_info()
        info.update({'mixing_hidden_dim': self.mixer.embed_dim, 'hypernet_hidden_dim': self.mixer.hyper_dim})
        return info
