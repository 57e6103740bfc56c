"""
Aprendices independientes (IQL): una DRQN por agente entrenada con su propia
recompensa r^n, sin red de mezcla ni recompensa compartida.
"""
from typing import List

import numpy as np

from ..agents.drqn import DrqnAgentNetwork
from ..models.episode_record import EpisodeBatch
from ..ndmath import ops
from ..ndmath.tape import ComputationTape, Node
from ..ndmath.tensor import ParameterStore
from .recurrent_learner import AgentGroup, RecurrentLearner


def iql_targets(learner: "IqlLearner", batch: EpisodeBatch, target_params: ParameterStore) -> np.ndarray:
    """y_t^n = r_t^n + γ · max_a Q^n⁻(τ_{t+1}, a) para t < T-1; y_{T-1}^n = r_{T-1}^n. Forma (B, T, N)."""
    targets = batch.rewards.astype(np.float64)
    T = batch.num_slots
    if T > 1:
        q = learner.sequence_q_values(target_params, batch)   # (T, B, N, A)
        targets[:, :T - 1] += learner.config.gamma * q[1:].max(axis=-1).transpose(1, 0, 2)
    return targets


def iql_loss(learner: "IqlLearner", tape: ComputationTape, batch: EpisodeBatch,
             params: ParameterStore, target_params: ParameterStore) -> Node:
    """Suma sobre agentes de la media (B·T) del error TD de cada uno."""
    targets = iql_targets(learner, batch, target_params)
    B, T = batch.batch_size, batch.num_slots
    residuals = []
    for agents, q_nodes in learner.unroll(tape, params, learner.episode_inputs(batch)):
        for t, q_t in enumerate(q_nodes):
            chosen = ops.pick(q_t, batch.actions[:, t][:, agents].reshape(-1))
            y = targets[:, t][:, agents].reshape(-1)
            residuals.append(ops.total(ops.square(ops.sub(chosen, tape.constant(y)))))
    return ops.scale(ops.add_n(residuals), 1.0 / (B * T))


class IqlLearner(RecurrentLearner):
    name = "iql"

    def _build_groups(self) -> List[AgentGroup]:
        return [(DrqnAgentNetwork(self.input_dim, self.num_actions, self.config.agent_hidden_dim, prefix=f"agent{n}"),
                 np.array([n]))
                for n in range(self.num_agents)]

    def loss(self, tape: ComputationTape, batch: EpisodeBatch) -> Node:
        return iql_loss(self, tape, batch, self.params, self.target_params)
