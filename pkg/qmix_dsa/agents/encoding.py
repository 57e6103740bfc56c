"""
Codificación de la entrada de la red de un agente.

Bloques, en este orden:
  - observación: 3 entradas one-hot por canal, para z = -1, 0, 1 (3K)
  - acción anterior: one-hot sobre C(K,M), todo ceros en el slot 1
  - identidad del agente: one-hot sobre N
"""
import numpy as np

from ..models.observation import Observation
from ..models.sense_action import SenseAction

NO_ACTION = -1


def input_dim(num_channels: int, num_actions: int, num_agents: int) -> int:
    return 3 * num_channels + num_actions + num_agents


def encode_batch(obs_values: np.ndarray, prev_actions: np.ndarray, agent_ids: np.ndarray,
                 num_actions: int, num_agents: int) -> np.ndarray:
    """
    Versión vectorizada.

    Args:
        obs_values: (..., K) con valores en {-1, 0, 1}.
        prev_actions: (...) índices de acción, NO_ACTION si no hay.
        agent_ids: (...) identidades en [0, N).

    Returns:
        array (..., 3K + A + N) en float64.
    """
    obs_values = np.asarray(obs_values, dtype=np.int64)
    prev_actions = np.asarray(prev_actions, dtype=np.int64)
    agent_ids = np.asarray(agent_ids, dtype=np.int64)
    lead = obs_values.shape[:-1]
    num_channels = obs_values.shape[-1]
    out = np.zeros(lead + (input_dim(num_channels, num_actions, num_agents),), dtype=np.float64)

    flat = out.reshape(-1, out.shape[-1])
    rows = np.arange(flat.shape[0])
    obs_flat = obs_values.reshape(-1, num_channels)
    for k in range(num_channels):
        flat[rows, 3 * k + obs_flat[:, k] + 1] = 1.0

    actions_flat = np.broadcast_to(prev_actions, lead).reshape(-1)
    has_action = actions_flat != NO_ACTION
    flat[rows[has_action], 3 * num_channels + actions_flat[has_action]] = 1.0

    ids_flat = np.broadcast_to(agent_ids, lead).reshape(-1)
    flat[rows, 3 * num_channels + num_actions + ids_flat] = 1.0
    return out


def encode_input(obs: Observation, last_action: SenseAction | int | None, agent_id: int,
                 num_actions: int, num_agents: int) -> np.ndarray:
    """Entrada de un único agente en un slot."""
    if last_action is None:
        action = NO_ACTION
    else:
        action = last_action.index if isinstance(last_action, SenseAction) else int(last_action)
    return encode_batch(obs.values[np.newaxis, :], np.array([action]), np.array([agent_id]),
                        num_actions, num_agents)[0]
