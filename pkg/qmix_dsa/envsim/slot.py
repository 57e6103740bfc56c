"""
Sensado, resolución de un slot (LBT + colisiones) y recompensas.

Recompensa por usuario: 0 si no transmite, +2 si transmite sin colisión,
-1 si colisiona. Con sensado perfecto nunca se transmite en un canal busy.
"""
from typing import Iterable, Sequence

import numpy as np

from ..errors import UsageError
from ..models.observation import UNSENSED, Observation, SlotOutcome

REWARD_SUCCESS = 2
REWARD_COLLISION = -1
REWARD_SILENT = 0


def _channels_of(sense) -> tuple:
    return tuple(int(k) for k in getattr(sense, "channels", sense))


def observe(state: np.ndarray, sense) -> Observation:
    """z_k = s_k en los canales sensados, -1 en el resto."""
    state = np.asarray(state, dtype=np.int8)
    channels = _channels_of(sense)
    num_channels = state.shape[0]
    if not channels or any(k < 0 or k >= num_channels for k in channels):
        raise UsageError(f"Conjunto de sensado fuera de rango [0, {num_channels}): {channels}")
    if len(set(channels)) != len(channels):
        raise UsageError(f"Conjunto de sensado con canales repetidos: {channels}")
    values = np.full(num_channels, UNSENSED, dtype=np.int8)
    sensed = np.zeros(num_channels, dtype=np.int8)
    idx = list(channels)
    values[idx] = state[idx]
    sensed[idx] = 1
    return Observation(values, sensed)


def check_joint_sense(joint_sense: Sequence, num_channels: int, num_sensed: int | None = None) -> list:
    """
    Valida los conjuntos de sensado de todos los usuarios: mismo tamaño (M si
    se indica), canales en rango y sin repetidos.

    Raises:
        UsageError: con el primer conjunto inválido.
    """
    senses = [_channels_of(s) for s in joint_sense]
    sizes = {len(s) for s in senses}
    if len(sizes) > 1:
        raise UsageError(f"Todos los usuarios deben sensar M canales; tamaños recibidos: {sorted(sizes)}")
    if num_sensed is not None and sizes and sizes != {num_sensed}:
        raise UsageError(f"Se esperaban M={num_sensed} canales sensados por usuario, recibidos {sizes.pop()}")
    for channels in senses:
        if not channels or any(k < 0 or k >= num_channels for k in channels):
            raise UsageError(f"Conjunto de sensado fuera de rango [0, {num_channels}): {channels}")
        if len(set(channels)) != len(channels):
            raise UsageError(f"Conjunto de sensado con canales repetidos: {channels}")
    return senses


def resolve_slot(state: np.ndarray, joint_sense: Sequence, rng: np.random.Generator,
                 num_sensed: int | None = None) -> SlotOutcome:
    """
    Cada usuario con algún canal sensado idle transmite en uno de ellos,
    elegido al azar; el resto queda en silencio. Los conjuntos de sensado se
    validan antes de consumir ``rng``.
    """
    state = np.asarray(state, dtype=np.int8)
    senses = check_joint_sense(joint_sense, state.shape[0], num_sensed)

    transmit = []
    for channels in senses:
        idle = [k for k in channels if state[k] == 1]
        transmit.append(idle[int(rng.integers(len(idle)))] if idle else None)

    counts = np.zeros(state.shape[0], dtype=np.int64)
    for ch in transmit:
        if ch is not None:
            counts[ch] += 1

    rewards = np.array(
        [REWARD_SILENT if ch is None else (REWARD_SUCCESS if counts[ch] == 1 else REWARD_COLLISION)
         for ch in transmit], dtype=np.int64)
    return SlotOutcome(transmit, rewards, counts)


def total_reward(outcome: SlotOutcome) -> int:
    return int(outcome.rewards.sum())


def idle_count(states: Iterable[np.ndarray]) -> np.ndarray:
    return np.array([int(np.sum(s)) for s in states], dtype=np.int64)
