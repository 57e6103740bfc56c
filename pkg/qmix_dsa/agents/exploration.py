"""
Exploración ε-greedy con decaimiento lineal.
"""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EpsilonSchedule:
    start: float = 0.4
    end: float = 0.05
    decay_steps: int = 10000

    def value(self, step: int) -> float:
        if step >= self.decay_steps:
            return self.end
        fraction = max(step, 0) / self.decay_steps
        return self.start + (self.end - self.start) * fraction


def epsilon(step: int, schedule: EpsilonSchedule) -> float:
    """ε tras ``step`` slots de entorno: interpolación lineal y luego constante."""
    return schedule.value(step)


def greedy_action(q: np.ndarray) -> int:
    # np.argmax devuelve el primer máximo: desempate por índice más bajo
    return int(np.argmax(q))


def select_action(q: np.ndarray, eps: float, rng: np.random.Generator) -> int:
    """Con probabilidad ε una acción uniforme; si no, la greedy."""
    q = np.asarray(q)
    if q.size == 0:
        raise ValueError("Vector de Q-valores vacío.")
    if rng.random() < eps:
        return int(rng.integers(q.size))
    return greedy_action(q)
