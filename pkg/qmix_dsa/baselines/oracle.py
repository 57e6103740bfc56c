"""
Cota superior con información completa: en cada slot, con conocimiento del
estado real y libertad para elegir los canales sensados, el máximo de
transmisiones sin colisión es min(N, nº de canales idle).
"""
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..errors import UsageError


@dataclass
class OracleReport:
    idle_counts: np.ndarray
    max_successes: np.ndarray
    num_users: int
    total: int = field(init=False)
    demand_cap: int = field(init=False)

    def __post_init__(self):
        self.total = int(self.max_successes.sum())
        self.demand_cap = self.num_users * int(self.idle_counts.shape[0])

    @property
    def fraction(self) -> float:
        """Cota como tasa de éxito: total / (N·T)."""
        return self.total / self.demand_cap if self.demand_cap else float("nan")

    def to_dict(self) -> dict:
        return {
            "idle_counts": self.idle_counts.tolist(),
            "max_successes": self.max_successes.tolist(),
            "total": self.total,
            "demand_cap": self.demand_cap,
        }


def oracle_upper_bound(states: Iterable[np.ndarray] | np.ndarray, num_users: int) -> OracleReport:
    """
    Args:
        states: secuencia s_1..s_T de vectores de estado (1 = idle).
        num_users: N.
    """
    states = np.asarray(states)
    if states.ndim != 2:
        raise UsageError(f"Se esperaba una secuencia de estados (T, K), recibido {states.shape}")
    if num_users < 1:
        raise UsageError(f"Número de usuarios inválido: {num_users}")
    if not np.isin(states, (0, 1)).all():
        raise UsageError("Los estados deben ser binarios (0 = busy, 1 = idle).")
    idle = states.sum(axis=1).astype(np.int64)
    return OracleReport(idle, np.minimum(idle, num_users), int(num_users))
