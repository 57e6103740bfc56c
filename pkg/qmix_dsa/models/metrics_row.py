from dataclasses import asdict, dataclass, fields
from typing import Any, Dict

import numpy as np

PHASE_TRAIN = "train"
PHASE_EVAL = "eval"


@dataclass
class MetricsRow:
    """Una fila del CSV de métricas: un episodio recogido (entrenamiento o evaluación)."""
    epoch: int
    episode: int
    successes: int
    collisions: int
    silent: int
    total_reward: int
    success_rate: float
    oracle_bound: int
    epsilon: float
    mean_loss: float = float("nan")
    phase: str = PHASE_TRAIN
    resets: int = 0

    @classmethod
    def header(cls) -> list:
        return [f.name for f in fields(cls)]

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MetricsRow":
        """Convierte una fila de texto (p. ej. de csv.DictReader) a sus tipos."""
        kwargs = {}
        for f in fields(cls):
            raw = data[f.name]
            if f.type in (int, "int"):
                kwargs[f.name] = int(raw)
            elif f.type in (float, "float"):
                kwargs[f.name] = float(raw)
            else:
                kwargs[f.name] = str(raw)
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_csv_values(self) -> list:
        """Valores formateados de forma estable (repr de float) para que el CSV sea reproducible."""
        out = []
        for name in self.header():
            value = getattr(self, name)
            out.append(repr(float(value)) if isinstance(value, float) else str(value))
        return out

    def accounting_ok(self, num_users: int, num_slots: int) -> bool:
        """éxitos + colisiones + silencios = N·T y éxitos <= cota del oráculo."""
        return (self.successes + self.collisions + self.silent == num_users * num_slots
                and self.successes <= self.oracle_bound
                and (np.isnan(self.success_rate) or 0.0 <= self.success_rate <= 1.0))
