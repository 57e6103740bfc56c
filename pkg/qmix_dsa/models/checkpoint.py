from dataclasses import dataclass, field
from typing import Any, Dict

import numpy as np

CHECKPOINT_MAGIC = "QMIXDSA-CKPT"
CHECKPOINT_VERSION = 1


@dataclass
class Checkpoint:
    """
    Estado completo de un experimento: configuración, arrays con nombre
    (θ, θ⁻, Adam, replay buffer), contadores y estado de ejecución (streams
    aleatorios, entorno, detector) necesario para reanudar de forma exacta.
    """
    config: Dict[str, Any]
    arrays: Dict[str, np.ndarray] = field(default_factory=dict)
    counters: Dict[str, int] = field(default_factory=dict)
    runtime: Dict[str, Any] = field(default_factory=dict)
    version: int = CHECKPOINT_VERSION

    @property
    def tag(self) -> str:
        return f"{CHECKPOINT_MAGIC} v{self.version}"

    def with_prefix(self, prefix: str) -> Dict[str, np.ndarray]:
        return {k: v for k, v in self.arrays.items() if k.startswith(prefix)}
