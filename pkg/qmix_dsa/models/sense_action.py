from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class SenseAction:
    """Acción de un usuario: índice en [0, C(K,M)) y el M-subconjunto de canales (base 0)."""
    index: int
    channels: Tuple[int, ...]

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.channels, self.channels[1:])):
            raise ValueError(f"Subconjunto no estrictamente creciente: {self.channels}")

    @property
    def size(self) -> int:
        return len(self.channels)
