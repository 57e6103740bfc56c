"""
Detector de degradación súbita del rendimiento (p. ej. tras un cambio del
entorno): la media móvil de la tasa de éxito cae por debajo de una fracción
de su máximo histórico.
"""
import logging
from collections import deque
from typing import Iterable, Optional

import numpy as np

from ..errors import ConfigurationError

logger = logging.getLogger(__name__)


def detect_degradation(success_rates: Iterable[float], window: int = 20, ratio: float = 0.6) -> bool:
    """
    True si la media de la última ventana completa es menor que ``ratio``
    veces el máximo de las medias de todas las ventanas completas anteriores.
    """
    rates = np.asarray(list(success_rates), dtype=np.float64)
    if rates.size < window:
        return False
    means = np.convolve(rates, np.ones(window) / window, mode="valid")
    running_max = np.maximum.accumulate(means)
    return bool(means[-1] < ratio * running_max[-1])


class DegradationDetector:
    """
    Versión incremental de ``detect_degradation``. Solo cuenta episodios
    mientras está armado (ε ya en su valor final); ``reset`` vacía la historia.
    """

    def __init__(self, window: int = 20, ratio: float = 0.6):
        if window < 1 or not 0.0 < ratio < 1.0:
            raise ConfigurationError(f"Detector inválido: window={window}, ratio={ratio}")
        self.window = int(window)
        self.ratio = float(ratio)
        self.history: deque = deque(maxlen=self.window)
        self.running_max: Optional[float] = None

    def update(self, success_rate: float, armed: bool = True) -> bool:
        if not armed:
            return False
        self.history.append(float(success_rate))
        if len(self.history) < self.window:
            return False
        mean = float(np.mean(self.history))
        self.running_max = mean if self.running_max is None else max(self.running_max, mean)
        if mean < self.ratio * self.running_max:
            logger.warning(f"Degradación detectada: media {mean:.3f} < {self.ratio} × máximo {self.running_max:.3f}")
            return True
        return False

    def reset(self):
        self.history.clear()
        self.running_max = None

    def state(self) -> dict:
        return {"history": list(self.history), "running_max": self.running_max}

    def restore(self, state: dict):
        self.history = deque(state.get("history", []), maxlen=self.window)
        self.running_max = state.get("running_max")
