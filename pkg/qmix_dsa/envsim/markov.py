"""
Canales independientes con cadena de Markov de dos estados (busy/idle).

Convención: x = p01 = P(busy→idle), y = p10 = P(idle→busy).
"""
import numpy as np

from ..errors import ConfigurationError
from .channel_interface import ChannelModel


class MarkovChannelSet(ChannelModel):
    """K canales, cada uno con su propia matriz P_k = [[1-x, x], [y, 1-y]]."""
    kind = "markov"

    def __init__(self, p_busy_to_idle, p_idle_to_busy):
        x = np.asarray(p_busy_to_idle, dtype=np.float64)
        y = np.asarray(p_idle_to_busy, dtype=np.float64)
        if x.ndim != 1 or x.shape != y.shape:
            raise ConfigurationError("x e y deben ser vectores de la misma longitud.")
        super().__init__(x.shape[0])
        if np.any((x < 0) | (x > 1) | (y < 0) | (y > 1)):
            raise ConfigurationError("Probabilidades de transición fuera de [0, 1].")
        self.x = x
        self.y = y

    @property
    def transition_matrices(self) -> np.ndarray:
        """Array (K, 2, 2) con filas [p00, p01] y [p10, p11]."""
        p = np.empty((self.num_channels, 2, 2))
        p[:, 0, 0] = 1.0 - self.x
        p[:, 0, 1] = self.x
        p[:, 1, 0] = self.y
        p[:, 1, 1] = 1.0 - self.y
        return p

    def stationary_idle(self) -> np.ndarray:
        """Probabilidad estacionaria de idle por canal: x / (x + y)."""
        denom = self.x + self.y
        return np.divide(self.x, denom, out=np.full_like(self.x, 0.5), where=denom > 0)

    def expected_idle(self) -> float:
        return float(self.stationary_idle().sum())

    def initial_state(self, rng: np.random.Generator) -> np.ndarray:
        # Arranque estacionario: sin sesgo de burn-in
        return (rng.random(self.num_channels) < self.stationary_idle()).astype(np.int8)

    def step(self, state: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        u = rng.random(self.num_channels)
        stays_idle = u >= self.y
        becomes_idle = u < self.x
        return np.where(state == 1, stays_idle, becomes_idle).astype(np.int8)

    def get_info(self) -> dict:
        info = super().get_info()
        info.update({'x': self.x.tolist(), 'y': self.y.tolist()})
        return info


def init_markov(num_channels: int, seed, lo: float = 0.05, hi: float = 0.95) -> MarkovChannelSet:
    """
    Genera K canales con x_k, y_k ~ U[lo, hi] independientes.

    Args:
        num_channels: K.
        seed: semilla entera o un numpy Generator ya derivado.
        lo, hi: rango de las probabilidades de conmutación.
    """
    if int(num_channels) <= 0:
        raise ConfigurationError(f"Número de canales inválido: {num_channels}. Debe ser > 0.")
    if not 0.0 < lo < hi < 1.0:
        raise ConfigurationError(f"Rango inválido para x, y: [{lo}, {hi}]. Debe cumplir 0 < lo < hi < 1.")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    x = rng.uniform(lo, hi, size=num_channels)
    y = rng.uniform(lo, hi, size=num_channels)
    return MarkovChannelSet(x, y)
