"""
Derivación de sub-streams aleatorios a partir de la semilla única del experimento.

Cada fuente de aleatoriedad tiene su propio stream, obtenido como
``default_rng([seed, stream_id])``; así añadir draws en una fuente no
desplaza a las demás.
"""
import numpy as np

CHANNEL_INIT = 0        # parámetros de los modelos de canal (x, y, signos, ...)
CHANNEL_DYNAMICS = 1    # transiciones de estado de los canales
TRANSMIT = 2            # elección del canal de transmisión entre los idle sensados
EXPLORATION = 3         # draws de ε-greedy
WEIGHTS = 4             # inicialización de pesos (y re-inicializaciones)
SAMPLING = 5            # muestreo de batches del replay buffer
EVALUATION = 6          # entornos de evaluación greedy

STREAM_NAMES = {
    CHANNEL_INIT: "channel_init",
    CHANNEL_DYNAMICS: "channel_dynamics",
    TRANSMIT: "transmit",
    EXPLORATION: "exploration",
    WEIGHTS: "weights",
    SAMPLING: "sampling",
    EVALUATION: "evaluation",
}


def make_rng(seed: int, stream: int, *extra: int) -> np.random.Generator:
    """Crea el generador del stream ``stream`` para la semilla ``seed``."""
    return np.random.default_rng([int(seed), int(stream), *[int(e) for e in extra]])


def get_rng_state(rng: np.random.Generator) -> dict:
    """Estado serializable (JSON) de un generador."""
    return rng.bit_generator.state


def set_rng_state(rng: np.random.Generator, state: dict) -> None:
    rng.bit_generator.state = state
