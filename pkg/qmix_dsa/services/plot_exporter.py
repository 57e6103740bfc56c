"""
Exportación de curvas de aprendizaje a SVG a partir del CSV de métricas.
"""
import logging
from pathlib import Path
from typing import List

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ..errors import DataError  # noqa: E402
from ..models.metrics_row import PHASE_EVAL, PHASE_TRAIN, MetricsRow  # noqa: E402
from .metrics_logger import read_metrics  # noqa: E402

logger = logging.getLogger(__name__)

# SVG reproducible: ids fijos, sin fecha y sin simplificar trazos
_SVG_RC = {
    "svg.hashsalt": "qmix-dsa",
    "svg.fonttype": "none",
    "path.simplify": False,
}


def moving_average(values: np.ndarray, window: int) -> np.ndarray:
    """Media móvil hacia atrás; las primeras posiciones usan las muestras disponibles."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        return values
    cumsum = np.concatenate([[0.0], np.cumsum(values)])
    idx = np.arange(1, values.size + 1)
    start = np.maximum(idx - window, 0)
    return (cumsum[idx] - cumsum[start]) / (idx - start)


def epoch_positions(rows: List[MetricsRow]) -> np.ndarray:
    """Eje x en épocas fraccionarias: el episodio k de n de la época e va en e-1 + (k+1)/n."""
    epochs = np.array([r.epoch for r in rows], dtype=np.float64)
    positions = np.empty_like(epochs)
    for epoch in np.unique(epochs):
        idx = np.flatnonzero(epochs == epoch)
        positions[idx] = epoch - 1 + (np.arange(idx.size) + 1) / idx.size
    return positions


def export_plot(metrics_path: str | Path, output_path: str | Path, window: int = 20) -> Path:
    """
    Dibuja éxitos/episodio y colisiones (media móvil) frente a la época, la
    cota del oráculo como referencia horizontal y los bloques de evaluación.
    """
    rows = read_metrics(metrics_path)
    train = [r for r in rows if r.phase == PHASE_TRAIN]
    evals = [r for r in rows if r.phase == PHASE_EVAL]
    output_path = Path(output_path)

    with plt.rc_context(_SVG_RC):
        fig, ax = plt.subplots(figsize=(8, 5))
        try:
            if train:
                x = epoch_positions(train)
                successes = moving_average([r.successes for r in train], window)
                collisions = moving_average([r.collisions for r in train], window)
                ax.plot(x, successes, label="Éxitos / episodio", color="tab:blue", gid="successes")
                ax.plot(x, collisions, label="Colisiones / episodio", color="tab:red", gid="collisions")
                ax.axhline(float(np.mean([r.oracle_bound for r in train])), color="gray", linestyle="--",
                           label="Cota del oráculo", gid="oracle")
            if evals:
                epochs = sorted({r.epoch for r in evals})
                means = [np.mean([r.successes for r in evals if r.epoch == e]) for e in epochs]
                ax.plot(epochs, means, "o", color="tab:green", label="Evaluación greedy", gid="eval")
            ax.set_xlabel("Época")
            ax.set_ylabel("Episodio (T slots)")
            ax.grid(True, alpha=0.3)
            if train or evals:
                ax.legend(loc="lower right")
            fig.tight_layout()
            output_path.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(output_path, format="svg", metadata={"Date": None})
        except OSError as e:
            raise DataError(f"No se pudo escribir el gráfico '{output_path}': {e}")
        finally:
            plt.close(fig)

    logger.info(f"Gráfico exportado a {output_path} ({len(train)} episodios de entrenamiento)")
    return output_path
