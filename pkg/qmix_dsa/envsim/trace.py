"""
Canales a partir de una traza real.

Formato CSV canónico (UTF-8, LF, sin comillas):
    slot,ch1,ch2,...,chK
    0,1,0,...,1
con 1 = idle y 0 = busy. Las filas de datos se numeran desde 1.
"""
import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import DataError
from .channel_interface import ChannelModel


@dataclass
class TraceTable:
    """Matriz {0,1} de slots × canales y un cursor a la fila actual."""
    matrix: np.ndarray
    cursor: int = 0

    @property
    def num_slots(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def num_channels(self) -> int:
        return int(self.matrix.shape[1])


def load_trace(path, num_channels: int, min_slots: int = 1) -> TraceTable:
    """
    Lee y valida una traza CSV.

    Args:
        path: fichero CSV.
        num_channels: K.
        min_slots: filas mínimas exigidas (un episodio de T slots).

    Raises:
        DataError: fichero inexistente, cabecera o número de columnas
            incorrecto, valor no binario (con el número de fila) o traza
            más corta que ``min_slots``.
    """
    path = Path(path)
    rows = []
    try:
        with open(path, 'r', encoding='utf-8', newline='') as f:
            reader = csv.reader(f)
            header = next(reader, None)
            expected = ["slot"] + [f"ch{k}" for k in range(1, num_channels + 1)]
            if header is None:
                raise DataError(f"Traza vacía: '{path}'", row=0)
            if [h.strip() for h in header] != expected:
                raise DataError(
                    f"Cabecera inválida en '{path}': se esperaban {num_channels} canales ({','.join(expected)})", row=0)
            for row_number, fields in enumerate(reader, start=1):
                if len(fields) != num_channels + 1:
                    raise DataError(
                        f"Fila {row_number}: {len(fields)} columnas, se esperaban {num_channels + 1}", row=row_number)
                values = []
                for field in fields[1:]:
                    field = field.strip()
                    if field not in ("0", "1"):
                        raise DataError(f"Fila {row_number}: valor no binario '{field}'", row=row_number)
                    values.append(int(field))
                rows.append(values)
    except FileNotFoundError:
        raise DataError(f"Fichero de traza no encontrado: '{path}'")
    except (UnicodeDecodeError, csv.Error) as e:
        raise DataError(f"Traza ilegible '{path}': {e}")

    if not rows:
        raise DataError(f"La traza '{path}' no contiene filas de datos.")
    if len(rows) < min_slots:
        raise DataError(f"La traza '{path}' tiene {len(rows)} filas, se requieren al menos {min_slots}.",
                        row=len(rows))
    return TraceTable(np.array(rows, dtype=np.int8))


def write_trace(path, table: TraceTable):
    """Escribe la traza en el formato canónico."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(["slot"] + [f"ch{k}" for k in range(1, table.num_channels + 1)])
        for slot, values in enumerate(table.matrix):
            writer.writerow([slot] + [int(v) for v in values])


class TraceChannelModel(ChannelModel):
    """Reproduce la traza fila a fila. Agotarla es un error de datos salvo con ``wrap``."""
    kind = "trace"

    def __init__(self, table: TraceTable, wrap: bool = False):
        super().__init__(table.num_channels)
        self.table = table
        self.wrap = wrap

    def expected_idle(self) -> float:
        return float(self.table.matrix.sum(axis=1).mean())

    def initial_state(self, rng: np.random.Generator) -> np.ndarray:
        return self.table.matrix[self.table.cursor].copy()

    def step(self, state: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        nxt = self.table.cursor + 1
        if nxt >= self.table.num_slots:
            if not self.wrap:
                raise DataError(f"Traza agotada tras {self.table.num_slots} slots.", row=self.table.num_slots)
            self.logger.debug("Traza agotada, volviendo a la fila 0.")
            nxt = 0
        self.table.cursor = nxt
        return self.table.matrix[nxt].copy()

    def runtime_state(self) -> dict:
        return {"cursor": self.table.cursor}

    def restore_runtime_state(self, state: dict):
        self.table.cursor = int(state.get("cursor", 0))

    def get_info(self) -> dict:
        info = super().get_info()
        info.update({'num_slots': self.table.num_slots, 'wrap': self.wrap})
        return info
