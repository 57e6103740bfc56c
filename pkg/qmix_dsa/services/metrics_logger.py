"""
Escritura y lectura del CSV de métricas (UTF-8, una fila por episodio, cabecera
en el orden de los campos de MetricsRow).
"""
import csv
import logging
from pathlib import Path
from typing import Iterable, List

from ..errors import DataError
from ..models.metrics_row import MetricsRow

logger = logging.getLogger(__name__)


class MetricsLogger:
    """Añade filas al CSV de métricas, vaciando a disco tras cada bloque."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.rows_written = 0

    def start(self, keep_rows: Iterable[MetricsRow] = ()):
        """Crea el fichero con la cabecera (y, al reanudar, las filas ya registradas)."""
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "w", encoding="utf-8", newline="") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(MetricsRow.header())
                for row in keep_rows:
                    writer.writerow(row.to_csv_values())
                    self.rows_written += 1
            self.partial_marker.unlink(missing_ok=True)
        except OSError as e:
            raise DataError(f"No se pudo crear el fichero de métricas '{self.path}': {e}")

    @property
    def partial_marker(self) -> Path:
        return self.path.with_name(self.path.name + ".partial")

    def append(self, rows: Iterable[MetricsRow]):
        try:
            with open(self.path, "a", encoding="utf-8", newline="") as f:
                writer = csv.writer(f, lineterminator="\n")
                for row in rows:
                    writer.writerow(row.to_csv_values())
                    self.rows_written += 1
        except OSError as e:
            raise DataError(f"No se pudo escribir en el fichero de métricas '{self.path}': {e}")

    def mark_partial(self, reason: str) -> Path:
        """Deja junto al CSV un marcador ``<metrics>.partial`` con el motivo de la interrupción."""
        marker = self.partial_marker
        try:
            marker.write_text(f"{reason}\n", encoding="utf-8")
        except OSError as e:
            logger.error(f"No se pudo escribir el marcador de salida parcial: {e}")
        return marker


def read_metrics(path: str | Path) -> List[MetricsRow]:
    """
    Lee un CSV de métricas.

    Raises:
        DataError: fichero ilegible o fila mal formada (``row`` = nº de línea, base 1).
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise DataError(f"No se pudo leer el fichero de métricas '{path}': {e}")

    reader = csv.reader(text.splitlines())
    header = next(reader, None)
    if header != MetricsRow.header():
        raise DataError(f"Cabecera inválida en '{path}' (línea 1): {header}", row=1)
    rows = []
    for values in reader:
        line = reader.line_num
        if not values:
            continue
        if len(values) != len(header):
            raise DataError(f"Línea {line} de '{path}': {len(values)} columnas, se esperaban {len(header)}",
                            row=line)
        try:
            rows.append(MetricsRow.from_dict(dict(zip(header, values))))
        except ValueError as e:
            raise DataError(f"Línea {line} de '{path}': valor inválido ({e})", row=line)
    return rows
