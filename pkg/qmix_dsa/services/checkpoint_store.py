"""
Persistencia de checkpoints.

Formato:
    línea 1:  "QMIXDSA-CKPT v1"
    línea 2:  cabecera JSON (claves ordenadas): config, contadores, estado de
              ejecución y tabla de arrays [{name, shape, dtype}]
    resto:    los arrays en el orden de la tabla, little-endian binary64
"""
import json
import logging
import os
from pathlib import Path

import numpy as np

from ..errors import DataError
from ..models.checkpoint import CHECKPOINT_MAGIC, CHECKPOINT_VERSION, Checkpoint

logger = logging.getLogger(__name__)

_WIRE_DTYPE = np.dtype("<f8")


def encode_checkpoint(checkpoint: Checkpoint) -> bytes:
    table = []
    payload = []
    for name, array in checkpoint.arrays.items():
        array = np.asarray(array)
        table.append({"name": name, "shape": list(array.shape), "dtype": array.dtype.str})
        payload.append(np.ascontiguousarray(array, dtype=_WIRE_DTYPE).tobytes())
    header = {
        "config": checkpoint.config,
        "counters": checkpoint.counters,
        "runtime": checkpoint.runtime,
        "arrays": table,
    }
    text = f"{checkpoint.tag}\n{json.dumps(header, sort_keys=True, allow_nan=True)}\n"
    return text.encode("utf-8") + b"".join(payload)


def decode_checkpoint(data: bytes, source: str = "<bytes>") -> Checkpoint:
    first = data.find(b"\n")
    second = data.find(b"\n", first + 1) if first >= 0 else -1
    if first < 0 or second < 0:
        raise DataError(f"Checkpoint '{source}' corrupto: cabecera incompleta.")

    tag = data[:first].decode("utf-8", errors="replace").strip()
    magic, _, version = tag.partition(" v")
    if magic != CHECKPOINT_MAGIC:
        raise DataError(f"'{source}' no es un checkpoint (etiqueta '{tag}').")
    if version != str(CHECKPOINT_VERSION):
        raise DataError(f"Versión de checkpoint no soportada en '{source}': v{version} "
                        f"(se esperaba v{CHECKPOINT_VERSION}).")
    try:
        header = json.loads(data[first + 1:second].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise DataError(f"Checkpoint '{source}' corrupto: cabecera ilegible ({e}).")

    if not isinstance(header, dict):
        raise DataError(f"Checkpoint '{source}' corrupto: la cabecera no es un objeto JSON.")

    payload = memoryview(data)[second + 1:]
    try:
        arrays = _decode_arrays(header.get("arrays", []), payload, source)
        counters = {k: int(v) for k, v in header.get("counters", {}).items()}
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise DataError(f"Checkpoint '{source}' corrupto: entrada de cabecera inválida ({e!r}).")

    return Checkpoint(config=header.get("config", {}), arrays=arrays, counters=counters,
                      runtime=header.get("runtime", {}), version=CHECKPOINT_VERSION)


def _decode_arrays(entries, payload: memoryview, source: str) -> dict:
    arrays = {}
    offset = 0
    for entry in entries:
        name, shape = entry["name"], tuple(int(d) for d in entry["shape"])
        if any(d < 0 for d in shape):
            raise DataError(f"Forma inválida para el array '{name}' en '{source}': {shape}")
        nbytes = int(np.prod(shape, dtype=np.int64)) * _WIRE_DTYPE.itemsize
        if offset + nbytes > len(payload):
            raise DataError(f"Checkpoint '{source}' truncado en el array '{name}'.")
        values = np.frombuffer(payload[offset:offset + nbytes], dtype=_WIRE_DTYPE).reshape(shape)
        arrays[name] = values.astype(np.dtype(entry.get("dtype", "<f8")))
        offset += nbytes
    if offset != len(payload):
        raise DataError(f"Checkpoint '{source}' con {len(payload) - offset} bytes sobrantes.")
    return arrays


def save_checkpoint(path: str | Path, checkpoint: Checkpoint) -> Path:
    """Escribe el checkpoint de forma atómica (fichero temporal + rename)."""
    path = Path(path)
    data = encode_checkpoint(checkpoint)
    tmp = path.with_name(path.name + ".tmp")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(tmp, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except OSError as e:
        raise DataError(f"No se pudo escribir el checkpoint '{path}': {e}")
    logger.info(f"Checkpoint guardado en {path} ({len(checkpoint.arrays)} arrays, {len(data)} bytes)")
    return path


def load_checkpoint(path: str | Path) -> Checkpoint:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise DataError(f"No se pudo leer el checkpoint '{path}': {e}")
    checkpoint = decode_checkpoint(data, str(path))
    logger.info(f"Checkpoint cargado desde {path} ({len(checkpoint.arrays)} arrays)")
    return checkpoint
