import numpy as np
import pytest

from qmix_dsa.engine.gradient_suite import small_config
from qmix_dsa.engine.qmix_learner import QmixLearner
from qmix_dsa.errors import DataError
from qmix_dsa.models.checkpoint import Checkpoint
from qmix_dsa.services.checkpoint_store import decode_checkpoint, encode_checkpoint, load_checkpoint, save_checkpoint


def _learner(seed=0):
    learner = QmixLearner(small_config())
    learner.init_params(np.random.default_rng(seed))
    return learner


def _checkpoint(seed=0):
    learner = _learner(seed)
    arrays = dict(learner.state_arrays())
    arrays["buffer.0.actions"] = np.arange(6, dtype=np.int64).reshape(3, 2)
    return Checkpoint(config=small_config().to_dict(), arrays=arrays,
                      counters={"epoch": 3, **learner.counters()}, runtime={"detector": {"history": [0.5]}})


def test_save_load_save_is_byte_identical(tmp_path):
    """
    Test que verifica que guardar, cargar y volver a guardar produce exactamente los mismos bytes.
    """
    first = save_checkpoint(tmp_path / "a.qckpt", _checkpoint())
    loaded = load_checkpoint(first)
    second = save_checkpoint(tmp_path / "b.qckpt", loaded)

    assert first.read_bytes() == second.read_bytes()
    assert loaded.counters["epoch"] == 3
    assert loaded.arrays["buffer.0.actions"].dtype == np.int64
    np.testing.assert_array_equal(loaded.arrays["buffer.0.actions"], [[0, 1], [2, 3], [4, 5]])


def test_truncated_checkpoint():
    data = encode_checkpoint(_checkpoint())
    with pytest.raises(DataError, match="truncado en el array"):
        decode_checkpoint(data[:-8])


def test_not_a_checkpoint_and_bad_version():
    with pytest.raises(DataError, match="no es un checkpoint"):
        decode_checkpoint(b"HELLO v1\n{}\n")
    with pytest.raises(DataError, match="no soportada"):
        decode_checkpoint(b"QMIXDSA-CKPT v2\n{}\n")
    with pytest.raises(DataError, match="cabecera incompleta"):
        decode_checkpoint(b"QMIXDSA-CKPT v1")


@pytest.mark.parametrize("header,payload", [
    (b'{"arrays": [{"shape": [1]}]}', bytes(8)),
    (b'{"arrays": [{"name": "theta.w"}]}', bytes(8)),
    (b'{"arrays": [{"name": "theta.w", "shape": [1], "dtype": "nada"}]}', bytes(8)),
    (b'{"counters": {"train_steps": "muchos"}}', b""),
    (b'["no", "es", "un", "objeto"]', b""),
])
def test_malformed_header_entries_are_data_errors(header, payload):
    """
    Test que verifica que entradas de cabecera sin nombre, sin forma o con tipos
    inválidos se reportan como error de datos.
    """
    data = b"QMIXDSA-CKPT v1\n" + header + b"\n" + payload

    with pytest.raises(DataError, match="corrupto"):
        decode_checkpoint(data)


def test_save_into_unwritable_location(tmp_path):
    """
    Test que verifica que un fallo de E/S al guardar se reporta como DataError.
    """
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")

    with pytest.raises(DataError, match="No se pudo escribir"):
        save_checkpoint(blocker / "ckpt.qckpt", _checkpoint())


def test_load_missing_file(tmp_path):
    with pytest.raises(DataError, match="No se pudo leer"):
        load_checkpoint(tmp_path / "missing.qckpt")


def test_learner_state_load_is_all_or_nothing():
    """
    Test que verifica que si falta un array de θ⁻ la carga falla sin tocar θ.
    """
    learner = _learner(seed=0)
    original = learner.params.copy()
    arrays = _learner(seed=1).state_arrays()
    missing = next(k for k in arrays if k.startswith("target."))
    del arrays[missing]

    with pytest.raises(DataError, match="Falta el array"):
        learner.load_state_arrays(arrays, {"train_steps": 5, "adam_t": 5})

    assert learner.params.equals(original)
    assert learner.train_steps == 0


def test_learner_state_round_trip():
    source = _learner(seed=1)
    target = _learner(seed=2)

    target.load_state_arrays(source.state_arrays(), source.counters())

    assert target.params.equals(source.params)
    assert target.target_params.equals(source.target_params)
