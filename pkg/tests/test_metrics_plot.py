import numpy as np
import pytest

from qmix_dsa.errors import DataError
from qmix_dsa.models.metrics_row import PHASE_EVAL, MetricsRow
from qmix_dsa.services.metrics_logger import MetricsLogger, read_metrics
from qmix_dsa.services.plot_exporter import epoch_positions, export_plot, moving_average


def _row(epoch=1, episode=0, successes=10, phase="train"):
    return MetricsRow(epoch=epoch, episode=episode, successes=successes, collisions=4, silent=46 - successes,
                      total_reward=2 * successes - 4, success_rate=successes / 60, oracle_bound=40,
                      epsilon=0.3, mean_loss=0.25, phase=phase)


def _write(path, rows):
    logger = MetricsLogger(path)
    logger.start()
    logger.append(rows)
    return logger


def test_write_and_read_metrics(tmp_path):
    """
    Test que verifica la cabecera del CSV y la lectura de las filas escritas.
    """
    rows = [_row(episode=i, successes=i) for i in range(3)] + [_row(epoch=2, episode=3, phase=PHASE_EVAL)]
    path = tmp_path / "metrics.csv"
    logger = _write(path, rows)

    assert path.read_text(encoding="utf-8").splitlines()[0] == ",".join(MetricsRow.header())
    assert logger.rows_written == 4
    assert read_metrics(path) == rows


def test_nan_loss_round_trips(tmp_path):
    path = tmp_path / "metrics.csv"
    row = _row()
    row.mean_loss = float("nan")
    _write(path, [row])

    assert np.isnan(read_metrics(path)[0].mean_loss)


def test_malformed_line_reports_row(tmp_path):
    path = tmp_path / "metrics.csv"
    _write(path, [_row()])
    with open(path, "a", encoding="utf-8") as f:
        f.write("1,2,3\n")

    with pytest.raises(DataError, match="Línea 3") as excinfo:
        read_metrics(path)
    assert excinfo.value.row == 3


def test_bad_header_reports_first_row(tmp_path):
    path = tmp_path / "metrics.csv"
    path.write_text("epoch,episode\n1,0\n", encoding="utf-8")

    with pytest.raises(DataError, match="Cabecera inválida") as excinfo:
        read_metrics(path)
    assert excinfo.value.row == 1


def test_partial_marker(tmp_path):
    """
    Test que verifica que el marcador de salida parcial se crea y que start() lo elimina.
    """
    logger = _write(tmp_path / "metrics.csv", [_row()])
    marker = logger.mark_partial("numerical: NaN en la pérdida")

    assert marker.name == "metrics.csv.partial"
    assert "numerical" in marker.read_text(encoding="utf-8")
    logger.start()
    assert not marker.exists()


def test_moving_average_and_positions():
    np.testing.assert_allclose(moving_average([1, 2, 3, 4], 2), [1.0, 1.5, 2.5, 3.5])
    assert moving_average([], 5).size == 0
    rows = [_row(epoch=1), _row(epoch=1), _row(epoch=2), _row(epoch=2)]
    np.testing.assert_allclose(epoch_positions(rows), [0.5, 1.0, 1.5, 2.0])


def test_plot_of_empty_metrics(tmp_path):
    """
    Un CSV con solo cabecera produce un SVG válido sin curvas.
    """
    csv_path = tmp_path / "metrics.csv"
    _write(csv_path, [])

    svg = export_plot(csv_path, tmp_path / "empty.svg").read_text(encoding="utf-8")

    assert "<svg" in svg
    assert 'id="successes"' not in svg


def test_plot_has_one_point_per_training_episode(tmp_path):
    """
    Test que verifica que la curva de éxitos tiene un punto por episodio de entrenamiento.
    """
    csv_path = tmp_path / "metrics.csv"
    rows = [_row(epoch=1 + i // 5, episode=i, successes=i) for i in range(10)] + [_row(epoch=2, phase=PHASE_EVAL)]
    _write(csv_path, rows)

    svg = export_plot(csv_path, tmp_path / "plot.svg", window=3).read_text(encoding="utf-8")

    group = svg[svg.index('<g id="successes">'):]
    d = group[group.index(' d="') + 4:]
    d = d[:d.index('"')]
    assert d.count("M ") + d.count("L ") == 10
    assert 'id="eval"' in svg and 'id="oracle"' in svg


def test_plot_is_reproducible(tmp_path):
    csv_path = tmp_path / "metrics.csv"
    _write(csv_path, [_row(episode=i, successes=i % 7) for i in range(30)])

    first = export_plot(csv_path, tmp_path / "a.svg").read_bytes()
    second = export_plot(csv_path, tmp_path / "b.svg").read_bytes()

    assert first == second


def test_missing_metrics_file(tmp_path):
    with pytest.raises(DataError, match="No se pudo leer"):
        export_plot(tmp_path / "none.csv", tmp_path / "x.svg")
