import os
from pathlib import Path
from unittest.mock import patch

import pytest

from qmix_dsa.config import OUTPUT_DIR_ENV, ConfigManager
from qmix_dsa.errors import ConfigurationError
from qmix_dsa.models.experiment_config import ExperimentConfig

REPO_CONFIG = Path(__file__).resolve().parent.parent / "config.yaml"


def _write(tmp_path, text):
    path = tmp_path / "config.yaml"
    path.write_text(text, encoding="utf-8")
    return path


def test_load_yaml_sections(tmp_path):
    """
    Test que verifica la carga de las tres secciones y los valores por defecto de las claves ausentes.
    """
    path = _write(tmp_path, (
        "experiment:\n  num_channels: 8\n  num_users: 2\n  num_sensed: 1\n  algorithm: iql\n"
        "env:\n  kind: periodic\n  periodic:\n    switch_prob: 0.5\n"
        "logging:\n  level: debug\n"
    ))
    with patch.dict(os.environ, {}, clear=True):
        manager = ConfigManager(path)

    config = manager.experiment
    assert (config.num_channels, config.num_users, config.num_sensed, config.algorithm) == (8, 2, 1, "iql")
    assert config.batch_size == ExperimentConfig().batch_size
    assert config.env.kind == "periodic" and config.env.periodic_switch_prob == 0.5
    assert manager.log_level == "DEBUG"
    assert manager.metrics_path == Path("./runs") / "metrics.csv"


def test_missing_file(tmp_path):
    with pytest.raises(ConfigurationError, match="no encontrado"):
        ConfigManager(tmp_path / "none.yaml")


def test_unknown_keys_and_sections(tmp_path):
    with pytest.raises(ConfigurationError, match="Claves desconocidas en 'experiment'"):
        ConfigManager(_write(tmp_path, "experiment:\n  num_chanels: 8\n"))
    with pytest.raises(ConfigurationError, match="Secciones desconocidas"):
        ConfigManager(_write(tmp_path, "training:\n  epochs: 3\n"))
    with pytest.raises(ConfigurationError, match="env.markov"):
        ConfigManager(_write(tmp_path, "env:\n  markov:\n    lo: 0.1\n"))


def test_invalid_values_name_the_key(tmp_path):
    """
    Test que verifica que un M mayor que K se rechaza nombrando la clave.
    """
    with pytest.raises(ConfigurationError, match="'num_sensed'"):
        ConfigManager(_write(tmp_path, "experiment:\n  num_channels: 4\n  num_sensed: 5\n"))
    with pytest.raises(ConfigurationError, match="'batch_size'"):
        ConfigManager(_write(tmp_path, "experiment:\n  batch_size: muchos\n"))


@pytest.mark.parametrize("text,key", [
    ("experiment:\n  num_users:\n", "'num_users'"),
    ("experiment:\n  reset_on_degradation: 'false'\n", "'reset_on_degradation'"),
    ("experiment:\n  num_users: 3.7\n", "'num_users'"),
    ("experiment:\n  batch_size: true\n", "'batch_size'"),
    ("env:\n  trace:\n    wrap: 'no'\n", "'env.trace.wrap'"),
    ("env:\n  correlated:\n    subset_sizes: [8, 7.5]\n", "'env.correlated.subset_sizes'"),
    ("env:\n  markov: 0.3\n", "'env.markov'"),
])
def test_values_of_wrong_type_are_configuration_errors(tmp_path, text, key):
    """
    Test que verifica que valores vacíos, booleanos en texto o floats en campos
    enteros no se convierten en silencio: son errores de configuración con la clave.
    """
    with pytest.raises(ConfigurationError, match=key):
        ConfigManager(_write(tmp_path, text))


def test_yaml_booleans_and_numeric_strings_are_accepted(tmp_path):
    with patch.dict(os.environ, {}, clear=True):
        manager = ConfigManager(_write(tmp_path, (
            "experiment:\n  reset_on_degradation: false\n  learning_rate: 5e-4\n  gamma: 1\n"
            "env:\n  trace:\n    wrap: true\n"
        )))

    config = manager.experiment
    assert config.reset_on_degradation is False
    assert config.learning_rate == 5e-4 and isinstance(config.gamma, float)
    assert config.env.trace_wrap is True


def test_output_dir_from_environment(tmp_path):
    path = _write(tmp_path, "experiment:\n  output_dir: ./local\n")
    with patch.dict(os.environ, {OUTPUT_DIR_ENV: str(tmp_path / "env_runs")}):
        manager = ConfigManager(path)

    assert manager.output_dir == tmp_path / "env_runs"


def test_with_overrides_returns_new_instance():
    with patch.dict(os.environ, {}, clear=True):
        base = ConfigManager.from_dict({"experiment": {"num_users": 2}})
        changed = base.with_overrides({"num_users": 4, "env": {"kind": "correlated"}})

    assert base.experiment.num_users == 2 and base.experiment.env.kind == "markov"
    assert changed.experiment.num_users == 4 and changed.experiment.env.kind == "correlated"


def test_repository_config_matches_defaults():
    """
    El config.yaml del repositorio documenta exactamente los valores por defecto.
    """
    with patch.dict(os.environ, {}, clear=True):
        manager = ConfigManager(REPO_CONFIG)

    assert manager.experiment == ExperimentConfig()
    assert manager.log_level == "INFO"
