import logging
import os
from pathlib import Path
from typing import Any, Dict

import yaml

from .errors import ConfigurationError
from .models.experiment_config import ExperimentConfig

logger = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "QMIXDSA_OUTPUT_DIR"


class ConfigManager:
    """
    Carga, gestiona y proporciona acceso a la configuración de un experimento
    desde un fichero YAML con las secciones ``experiment``, ``env`` y ``logging``.

    No es un singleton: cada experimento (o variante de escenario) tiene la suya.
    """

    def __init__(self, config_path: Path | str | None = Path("config.yaml"), data: Dict[str, Any] | None = None):
        self._config_path = Path(config_path) if config_path is not None else None
        self._config = data if data is not None else self._load_config()
        unknown = set(self._config) - {"experiment", "env", "logging"}
        if unknown:
            raise ConfigurationError(f"Secciones desconocidas en la configuración: {sorted(unknown)}")
        self._experiment = self._build_experiment()

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ConfigManager":
        return cls(None, data=dict(data))

    def _load_config(self) -> dict:
        """Carga el fichero de configuración YAML."""
        logger.info(f"Cargando configuración desde {self._config_path}")
        try:
            with open(self._config_path, 'r', encoding='utf-8') as f:
                data = yaml.safe_load(f)
        except FileNotFoundError:
            raise ConfigurationError(f"Fichero de configuración no encontrado en '{self._config_path}'")
        except yaml.YAMLError as e:
            raise ConfigurationError(f"El fichero '{self._config_path}' tiene un formato incorrecto: {e}")
        if data is None:
            return {}
        if not isinstance(data, dict):
            raise ConfigurationError(f"El fichero '{self._config_path}' debe contener un mapeo de secciones")
        return data

    def _build_experiment(self) -> ExperimentConfig:
        experiment = dict(self._config.get("experiment") or {})
        output_dir = os.getenv(OUTPUT_DIR_ENV)
        if output_dir:
            logger.info(f"Directorio de salida tomado de {OUTPUT_DIR_ENV}: {output_dir}")
            experiment["output_dir"] = output_dir
        return ExperimentConfig.from_dict(experiment, self._config.get("env"))

    def with_overrides(self, overrides: Dict[str, Any]) -> "ConfigManager":
        """Nueva configuración con las claves de ``experiment`` (y ``env``) reemplazadas."""
        data = {k: dict(v) if isinstance(v, dict) else v for k, v in self._config.items()}
        overrides = dict(overrides)
        env = overrides.pop("env", None)
        data["experiment"] = {**(data.get("experiment") or {}), **overrides}
        if env is not None:
            data["env"] = {**(data.get("env") or {}), **env}
        return ConfigManager(self._config_path, data=data)

    # --- Propiedades de acceso por sección ---
    @property
    def experiment(self) -> ExperimentConfig: return self._experiment
    @property
    def env(self) -> dict: return self._config.get("env", {}) or {}
    @property
    def logging(self) -> dict: return self._config.get("logging", {}) or {}
    @property
    def config_path(self) -> Path | None: return self._config_path

    # --- Propiedades de salida ---
    @property
    def output_dir(self) -> Path: return Path(self._experiment.output_dir)
    @property
    def metrics_path(self) -> Path: return self.output_dir / self._experiment.metrics_file
    @property
    def checkpoint_path(self) -> Path: return self.output_dir / self._experiment.checkpoint_file

    # --- Propiedades de logging ---
    @property
    def log_level(self) -> str:
        return str(self.logging.get("level", "INFO")).upper()

    @property
    def log_file_path(self) -> str | None:
        return self.logging.get("file_path", "./logs/")
