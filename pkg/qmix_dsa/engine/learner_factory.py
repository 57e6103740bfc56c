"""
Factory para crear el learner según el algoritmo configurado.
"""

import logging

import numpy as np

from ..errors import ConfigurationError
from ..models.experiment_config import ExperimentConfig
from .iql_learner import IqlLearner
from .learner_interface import LearnerInterface
from .qmix_learner import QmixLearner
from .random_learner import RandomLearner

logger = logging.getLogger(__name__)


class LearnerFactory:
    """Factory para crear learners."""

    @staticmethod
    def create_learner(config: ExperimentConfig, rng: np.random.Generator) -> LearnerInterface:
        """
        Crea e inicializa el learner de ``config.algorithm``.

        Args:
            config: configuración del experimento.
            rng: stream de inicialización de pesos.

        Returns:
            Learner con los parámetros ya inicializados.
        """
        algorithm = config.algorithm

        if algorithm == 'qmix':
            learner = QmixLearner(config)

        elif algorithm == 'iql':
            learner = IqlLearner(config)

        elif algorithm == 'random':
            learner = RandomLearner(config)

        else:
            raise ConfigurationError(f"Algoritmo no soportado: '{algorithm}'. Opciones: "
                                     f"{LearnerFactory.get_supported_types()}")

        learner.init_params(rng)
        logger.info(f"Learner creado: {learner.get_info()}")
        return learner

    @staticmethod
    def get_supported_types() -> list:
        """
        Retorna los algoritmos soportados.

        Returns:
            Lista de algoritmos soportados
        """
        return ['qmix', 'iql', 'random']
