"""
Factory para crear modelos de canal según la configuración.
"""

import logging

from .. import seeding
from ..errors import ConfigurationError
from ..models.experiment_config import EnvSpec
from .channel_interface import ChannelModel
from .correlated import init_correlated
from .markov import init_markov
from .periodic import PeriodicPattern
from .switching import make_switching_env
from .trace import TraceChannelModel, load_trace

logger = logging.getLogger(__name__)


class ChannelFactory:
    """Factory para crear modelos de canal."""

    @staticmethod
    def create_model(spec: EnvSpec, num_channels: int, seed: int, num_slots: int = 1) -> ChannelModel:
        """
        Crea el modelo de canales descrito por ``spec``.

        Args:
            spec: sección ``env`` de la configuración.
            num_channels: K.
            seed: semilla del experimento; los parámetros aleatorios del modelo
                salen del stream CHANNEL_INIT.

        Returns:
            Instancia del modelo correspondiente.
        """
        spec.validate()
        if spec.kind == "switching":
            # Cada lado usa su propio sub-stream: un Markov→Markov da P' != P
            first = ChannelFactory._create_simple(spec.switch_first, spec, num_channels, seed, 0, num_slots)
            second = ChannelFactory._create_simple(spec.switch_second, spec, num_channels, seed, 1, num_slots)
            model = make_switching_env(first, second, spec.switch_epoch)
        else:
            model = ChannelFactory._create_simple(spec.kind, spec, num_channels, seed, 0, num_slots)
        logger.info(f"Modelo de canales creado: {model.get_info()['type']} (K={num_channels})")
        return model

    @staticmethod
    def _create_simple(kind: str, spec: EnvSpec, num_channels: int, seed: int, index: int,
                       num_slots: int = 1) -> ChannelModel:
        rng = seeding.make_rng(seed, seeding.CHANNEL_INIT, index)

        if kind == "markov":
            return init_markov(num_channels, rng, spec.markov_low, spec.markov_high)

        elif kind == "periodic":
            return PeriodicPattern(num_channels, spec.periodic_groups, spec.periodic_switch_prob)

        elif kind == "correlated":
            return init_correlated(num_channels, rng, spec.correlated_subsets, spec.correlated_switch_prob)

        elif kind == "trace":
            table = load_trace(spec.trace_path, num_channels, min_slots=num_slots)
            return TraceChannelModel(table, wrap=spec.trace_wrap)

        raise ConfigurationError(f"Tipo de entorno no soportado: {kind}")

    @staticmethod
    def get_supported_types() -> list:
        """
        Retorna los tipos de entorno soportados.

        Returns:
            Lista de tipos soportados
        """
        return ['markov', 'periodic', 'correlated', 'trace', 'switching']
