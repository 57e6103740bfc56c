from .sense_action import SenseAction
from .observation import UNSENSED, Observation, SlotOutcome
from .experiment_config import ALGORITHMS, ENV_KINDS, EnvSpec, ExperimentConfig
from .episode_record import EpisodeBatch, EpisodeRecord, stack_episodes
from .metrics_row import PHASE_EVAL, PHASE_TRAIN, MetricsRow
from .checkpoint import CHECKPOINT_MAGIC, CHECKPOINT_VERSION, Checkpoint

__all__ = [
    "SenseAction", "UNSENSED", "Observation", "SlotOutcome",
    "ALGORITHMS", "ENV_KINDS", "EnvSpec", "ExperimentConfig",
    "EpisodeBatch", "EpisodeRecord", "stack_episodes",
    "PHASE_EVAL", "PHASE_TRAIN", "MetricsRow",
    "CHECKPOINT_MAGIC", "CHECKPOINT_VERSION", "Checkpoint",
]
