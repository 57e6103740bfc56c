from .mixer import MixingNetwork, greedy_joint_action, mix
from .replay_buffer import ReplayBuffer, sample_batch, store_episode
from .learner_interface import LearnerInterface
from .qmix_learner import QmixLearner, qmix_loss, td_targets
from .iql_learner import IqlLearner
from .random_learner import RandomLearner
from .learner_factory import LearnerFactory
from .episode_runner import run_episode, summarize_episode
from .trainer import Trainer, TrainerState, sync_target, train_epoch
from .degradation import DegradationDetector, detect_degradation
from .experiment_runner import ExperimentResult, ExperimentRunner, evaluate, run_experiment
from .scenario_runner import list_scenarios, run_scenario, scenario_config

__all__ = [
    "MixingNetwork", "greedy_joint_action", "mix",
    "ReplayBuffer", "sample_batch", "store_episode",
    "LearnerInterface", "QmixLearner", "qmix_loss", "td_targets", "IqlLearner", "RandomLearner",
    "LearnerFactory", "run_episode", "summarize_episode",
    "Trainer", "TrainerState", "sync_target", "train_epoch",
    "DegradationDetector", "detect_degradation",
    "ExperimentResult", "ExperimentRunner", "evaluate", "run_experiment",
    "list_scenarios", "run_scenario", "scenario_config",
]
