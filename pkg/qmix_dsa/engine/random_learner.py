import numpy as np

from .learner_interface import LearnerInterface


class RandomLearner(LearnerInterface):
    """Cada agente elige cada slot una acción de sensado uniforme. No entrena."""
    name = "random"
    trainable = False

    def init_params(self, rng: np.random.Generator) -> None:
        self.train_steps = 0

    def initial_hidden(self):
        return None

    def act(self, observations, prev_actions, hidden, epsilon, rng):
        return rng.integers(self.num_actions, size=self.num_agents).astype(np.int64), hidden

    def train_step(self, episodes) -> float:
        return float("nan")
