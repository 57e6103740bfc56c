from .action_space import ActionSpace, enumerate_actions, rank_lex, unrank_lex
from .encoding import NO_ACTION, encode_batch, encode_input, input_dim
from .drqn import DrqnAgentNetwork, agent_q_forward
from .exploration import EpsilonSchedule, epsilon, greedy_action, select_action

__all__ = [
    "ActionSpace", "enumerate_actions", "rank_lex", "unrank_lex",
    "NO_ACTION", "encode_batch", "encode_input", "input_dim",
    "DrqnAgentNetwork", "agent_q_forward",
    "EpsilonSchedule", "epsilon", "greedy_action", "select_action",
]
