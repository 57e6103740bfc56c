from .tensor import ParamTensor, ParameterStore
from .tape import ComputationTape, Node
from .layers import activation, dense, dense_forward, gru, gru_cell
from .optim import AdamConfig, AdamOptimizer, AdamState, adam_step, clip_grad_norm
from .gradcheck import grad_check

__all__ = [
    "ParamTensor", "ParameterStore", "ComputationTape", "Node",
    "activation", "dense", "dense_forward", "gru", "gru_cell",
    "AdamConfig", "AdamOptimizer", "AdamState", "adam_step", "clip_grad_norm",
    "grad_check",
]
