"""
Optimizador Adam con corrección de sesgo y recorte por norma global.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, Sequence

import numpy as np

from ..errors import UsageError
from .tensor import ParamTensor, ParameterStore


@dataclass
class AdamState:
    """Momentos de primer y segundo orden de un parámetro."""
    m: np.ndarray
    v: np.ndarray
    t: int = 0

    @classmethod
    def for_param(cls, param: ParamTensor) -> "AdamState":
        return cls(np.zeros_like(param.values), np.zeros_like(param.values), 0)


@dataclass
class AdamConfig:
    lr: float = 5e-4
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    clip_norm: float | None = 10.0


def init_adam_states(store: ParameterStore) -> Dict[str, AdamState]:
    return {p.name: AdamState.for_param(p) for p in store}


def global_grad_norm(params: Iterable[ParamTensor]) -> float:
    return float(np.sqrt(sum(float(np.sum(p.grad * p.grad)) for p in params)))


def clip_grad_norm(params: Sequence[ParamTensor], max_norm: float) -> float:
    """Escala los gradientes si su norma global supera ``max_norm``. Devuelve la norma previa."""
    norm = global_grad_norm(params)
    if norm > max_norm > 0:
        factor = max_norm / norm
        for p in params:
            p.grad *= factor
    return norm


def adam_step(params: Sequence[ParamTensor], states: Dict[str, AdamState], lr: float,
              beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
    """
    Un paso de Adam sobre ``params`` usando sus gradientes acumulados.
    Los gradientes quedan a cero al terminar.
    """
    params = list(params)
    if not params:
        raise UsageError("adam_step sin parámetros ni gradientes.")
    if not any(p.accumulated for p in params):
        raise UsageError("adam_step sin gradientes: ningún parámetro pasó por un backward.")
    for p in params:
        state = states[p.name]
        state.t += 1
        g = p.grad
        state.m = beta1 * state.m + (1.0 - beta1) * g
        state.v = beta2 * state.v + (1.0 - beta2) * g * g
        m_hat = state.m / (1.0 - beta1 ** state.t)
        v_hat = state.v / (1.0 - beta2 ** state.t)
        p.values -= lr * m_hat / (np.sqrt(v_hat) + eps)
        p.zero_grad()
        p.check_finite()


@dataclass
class AdamOptimizer:
    """Adam sobre un ParameterStore completo (θ), con recorte opcional."""
    store: ParameterStore
    config: AdamConfig = field(default_factory=AdamConfig)
    states: Dict[str, AdamState] = None

    def __post_init__(self):
        if self.states is None:
            self.states = init_adam_states(self.store)

    def step(self) -> float:
        params = list(self.store)
        norm = global_grad_norm(params)
        if self.config.clip_norm:
            clip_grad_norm(params, self.config.clip_norm)
        adam_step(params, self.states, self.config.lr, self.config.beta1, self.config.beta2, self.config.eps)
        return norm

    def to_arrays(self) -> Dict[str, np.ndarray]:
        arrays = {}
        for name, state in self.states.items():
            arrays[f"adam.m.{name}"] = state.m.copy()
            arrays[f"adam.v.{name}"] = state.v.copy()
        return arrays

    def steps_taken(self) -> int:
        return max((s.t for s in self.states.values()), default=0)

    def load_arrays(self, arrays: Dict[str, np.ndarray], t: int):
        for name, state in self.states.items():
            state.m = np.array(arrays[f"adam.m.{name}"], dtype=np.float64)
            state.v = np.array(arrays[f"adam.v.{name}"], dtype=np.float64)
            state.t = int(t)
