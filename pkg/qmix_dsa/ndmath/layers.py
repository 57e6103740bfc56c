"""
Capas densas y celda GRU, en dos sabores:

- ``dense`` / ``gru`` trabajan con nodos de una ComputationTape (para entrenar).
- ``dense_forward`` / ``gru_cell`` / ``activation`` trabajan con arrays numpy
  y devuelven arrays (para inferencia y pruebas).

Convención GRU (fija, para que los checkpoints sean portables):
    z  = σ(W_z x + U_z h + b_z)
    r  = σ(W_r x + U_r h + b_r)
    h~ = tanh(W_h x + U_h (r ⊙ h) + b_h)
    h' = (1 − z) ⊙ h + z ⊙ h~
"""
from typing import Dict, Mapping

import numpy as np

from ..errors import ConfigurationError
from . import ops
from .tape import ComputationTape, Node
from .tensor import ParamTensor, ParameterStore

GRU_GATES = ("z", "r", "h")


def dense(x: Node, W: Node, b: Node) -> Node:
    if b.value.shape != (W.value.shape[0],):
        raise ConfigurationError(f"Bias {b.value.shape} incompatible con pesos {W.value.shape}")
    return ops.add(ops.linear(x, W), b)


def gru(x: Node, h: Node, params: Mapping[str, Node]) -> Node:
    """Un paso de la GRU sobre nodos. ``params`` indexado por 'W_z', 'U_z', 'b_z', ..."""
    if h.value.shape[-1] != params["U_z"].value.shape[1]:
        raise ConfigurationError(
            f"Estado oculto de dimensión {h.value.shape[-1]}, se esperaba {params['U_z'].value.shape[1]}")

    def gate(kind: str, g: str, recurrent_input: Node) -> Node:
        pre = ops.add(ops.linear(x, params[f"W_{g}"]), ops.linear(recurrent_input, params[f"U_{g}"]))
        return ops.activate(kind, ops.add(pre, params[f"b_{g}"]))

    z = gate("sigmoid", "z", h)
    r = gate("sigmoid", "r", h)
    h_tilde = gate("tanh", "h", ops.mul(r, h))
    return ops.add(ops.mul(ops.one_minus(z), h), ops.mul(z, h_tilde))


def init_dense(store: ParameterStore, prefix: str, d_in: int, d_out: int, rng: np.random.Generator):
    store.add(ParamTensor.uniform(f"{prefix}.W", (d_out, d_in), d_in, rng))
    store.add(ParamTensor.zeros(f"{prefix}.b", (d_out,)))


def init_gru(store: ParameterStore, prefix: str, d_in: int, d_h: int, rng: np.random.Generator):
    for g in GRU_GATES:
        store.add(ParamTensor.uniform(f"{prefix}.W_{g}", (d_h, d_in), d_in, rng))
        store.add(ParamTensor.uniform(f"{prefix}.U_{g}", (d_h, d_h), d_h, rng))
        store.add(ParamTensor.zeros(f"{prefix}.b_{g}", (d_h,)))


def gru_nodes(tape: ComputationTape, store: ParameterStore, prefix: str) -> Dict[str, Node]:
    return {f"{m}_{g}": tape.param(store[f"{prefix}.{m}_{g}"]) for g in GRU_GATES for m in ("W", "U", "b")}


def _as_param(value, name: str) -> ParamTensor:
    return value if isinstance(value, ParamTensor) else ParamTensor(name, value)


def dense_forward(x, W, b) -> np.ndarray:
    """y[i] = Σ_j W[i,j]·x[j] + b[i] sobre arrays."""
    tape = ComputationTape.inference()
    W, b = _as_param(W, "W"), _as_param(b, "b")
    return dense(tape.constant(x), tape.param(W), tape.param(b)).value


def activation(kind: str, x) -> np.ndarray:
    return ops.apply_activation(kind, x)


def gru_cell(x, h, params: Mapping[str, object]) -> np.ndarray:
    """Un paso GRU sobre arrays; ``params`` con claves 'W_z', 'U_z', 'b_z', ..."""
    tape = ComputationTape.inference()
    nodes = {k: tape.param(_as_param(v, k)) for k, v in params.items()}
    return gru(tape.constant(x), tape.constant(h), nodes).value
