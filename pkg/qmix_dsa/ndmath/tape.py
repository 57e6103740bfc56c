"""
Cinta de cómputo para diferenciación en modo inverso.

Cada operación primitiva ejecutada en el forward se anota en la cinta junto
con su función de backward. ``ComputationTape.backward`` recorre la cinta en
orden inverso una sola vez y vuelca los gradientes de las hojas en
``ParamTensor.grad``.
"""
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import NumericalError, UsageError
from .tensor import ParamTensor

BackwardFn = Callable[[np.ndarray], Sequence[Optional[np.ndarray]]]


class Node:
    """Un valor intermedio del forward (array numpy) y su gradiente."""
    __slots__ = ("tape", "value", "grad", "requires_grad", "param")

    def __init__(self, tape: "ComputationTape", value: np.ndarray, requires_grad: bool,
                 param: Optional[ParamTensor] = None):
        self.tape = tape
        self.value = value
        self.grad = None
        self.requires_grad = requires_grad
        self.param = param

    @property
    def shape(self) -> tuple:
        return self.value.shape

    def accumulate(self, g: np.ndarray):
        self.grad = g if self.grad is None else self.grad + g

    def __repr__(self):
        return f"Node(shape={self.value.shape}, requires_grad={self.requires_grad})"


class ComputationTape:
    """
    Registro ordenado de las operaciones de un forward.

    Con ``recording=False`` las operaciones solo calculan valores (modo
    inferencia): no se guarda nada y ``backward`` no está permitido.
    """

    def __init__(self, recording: bool = True):
        self.recording = recording
        self._records: List[Tuple[Node, Tuple[Node, ...], BackwardFn]] = []
        self._leaves: dict = {}
        self._replayed = False
        self.visited = 0

    @classmethod
    def inference(cls) -> "ComputationTape":
        return cls(recording=False)

    def __len__(self) -> int:
        return len(self._records)

    def param(self, param: ParamTensor) -> Node:
        """Hoja asociada a un parámetro; se reutiliza si ya existe en esta cinta."""
        leaf = self._leaves.get(id(param))
        if leaf is None:
            leaf = Node(self, param.values, requires_grad=self.recording, param=param)
            self._leaves[id(param)] = leaf
        return leaf

    def constant(self, value) -> Node:
        return Node(self, np.asarray(value, dtype=np.float64), requires_grad=False)

    def record(self, inputs: Sequence[Node], value: np.ndarray, backward_fn: BackwardFn, op: str = "") -> Node:
        """Crea el nodo de salida de una operación y la anota si procede."""
        if not np.all(np.isfinite(value)):
            raise NumericalError(f"Valor no finito en la operación '{op}'.")
        requires_grad = self.recording and any(n.requires_grad for n in inputs)
        out = Node(self, value, requires_grad)
        if requires_grad:
            self._records.append((out, tuple(inputs), backward_fn))
        return out

    def backward(self, loss: Node, loss_seed: float = 1.0):
        """
        Propaga ``loss_seed`` desde ``loss`` hacia atrás por toda la cinta y
        acumula los gradientes en los ParamTensors tocados en el forward.
        """
        if not self.recording:
            raise UsageError("La cinta de inferencia no admite backward.")
        if self._replayed:
            raise UsageError("La cinta ya fue reproducida; ejecute un nuevo forward.")
        if not self._records:
            raise UsageError("La cinta está vacía; no hay nada que propagar.")
        if loss.tape is not self:
            raise UsageError("El nodo de pérdida pertenece a otra cinta.")

        loss.grad = np.full_like(loss.value, float(loss_seed))
        self.visited = 0
        for out, inputs, backward_fn in reversed(self._records):
            self.visited += 1
            if out.grad is None:
                continue
            for node, g in zip(inputs, backward_fn(out.grad)):
                if g is not None and node.requires_grad:
                    node.accumulate(g)

        for leaf in self._leaves.values():
            if leaf.grad is not None:
                leaf.param.accumulate(leaf.grad)
                if not np.all(np.isfinite(leaf.param.grad)):
                    raise NumericalError(f"Gradiente no finito en '{leaf.param.name}'.")
        self._replayed = True
        # Libera memoria intermedia
        self._records.clear()
