"""
Operaciones primitivas sobre nodos de la cinta.

Solo las operaciones que necesitan las arquitecturas fijas del proyecto
(capas densas, GRU, mixer con hiperredes y la pérdida TD). Todas admiten
una dimensión de batch en el eje 0.
"""
from typing import Sequence

import numpy as np

from ..errors import ConfigurationError
from .tape import Node

ACTIVATIONS = ("relu", "elu", "sigmoid", "tanh")


def _unbroadcast(g: np.ndarray, shape: tuple) -> np.ndarray:
    """Reduce ``g`` sumando los ejes añadidos por broadcasting hasta ``shape``."""
    while g.ndim > len(shape):
        g = g.sum(axis=0)
    for axis, dim in enumerate(shape):
        if dim == 1 and g.shape[axis] != 1:
            g = g.sum(axis=axis, keepdims=True)
    return g


def _sigmoid(x: np.ndarray) -> np.ndarray:
    # Forma estable para |x| grande
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def apply_activation(kind: str, x: np.ndarray) -> np.ndarray:
    """Activación elemento a elemento sobre un array numpy."""
    x = np.asarray(x, dtype=np.float64)
    if kind == "relu":
        return np.maximum(x, 0.0)
    if kind == "elu":
        return np.where(x >= 0, x, np.expm1(np.minimum(x, 0.0)))
    if kind == "sigmoid":
        return _sigmoid(x)
    if kind == "tanh":
        return np.tanh(x)
    raise ConfigurationError(f"Activación desconocida: '{kind}'. Opciones: {ACTIVATIONS}")


def _activation_grad(kind: str, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if kind == "relu":
        return (x > 0).astype(np.float64)
    if kind == "elu":
        return np.where(x >= 0, 1.0, y + 1.0)
    if kind == "sigmoid":
        return y * (1.0 - y)
    return 1.0 - y * y


def activate(kind: str, x: Node) -> Node:
    y = apply_activation(kind, x.value)

    def backward(g):
        return (g * _activation_grad(kind, x.value, y),)

    return x.tape.record((x,), y, backward, op=kind)


def linear(x: Node, W: Node) -> Node:
    """y = x · Wᵀ, con x de forma (in,) o (batch, in) y W de forma (out, in)."""
    if W.value.ndim != 2 or x.value.shape[-1] != W.value.shape[1]:
        raise ConfigurationError(
            f"Dimensiones incompatibles: entrada {x.value.shape}, pesos {W.value.shape}")
    y = x.value @ W.value.T

    def backward(g):
        gx = g @ W.value
        if x.value.ndim == 1:
            gW = np.outer(g, x.value)
        else:
            gW = g.reshape(-1, g.shape[-1]).T @ x.value.reshape(-1, x.value.shape[-1])
        return gx, gW

    return x.tape.record((x, W), y, backward, op="linear")


def add(a: Node, b: Node) -> Node:
    y = a.value + b.value

    def backward(g):
        return _unbroadcast(g, a.value.shape), _unbroadcast(g, b.value.shape)

    return a.tape.record((a, b), y, backward, op="add")


def sub(a: Node, b: Node) -> Node:
    y = a.value - b.value

    def backward(g):
        return _unbroadcast(g, a.value.shape), -_unbroadcast(g, b.value.shape)

    return a.tape.record((a, b), y, backward, op="sub")


def mul(a: Node, b: Node) -> Node:
    y = a.value * b.value

    def backward(g):
        return _unbroadcast(g * b.value, a.value.shape), _unbroadcast(g * a.value, b.value.shape)

    return a.tape.record((a, b), y, backward, op="mul")


def one_minus(x: Node) -> Node:
    def backward(g):
        return (-g,)

    return x.tape.record((x,), 1.0 - x.value, backward, op="one_minus")


def scale(x: Node, factor: float) -> Node:
    def backward(g):
        return (g * factor,)

    return x.tape.record((x,), x.value * factor, backward, op="scale")


def absolute(x: Node) -> Node:
    def backward(g):
        return (g * np.sign(x.value),)

    return x.tape.record((x,), np.abs(x.value), backward, op="abs")


def square(x: Node) -> Node:
    def backward(g):
        return (2.0 * g * x.value,)

    return x.tape.record((x,), x.value * x.value, backward, op="square")


def reshape(x: Node, shape: Sequence[int]) -> Node:
    def backward(g):
        return (g.reshape(x.value.shape),)

    return x.tape.record((x,), x.value.reshape(tuple(shape)), backward, op="reshape")


def total(x: Node, axis: int | None = None) -> Node:
    """Suma de todos los elementos (axis=None) o a lo largo de un eje."""
    y = np.asarray(x.value.sum(axis=axis))

    def backward(g):
        if axis is None:
            return (np.broadcast_to(g, x.value.shape).copy(),)
        return (np.broadcast_to(np.expand_dims(g, axis), x.value.shape).copy(),)

    return x.tape.record((x,), y, backward, op="sum")


def add_n(nodes: Sequence[Node]) -> Node:
    y = nodes[0].value.copy()
    for n in nodes[1:]:
        y = y + n.value

    def backward(g):
        return tuple(g for _ in nodes)

    return nodes[0].tape.record(tuple(nodes), y, backward, op="add_n")


def row(x: Node, index: int) -> Node:
    """x[index] a lo largo del eje 0 (p. ej. un slot de una secuencia)."""
    def backward(g):
        gx = np.zeros_like(x.value)
        gx[index] = g
        return (gx,)

    return x.tape.record((x,), x.value[index], backward, op="row")


def pick(q: Node, indices: np.ndarray) -> Node:
    """q[i, indices[i]] para q de forma (batch, acciones)."""
    indices = np.asarray(indices, dtype=np.int64)
    rows = np.arange(q.value.shape[0])

    def backward(g):
        gq = np.zeros_like(q.value)
        gq[rows, indices] = g
        return (gq,)

    return q.tape.record((q,), q.value[rows, indices], backward, op="pick")


def weighted_sum(q: Node, w: Node) -> Node:
    """
    Producto vector-matriz por muestra: (batch, n) × (batch, n, h) -> (batch, h).
    """
    if w.value.ndim != 3 or q.value.shape != w.value.shape[:2]:
        raise ConfigurationError(f"Dimensiones incompatibles: {q.value.shape} y {w.value.shape}")
    y = np.einsum("bn,bnh->bh", q.value, w.value)

    def backward(g):
        return np.einsum("bh,bnh->bn", g, w.value), np.einsum("bn,bh->bnh", q.value, g)

    return q.tape.record((q, w), y, backward, op="weighted_sum")
