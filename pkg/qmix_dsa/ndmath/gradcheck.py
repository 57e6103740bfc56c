"""
Comprobador de gradientes por diferencias centrales.
"""
import logging
from typing import Callable, Sequence

import numpy as np

from .tape import ComputationTape, Node
from .tensor import ParamTensor

logger = logging.getLogger(__name__)

LossFn = Callable[[ComputationTape], Node]


def grad_check(fn: LossFn, params: Sequence[ParamTensor], perturbation: float = 1e-5,
               floor: float = 1e-8, max_entries: int | None = None,
               rng: np.random.Generator | None = None, negligible: float = 0.0) -> float:
    """
    Compara el gradiente analítico (backward) con diferencias centrales.

    Args:
        fn: construye el escalar a derivar sobre la cinta que recibe.
        params: parámetros a comprobar.
        perturbation: paso h de la diferencia central.
        floor: suelo del denominador del error relativo.
        max_entries: si se indica, solo se comprueba una muestra aleatoria de
            ese tamaño por parámetro (redes grandes).
        negligible: las entradas con |analítico| y |numérico| por debajo de
            este valor no se comparan: ahí la diferencia central solo mide
            el redondeo de float64 (del orden de eps·|f|/h).

    Returns:
        max |analítico − numérico| / max(|analítico|, |numérico|, floor)
    """
    for p in params:
        p.zero_grad()
    tape = ComputationTape()
    loss = fn(tape)
    tape.backward(loss)
    analytic = {id(p): p.grad.copy() for p in params}
    for p in params:
        p.zero_grad()

    rng = rng or np.random.default_rng(0)
    worst = 0.0
    for p in params:
        flat = p.values.reshape(-1)
        indices = np.arange(flat.size)
        if max_entries is not None and flat.size > max_entries:
            indices = rng.choice(flat.size, size=max_entries, replace=False)
        grad_flat = analytic[id(p)].reshape(-1)
        for i in indices:
            original = flat[i]
            flat[i] = original + perturbation
            f_plus = float(fn(ComputationTape.inference()).value)
            flat[i] = original - perturbation
            f_minus = float(fn(ComputationTape.inference()).value)
            flat[i] = original
            numeric = (f_plus - f_minus) / (2.0 * perturbation)
            a = grad_flat[i]
            if max(abs(a), abs(numeric)) < negligible:
                continue
            err = abs(a - numeric) / max(abs(a), abs(numeric), floor)
            if err > worst:
                worst = err
                logger.debug(f"{p.name}[{i}]: analítico={a:.3e} numérico={numeric:.3e} err={err:.2e}")
    return worst
