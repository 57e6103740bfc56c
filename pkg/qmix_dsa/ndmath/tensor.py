"""
Tensores de parámetros y el almacén de parámetros (θ, θ⁻).
"""
from dataclasses import dataclass, field
from typing import Dict, Iterator, Sequence

import numpy as np

from ..errors import ConfigurationError, DataError, NumericalError


@dataclass(eq=False)
class ParamTensor:
    """Un tensor entrenable en doble precisión con su gradiente acumulado."""
    name: str
    values: np.ndarray
    grad: np.ndarray = field(default=None)
    accumulated: bool = field(default=False, repr=False)

    def __post_init__(self):
        self.values = np.array(self.values, dtype=np.float64)
        if any(d <= 0 for d in self.values.shape):
            raise ConfigurationError(f"Forma inválida para '{self.name}': {self.values.shape}")
        if self.grad is None:
            self.grad = np.zeros_like(self.values)
        else:
            self.grad = np.array(self.grad, dtype=np.float64)
            if self.grad.shape != self.values.shape:
                raise ConfigurationError(f"Gradiente de '{self.name}' con forma distinta a los valores.")
        self.check_finite()

    @property
    def shape(self) -> tuple:
        return self.values.shape

    @property
    def size(self) -> int:
        return self.values.size

    def zero_grad(self):
        self.grad.fill(0.0)
        self.accumulated = False

    def accumulate(self, g: np.ndarray):
        """Suma ``g`` al gradiente y marca el parámetro como tocado por un backward."""
        self.grad += g
        self.accumulated = True

    def check_finite(self):
        """Lanza NumericalError si algún valor o gradiente no es finito."""
        if not np.all(np.isfinite(self.values)):
            raise NumericalError(f"Valores no finitos en el parámetro '{self.name}'.")
        if not np.all(np.isfinite(self.grad)):
            raise NumericalError(f"Gradiente no finito en el parámetro '{self.name}'.")

    @classmethod
    def zeros(cls, name: str, shape: Sequence[int]) -> "ParamTensor":
        return cls(name, np.zeros(tuple(shape)))

    @classmethod
    def uniform(cls, name: str, shape: Sequence[int], fan_in: int, rng: np.random.Generator) -> "ParamTensor":
        """Inicialización U[-1/sqrt(fan_in), +1/sqrt(fan_in)]."""
        bound = 1.0 / np.sqrt(fan_in)
        return cls(name, rng.uniform(-bound, bound, size=tuple(shape)))


class ParameterStore:
    """
    Colección ordenada y con nombre de ParamTensors.

    Los nombres llevan prefijo por red ("agent.", "agent3.", "mixer.") para que
    un mismo almacén contenga todo θ.
    """

    def __init__(self, params: Sequence[ParamTensor] = ()):
        self._params: Dict[str, ParamTensor] = {}
        for p in params:
            self.add(p)

    def add(self, param: ParamTensor) -> ParamTensor:
        if param.name in self._params:
            raise ConfigurationError(f"Parámetro duplicado: '{param.name}'")
        self._params[param.name] = param
        return param

    def __getitem__(self, name: str) -> ParamTensor:
        return self._params[name]

    def __contains__(self, name: str) -> bool:
        return name in self._params

    def __iter__(self) -> Iterator[ParamTensor]:
        return iter(self._params.values())

    def __len__(self) -> int:
        return len(self._params)

    def names(self) -> list:
        return list(self._params.keys())

    def with_prefix(self, prefix: str) -> list:
        return [p for name, p in self._params.items() if name.startswith(prefix)]

    def zero_grad(self):
        for p in self:
            p.zero_grad()

    def num_values(self) -> int:
        return sum(p.size for p in self)

    def copy(self) -> "ParameterStore":
        """Copia profunda (valores y gradientes)."""
        return ParameterStore([ParamTensor(p.name, p.values.copy(), p.grad.copy()) for p in self])

    def copy_from(self, other: "ParameterStore"):
        """Sobrescribe los valores con los de ``other`` (mismos nombres y formas)."""
        for p in self:
            source = other[p.name]
            if source.shape != p.shape:
                raise ConfigurationError(f"Forma incompatible al copiar '{p.name}'.")
            p.values[...] = source.values

    def equals(self, other: "ParameterStore") -> bool:
        """Igualdad byte a byte de todos los valores."""
        if self.names() != other.names():
            return False
        return all(p.values.tobytes() == other[p.name].values.tobytes() for p in self)

    def to_arrays(self) -> Dict[str, np.ndarray]:
        return {p.name: p.values.copy() for p in self}

    def load_arrays(self, arrays: Dict[str, np.ndarray]):
        """Carga valores por nombre; valida todo antes de tocar ningún parámetro."""
        for p in self:
            if p.name not in arrays:
                raise DataError(f"Falta el array '{p.name}' en los datos cargados.")
            if tuple(np.shape(arrays[p.name])) != p.shape:
                raise DataError(
                    f"Forma incorrecta para '{p.name}': {np.shape(arrays[p.name])} (esperado {p.shape})")
        for p in self:
            p.values[...] = arrays[p.name]
            p.check_finite()
