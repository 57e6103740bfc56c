"""
Categorías de error del proyecto.

Cada excepción lleva una categoría y un código de salida que usa la CLI
(configuration | data | usage | numerical).
"""


class QmixDsaError(Exception):
    """Error base de qmix_dsa."""
    category = "error"
    exit_code = 1


class ConfigurationError(QmixDsaError, ValueError):
    """Parámetros inválidos o incoherentes (dimensiones, rangos, claves)."""
    category = "configuration"
    exit_code = 2


class DataError(QmixDsaError):
    """Ficheros corruptos, trazas mal formadas o fallos de E/S."""
    category = "data"
    exit_code = 3

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class UsageError(QmixDsaError, RuntimeError):
    """Llamada fuera de orden (cinta ya consumida, buffer vacío...)."""
    category = "usage"
    exit_code = 4


class NumericalError(QmixDsaError, ArithmeticError):
    """Aparece un NaN o un Inf en un valor o gradiente."""
    category = "numerical"
    exit_code = 5
