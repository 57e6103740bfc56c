# random_policy e iql dependen de engine: se importan desde su módulo
from .oracle import OracleReport, oracle_upper_bound

__all__ = ["OracleReport", "oracle_upper_bound"]
