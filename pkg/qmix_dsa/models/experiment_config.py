from dataclasses import asdict, dataclass, field, fields, replace
from math import comb
from typing import Any, Dict, List, Optional

from ..errors import ConfigurationError

ENV_KINDS = ("markov", "periodic", "correlated", "trace", "switching")
ALGORITHMS = ("qmix", "iql", "random")


def coerce_value(key: str, value: Any, expected: type, optional: bool = False) -> Any:
    """
    Comprueba el tipo de un valor leído del YAML contra el de su campo.

    bool no se acepta como número ni al revés; un float no se trunca a int.
    Los float admiten cadenas numéricas ("5e-4" llega como str desde YAML).

    Raises:
        ConfigurationError: nombrando la clave.
    """
    if value is None:
        if optional:
            return None
        raise ConfigurationError(f"Valor inválido para '{key}': no puede estar vacío")
    if expected is bool:
        if isinstance(value, bool):
            return value
    elif expected is int:
        if isinstance(value, int) and not isinstance(value, bool):
            return value
    elif expected is float:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
        if isinstance(value, str):
            try:
                return float(value)
            except ValueError:
                pass
    elif isinstance(value, expected):
        return value
    raise ConfigurationError(f"Valor inválido para '{key}': {value!r} (se esperaba {expected.__name__})")


@dataclass
class EnvSpec:
    """Tipo de entorno de canales y sus parámetros."""
    kind: str = "markov"
    markov_low: float = 0.05
    markov_high: float = 0.95
    periodic_groups: int = 4
    periodic_switch_prob: float = 0.75
    correlated_subsets: Optional[List[int]] = None
    correlated_switch_prob: float = 0.3
    trace_path: Optional[str] = None
    trace_wrap: bool = False
    switch_first: str = "periodic"
    switch_second: str = "correlated"
    switch_epoch: int = 150

    @classmethod
    def from_dict(cls, data: Dict[str, Any] | None) -> "EnvSpec":
        """Crea un EnvSpec desde la sección ``env`` del YAML."""
        data = dict(data or {})
        known = {"kind", "markov", "periodic", "correlated", "trace", "switching"}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"Claves desconocidas en 'env': {sorted(unknown)}")

        def section(name: str, keys: set) -> dict:
            values = data.get(name) or {}
            if not isinstance(values, dict):
                raise ConfigurationError(f"La sección 'env.{name}' debe ser un mapeo")
            bad = set(values) - keys
            if bad:
                raise ConfigurationError(f"Claves desconocidas en 'env.{name}': {sorted(bad)}")
            return values

        markov = section("markov", {"low", "high"})
        periodic = section("periodic", {"num_groups", "switch_prob"})
        correlated = section("correlated", {"subset_sizes", "leader_switch_prob"})
        trace = section("trace", {"path", "wrap"})
        switching = section("switching", {"first", "second", "switch_epoch"})
        defaults = cls()

        def get(values: dict, name: str, key: str, expected: type, default, optional: bool = False):
            if key not in values:
                return default
            return coerce_value(f"env.{name}.{key}" if name else f"env.{key}", values[key], expected, optional)

        subsets = get(correlated, "correlated", "subset_sizes", list, defaults.correlated_subsets, optional=True)
        if subsets is not None:
            subsets = [coerce_value("env.correlated.subset_sizes", s, int) for s in subsets]
        return cls(
            kind=get(data, "", "kind", str, defaults.kind),
            markov_low=get(markov, "markov", "low", float, defaults.markov_low),
            markov_high=get(markov, "markov", "high", float, defaults.markov_high),
            periodic_groups=get(periodic, "periodic", "num_groups", int, defaults.periodic_groups),
            periodic_switch_prob=get(periodic, "periodic", "switch_prob", float, defaults.periodic_switch_prob),
            correlated_subsets=subsets,
            correlated_switch_prob=get(correlated, "correlated", "leader_switch_prob", float,
                                       defaults.correlated_switch_prob),
            trace_path=get(trace, "trace", "path", str, defaults.trace_path, optional=True),
            trace_wrap=get(trace, "trace", "wrap", bool, defaults.trace_wrap),
            switch_first=get(switching, "switching", "first", str, defaults.switch_first),
            switch_second=get(switching, "switching", "second", str, defaults.switch_second),
            switch_epoch=get(switching, "switching", "switch_epoch", int, defaults.switch_epoch),
        )

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "markov": {"low": self.markov_low, "high": self.markov_high},
            "periodic": {"num_groups": self.periodic_groups, "switch_prob": self.periodic_switch_prob},
            "correlated": {"subset_sizes": self.correlated_subsets,
                           "leader_switch_prob": self.correlated_switch_prob},
            "trace": {"path": self.trace_path, "wrap": self.trace_wrap},
            "switching": {"first": self.switch_first, "second": self.switch_second,
                          "switch_epoch": self.switch_epoch},
        }

    def validate(self):
        if self.kind not in ENV_KINDS:
            raise ConfigurationError(f"Tipo de entorno no soportado: '{self.kind}'. Opciones: {ENV_KINDS}")
        if not 0.0 < self.markov_low < self.markov_high < 1.0:
            raise ConfigurationError("env.markov: se requiere 0 < low < high < 1")
        if not 0.0 <= self.periodic_switch_prob <= 1.0:
            raise ConfigurationError("env.periodic.switch_prob debe estar en [0, 1]")
        if not 0.0 < self.correlated_switch_prob < 1.0:
            raise ConfigurationError("env.correlated.leader_switch_prob debe estar en (0, 1)")
        if self.kind == "switching":
            for sub in (self.switch_first, self.switch_second):
                if sub not in ENV_KINDS or sub == "switching":
                    raise ConfigurationError(f"env.switching: tipo de entorno inválido '{sub}'")
            if self.switch_epoch < 1:
                raise ConfigurationError("env.switching.switch_epoch debe ser >= 1")
        uses_trace = self.kind == "trace" or (
            self.kind == "switching" and "trace" in (self.switch_first, self.switch_second))
        if uses_trace and not self.trace_path:
            raise ConfigurationError("env.trace.path es obligatorio para entornos de traza")


@dataclass
class ExperimentConfig:
    """Todos los parámetros de un experimento. Los valores por defecto son los de referencia."""
    num_channels: int = 16
    num_users: int = 3
    num_sensed: int = 2
    slots_per_episode: int = 20
    gamma: float = 1.0
    learning_rate: float = 5e-4
    batch_size: int = 16
    epsilon_start: float = 0.4
    epsilon_end: float = 0.05
    epsilon_decay_steps: int = 10000
    target_sync_interval: int = 40
    buffer_capacity: int = 2000
    episodes_per_epoch: int = 10
    train_steps_per_epoch: int = 8
    epoch_max: int = 300
    seed: int = 0
    algorithm: str = "qmix"
    agent_hidden_dim: int = 64
    mixing_hidden_dim: int = 32
    hypernet_hidden_dim: int = 32
    grad_clip_norm: float = 10.0
    eval_interval: int = 10
    eval_episodes: int = 20
    checkpoint_interval: int = 50
    reset_on_degradation: bool = False
    degradation_window: int = 20
    degradation_ratio: float = 0.6
    output_dir: str = "./runs"
    metrics_file: str = "metrics.csv"
    checkpoint_file: str = "checkpoint.qckpt"
    env: EnvSpec = field(default_factory=EnvSpec)

    @classmethod
    def from_dict(cls, data: Dict[str, Any] | None, env: Dict[str, Any] | None = None) -> "ExperimentConfig":
        """
        Crea la configuración desde la sección plana ``experiment`` del YAML.
        Las claves ausentes toman el valor por defecto; las desconocidas son un error.
        """
        data = dict(data or {})
        names = {f.name for f in fields(cls)} - {"env"}
        unknown = set(data) - names
        if unknown:
            raise ConfigurationError(f"Claves desconocidas en 'experiment': {sorted(unknown)}")
        kwargs = {}
        for f in fields(cls):
            if f.name == "env" or f.name not in data:
                continue
            kwargs[f.name] = coerce_value(f.name, data[f.name], type(getattr(cls(), f.name)))
        config = cls(**kwargs, env=EnvSpec.from_dict(env))
        config.validate()
        return config

    def to_dict(self) -> dict:
        data = asdict(self)
        data.pop("env")
        return {"experiment": data, "env": self.env.to_dict()}

    def with_overrides(self, **overrides) -> "ExperimentConfig":
        env = overrides.pop("env", None)
        config = replace(self, **overrides)
        if env is not None:
            config.env = env if isinstance(env, EnvSpec) else EnvSpec.from_dict({**self.env.to_dict(), **env})
        config.validate()
        return config

    @property
    def num_actions(self) -> int:
        return comb(self.num_channels, self.num_sensed)

    def validate(self):
        """Comprueba rangos y coherencia; lanza ConfigurationError nombrando la clave."""
        def require(condition: bool, key: str, message: str):
            if not condition:
                raise ConfigurationError(f"Configuración inválida '{key}': {message}")

        require(self.num_channels >= 1, "num_channels", "debe ser >= 1")
        require(self.num_users >= 1, "num_users", "debe ser >= 1")
        require(1 <= self.num_sensed <= self.num_channels, "num_sensed", "se requiere 1 <= M <= K")
        require(self.slots_per_episode >= 1, "slots_per_episode", "debe ser >= 1")
        require(0.0 <= self.gamma <= 1.0, "gamma", "debe estar en [0, 1]")
        require(self.learning_rate > 0, "learning_rate", "debe ser > 0")
        require(self.batch_size >= 1, "batch_size", "debe ser >= 1")
        require(0.0 <= self.epsilon_end <= self.epsilon_start <= 1.0, "epsilon_start",
                "se requiere 0 <= epsilon_end <= epsilon_start <= 1")
        require(self.epsilon_decay_steps >= 1, "epsilon_decay_steps", "debe ser >= 1")
        require(self.target_sync_interval >= 1, "target_sync_interval", "debe ser >= 1")
        require(self.buffer_capacity >= 1, "buffer_capacity", "debe ser >= 1")
        require(self.episodes_per_epoch >= 1, "episodes_per_epoch", "debe ser >= 1")
        require(self.train_steps_per_epoch >= 0, "train_steps_per_epoch", "debe ser >= 0")
        require(self.epoch_max >= 0, "epoch_max", "debe ser >= 0")
        require(self.seed >= 0, "seed", "debe ser >= 0")
        require(self.algorithm in ALGORITHMS, "algorithm", f"opciones: {ALGORITHMS}")
        for key in ("agent_hidden_dim", "mixing_hidden_dim", "hypernet_hidden_dim"):
            require(getattr(self, key) >= 1, key, "debe ser >= 1")
        require(self.grad_clip_norm >= 0, "grad_clip_norm", "debe ser >= 0 (0 desactiva el recorte)")
        require(self.eval_interval >= 0, "eval_interval", "debe ser >= 0 (0 desactiva la evaluación)")
        require(self.eval_episodes >= 0, "eval_episodes", "debe ser >= 0")
        require(self.checkpoint_interval >= 0, "checkpoint_interval", "debe ser >= 0")
        require(self.degradation_window >= 1, "degradation_window", "debe ser >= 1")
        require(0.0 < self.degradation_ratio < 1.0, "degradation_ratio", "debe estar en (0, 1)")
        self.env.validate()
