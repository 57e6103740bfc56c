import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional

import numpy as np

from .. import seeding
from ..envsim.channel_factory import ChannelFactory
from ..envsim.environment import SpectrumEnvironment
from ..errors import ConfigurationError, DataError, QmixDsaError
from ..models.checkpoint import Checkpoint
from ..models.episode_record import EpisodeRecord
from ..models.experiment_config import ExperimentConfig
from ..models.metrics_row import PHASE_EVAL, PHASE_TRAIN, MetricsRow
from ..services.checkpoint_store import load_checkpoint, save_checkpoint
from ..services.metrics_logger import MetricsLogger, read_metrics
from .degradation import DegradationDetector
from .episode_runner import run_episode, summarize_episode
from .learner_factory import LearnerFactory
from .learner_interface import LearnerInterface
from .trainer import Trainer, TrainerState

ProgressCallback = Callable[[Optional[str], str, str], None]
EpisodeHook = Callable[[EpisodeRecord], None]


@dataclass
class ExperimentResult:
    """Resultado de una ejecución completa."""
    metrics_path: Path
    checkpoint_path: Path
    rows: List[MetricsRow] = field(default_factory=list)
    epochs_run: int = 0
    resets: int = 0
    status: str = "PASS"
    switch_episode: Optional[int] = None
    reset_episodes: List[int] = field(default_factory=list)

    def detection_delay(self) -> Optional[int]:
        """Episodios de entrenamiento desde el cambio de entorno hasta el primer reinicio (incluido)."""
        if self.switch_episode is None:
            return None
        after = [e for e in self.reset_episodes if e >= self.switch_episode]
        return after[0] - self.switch_episode + 1 if after else None

    def train_rows(self) -> List[MetricsRow]:
        return [r for r in self.rows if r.phase == PHASE_TRAIN]

    def eval_rows(self) -> List[MetricsRow]:
        return [r for r in self.rows if r.phase == PHASE_EVAL]

    def to_dict(self) -> dict:
        return {
            "metrics_path": str(self.metrics_path),
            "checkpoint_path": str(self.checkpoint_path),
            "epochs_run": self.epochs_run,
            "resets": self.resets,
            "status": self.status,
            "rows": len(self.rows),
            "detection_delay": self.detection_delay(),
        }


def build_environment(config: ExperimentConfig) -> SpectrumEnvironment:
    model = ChannelFactory.create_model(config.env, config.num_channels, config.seed,
                                        num_slots=config.slots_per_episode)
    return SpectrumEnvironment.from_seed(model, config.num_users, config.num_sensed, config.seed)


def evaluation_environment(env: SpectrumEnvironment, seed: int, epoch: int) -> SpectrumEnvironment:
    """Copia del entorno con streams propios del bloque de evaluación de ``epoch``."""
    return env.fork(seeding.make_rng(seed, seeding.EVALUATION, epoch, 0),
                    seeding.make_rng(seed, seeding.EVALUATION, epoch, 1))


def greedy_rollouts(env: SpectrumEnvironment, learner: LearnerInterface, episodes: int, num_slots: int,
                    rng: np.random.Generator, epoch: int = 0, resets: int = 0,
                    episode_hook: Optional[EpisodeHook] = None) -> List[MetricsRow]:
    """Episodios con ε = 0: cada agente decide solo con su observación, acción previa y oculto."""
    rows = []
    for k in range(episodes):
        episode = run_episode(env, learner, num_slots, rng, epsilon=0.0)
        if episode_hook is not None:
            episode_hook(episode)
        rows.append(summarize_episode(episode, epoch, k, 0.0, phase=PHASE_EVAL, resets=resets))
    return rows


class ExperimentRunner:
    """
    Orquesta un experimento completo (bucle de épocas, evaluación, reinicios
    por degradación, métricas y checkpoints) y reporta el progreso a través
    de una función callback.
    """

    def __init__(self, config: ExperimentConfig, progress_callback: Optional[ProgressCallback] = None):
        """
        Args:
            config: configuración ya validada del experimento.
            progress_callback: función (step_id, mensaje, estado) para seguir el progreso.
        """
        config.validate()
        self.config = config
        self.callback = progress_callback
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")
        self.output_dir = Path(config.output_dir)
        self.metrics_path = self.output_dir / config.metrics_file
        self.checkpoint_path = self.output_dir / config.checkpoint_file

        self.env: Optional[SpectrumEnvironment] = None
        self.learner: Optional[LearnerInterface] = None
        self.trainer: Optional[Trainer] = None
        self.detector = DegradationDetector(config.degradation_window, config.degradation_ratio)
        self.switch_episode: Optional[int] = None
        self.reset_episodes: List[int] = []

    def _report(self, message: str, status: str = "INFO", *, step_id: str = None):
        """Método centralizado para el log y el callback de progreso."""
        level = logging.WARNING if status in ("WARN", "FAIL") else logging.INFO
        self.logger.log(level, message)
        if self.callback:
            self.callback(step_id, message, status)

    def _setup(self):
        self.env = build_environment(self.config)
        weights_rng = seeding.make_rng(self.config.seed, seeding.WEIGHTS)
        self.learner = LearnerFactory.create_learner(self.config, weights_rng)
        self.trainer = Trainer(self.config, self.learner, self.env, weights_rng)
        self.detector.reset()
        self.switch_episode = None
        self.reset_episodes = []

    def run(self, resume_from: str | Path | None = None) -> ExperimentResult:
        """
        Punto de entrada principal: ejecuta las épocas pendientes hasta epoch_max.

        Args:
            resume_from: checkpoint desde el que reanudar (mismo config).
        """
        self._setup()
        result = ExperimentResult(self.metrics_path, self.checkpoint_path)
        metrics = MetricsLogger(self.metrics_path)
        start_epoch = 1

        if resume_from is not None:
            checkpoint = load_checkpoint(resume_from)
            self.restore(checkpoint)
            start_epoch = self.trainer.state.epoch + 1
            kept = [r for r in self._previous_rows() if r.epoch < start_epoch]
            result.rows.extend(kept)
            metrics.start(kept)
            self._report(f"Reanudando desde {resume_from} en la época {start_epoch}", "INFO", step_id="resume")
        else:
            metrics.start()

        self._report(f"--- Iniciando experimento: {self.learner.get_info()['type']}, "
                     f"{self.env.model.get_info()['type']}, {self.config.epoch_max} épocas ---",
                     "HEADER", step_id="start")
        try:
            for epoch in range(start_epoch, self.config.epoch_max + 1):
                rows = self._run_epoch(epoch)
                metrics.append(rows)
                result.rows.extend(rows)
                result.epochs_run += 1

                if self.config.checkpoint_interval and epoch % self.config.checkpoint_interval == 0:
                    save_checkpoint(self.checkpoint_path, self.snapshot())
            save_checkpoint(self.checkpoint_path, self.snapshot())
        except QmixDsaError as e:
            result.status = "FAIL"
            metrics.mark_partial(f"{e.category}: {e}")
            self._report(f"ERROR CRÍTICO: {e}", "FAIL", step_id="critical_error")
            raise
        except OSError as e:
            result.status = "FAIL"
            metrics.mark_partial(f"data: {e}")
            raise DataError(f"Fallo de E/S durante el experimento: {e}")

        result.resets = self.trainer.state.resets
        result.switch_episode = self.switch_episode
        result.reset_episodes = list(self.reset_episodes)
        self._report(f"Experimento finalizado: {result.epochs_run} épocas, {len(result.rows)} filas, "
                     f"{result.resets} reinicios", "PASS", step_id="final_summary")
        return result

    def _run_epoch(self, epoch: int) -> List[MetricsRow]:
        epoch_result = self.trainer.train_epoch(epoch)
        first_index = self.trainer.state.episodes - len(epoch_result.episodes)
        if epoch_result.env_switched:
            self.switch_episode = first_index
            self._report(f"Época {epoch}: cambio de entorno", "WARN", step_id="env_switch")

        rows = []
        degraded = False
        resets = self.trainer.state.resets
        for k, (episode, eps) in enumerate(zip(epoch_result.episodes, epoch_result.epsilons)):
            row = summarize_episode(episode, epoch, first_index + k, eps, epoch_result.mean_loss,
                                    PHASE_TRAIN, resets)
            rows.append(row)
            if self.config.reset_on_degradation and not degraded:
                degraded = self.detector.update(row.success_rate, armed=self.trainer.exploration_settled)
                if degraded:
                    self.reset_episodes.append(first_index + k)

        if degraded:
            self.trainer.reset()
            self.detector.reset()
            self._report(f"Época {epoch}: degradación detectada, reinicio del aprendizaje", "WARN",
                         step_id="degradation_reset")

        if self.config.eval_interval and self.config.eval_episodes and epoch % self.config.eval_interval == 0:
            eval_env = evaluation_environment(self.env, self.config.seed, epoch)
            eval_rng = seeding.make_rng(self.config.seed, seeding.EVALUATION, epoch, 2)
            eval_rows = greedy_rollouts(eval_env, self.learner, self.config.eval_episodes,
                                        self.config.slots_per_episode, eval_rng, epoch, self.trainer.state.resets)
            rows.extend(eval_rows)
            mean_rate = float(np.mean([r.success_rate for r in eval_rows]))
            self._report(f"Época {epoch}: evaluación greedy, tasa de éxito media {mean_rate:.3f}", "INFO",
                         step_id="evaluation")

        train_rate = float(np.mean([r.success_rate for r in rows if r.phase == PHASE_TRAIN]))
        self._report(f"Época {epoch}/{self.config.epoch_max}: éxito {train_rate:.3f}, "
                     f"ε={self.trainer.epsilon:.3f}, pérdida={epoch_result.mean_loss:.4f}", "INFO", step_id="epoch")
        return rows

    def _previous_rows(self) -> List[MetricsRow]:
        if not self.metrics_path.exists():
            return []
        return read_metrics(self.metrics_path)

    def snapshot(self) -> Checkpoint:
        """Checkpoint con todo el estado necesario para reanudar de forma exacta."""
        arrays = dict(self.learner.state_arrays())
        arrays.update(self.trainer.buffer.to_arrays())
        counters = dict(self.trainer.state.to_dict())
        counters.update(self.learner.counters())
        counters["buffer_size"] = len(self.trainer.buffer)
        runtime = {
            "rng": self.trainer.rng_states(),
            "env": self.env.runtime_state(),
            "detector": self.detector.state(),
        }
        return Checkpoint(config=self.config.to_dict(), arrays=arrays, counters=counters, runtime=runtime)

    def restore(self, checkpoint: Checkpoint):
        """Aplica un checkpoint sobre el experimento recién construido (mismo config)."""
        check_compatible(self.config, checkpoint)
        self.learner.load_state_arrays(checkpoint.arrays, checkpoint.counters)
        self.trainer.buffer.load_arrays(checkpoint.arrays, checkpoint.counters.get("buffer_size", 0))
        self.trainer.state = TrainerState.from_dict(checkpoint.counters)
        runtime = checkpoint.runtime
        self.trainer.restore_rng_states(runtime["rng"])
        self.env.restore_runtime_state(runtime["env"])
        self.detector.restore(runtime.get("detector", {}))


def check_compatible(config: ExperimentConfig, checkpoint: Checkpoint):
    """K, N, M y algoritmo deben coincidir con los del checkpoint."""
    saved = ExperimentConfig.from_dict(checkpoint.config.get("experiment"), checkpoint.config.get("env"))
    for key in ("num_channels", "num_users", "num_sensed", "algorithm",
                "agent_hidden_dim", "mixing_hidden_dim", "hypernet_hidden_dim"):
        if getattr(saved, key) != getattr(config, key):
            raise ConfigurationError(f"El checkpoint no corresponde a la configuración: '{key}' = "
                                     f"{getattr(saved, key)!r} en el checkpoint, {getattr(config, key)!r} en la config")


def run_experiment(config: ExperimentConfig, progress_callback: Optional[ProgressCallback] = None,
                   resume_from: str | Path | None = None) -> ExperimentResult:
    return ExperimentRunner(config, progress_callback).run(resume_from)


def evaluate(checkpoint_path: str | Path, episodes: int, config: ExperimentConfig | None = None,
             seed: int | None = None, episode_hook: Optional[EpisodeHook] = None) -> List[MetricsRow]:
    """
    Ejecuta ``episodes`` episodios greedy con los parámetros θ del checkpoint.
    Solo se usan las redes de agente; la red de mezcla y el estado global no
    intervienen. ``episode_hook`` recibe cada episodio jugado (estados incluidos).
    """
    checkpoint = load_checkpoint(checkpoint_path)
    saved = ExperimentConfig.from_dict(checkpoint.config.get("experiment"), checkpoint.config.get("env"))
    if config is None:
        config = saved
    else:
        check_compatible(config, checkpoint)
    if seed is not None:
        config = config.with_overrides(seed=seed)

    learner = LearnerFactory.create_learner(config, seeding.make_rng(config.seed, seeding.WEIGHTS))
    learner.load_state_arrays(checkpoint.arrays, checkpoint.counters)
    env = build_environment(config)
    if seed is None and config.env == saved.env and "env" in checkpoint.runtime:
        # Mismo punto del proceso de canales (y modelo activo) que al guardar
        env.restore_runtime_state(checkpoint.runtime["env"])
    env = evaluation_environment(env, config.seed, 0)
    rng = seeding.make_rng(config.seed, seeding.EVALUATION, 0, 2)
    epoch = int(checkpoint.counters.get("epoch", 0))
    return greedy_rollouts(env, learner, episodes, config.slots_per_episode, rng, epoch,
                           int(checkpoint.counters.get("resets", 0)), episode_hook)
