import argparse
import json
import logging
import sys
from pathlib import Path

from dotenv import load_dotenv

from qmix_dsa import seeding
from qmix_dsa.config import ConfigManager
from qmix_dsa.errors import QmixDsaError, UsageError

logger = logging.getLogger("qmix_dsa")


def setup_logging(level: str = "INFO", log_dir: str | None = None):
    """Consola y, si se indica directorio, fichero <log_dir>/qmix_dsa.log."""
    handlers = [logging.StreamHandler()]
    if log_dir:
        Path(log_dir).mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(Path(log_dir) / "qmix_dsa.log", encoding="utf-8"))
    logging.basicConfig(level=getattr(logging, level, logging.INFO), handlers=handlers, force=True,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def print_progress(step_id, message, status):
    print(f"[{status}] {message}")


def _load(path: str | None) -> ConfigManager:
    config = ConfigManager(Path(path)) if path else ConfigManager.from_dict({})
    setup_logging(config.log_level, config.log_file_path)
    return config


def cmd_train(args) -> int:
    from qmix_dsa.engine.experiment_runner import run_experiment

    config = _load(args.config)
    result = run_experiment(config.experiment, print_progress, resume_from=args.resume)
    print(json.dumps(result.to_dict(), indent=2, ensure_ascii=False))
    return 0


def cmd_eval(args) -> int:
    import numpy as np
    from qmix_dsa.engine.experiment_runner import evaluate

    config = _load(args.config).experiment if args.config else None
    if config is None:
        setup_logging()
    rows = evaluate(args.checkpoint, args.episodes, config, seed=args.seed)
    summary = {
        "episodes": len(rows),
        "success_rate": float(np.mean([r.success_rate for r in rows])) if rows else None,
        "successes_per_episode": float(np.mean([r.successes for r in rows])) if rows else None,
        "collisions_per_episode": float(np.mean([r.collisions for r in rows])) if rows else None,
        "oracle_bound": float(np.mean([r.oracle_bound for r in rows])) if rows else None,
    }
    print(json.dumps(summary, indent=2))
    return 0


def cmd_oracle(args) -> int:
    from qmix_dsa.baselines.random_policy import oracle_summary
    from qmix_dsa.engine.experiment_runner import build_environment

    config = _load(args.config).experiment
    env = build_environment(config)
    summary = oracle_summary(env, config, args.episodes, seeding.make_rng(config.seed, seeding.EXPLORATION))
    print(json.dumps(summary, indent=2))
    return 0


def cmd_gradcheck(args) -> int:
    from qmix_dsa.engine.gradient_suite import GRADCHECK_TOLERANCE, run_gradient_checks

    setup_logging()
    results = run_gradient_checks(seed=args.seed, max_entries=args.max_entries)
    failed = False
    for name, err in results.items():
        status = "PASS" if err < GRADCHECK_TOLERANCE else "FAIL"
        failed |= status == "FAIL"
        print(f"[{status}] {name}: {err:.3e}")
    return 1 if failed else 0


def cmd_plot(args) -> int:
    from qmix_dsa.services.plot_exporter import export_plot

    setup_logging()
    export_plot(args.csv, args.svg, window=args.window)
    print(f"Gráfico escrito en {args.svg}")
    return 0


def cmd_scenario(args) -> int:
    from qmix_dsa.engine.scenario_runner import run_scenario

    config = _load(args.config)
    outcome = run_scenario(args.key, config.experiment, print_progress, eval_episodes=args.eval_episodes)
    for variant in outcome.variants:
        print(f"{variant.label}: éxito {variant.success_rate:.3f}, oráculo {variant.oracle_fraction:.3f}, "
              f"ratio {variant.oracle_ratio:.3f}, reinicios {variant.result.resets}"
              + (f", detección en {variant.detection_delay} episodios" if variant.detection_delay is not None else ""))
    for name, ok in outcome.checks.items():
        print(f"[{'PASS' if ok else 'FAIL'}] {name}")
    return 0 if outcome.status == "PASS" else 1


def cmd_scenarios(args) -> int:
    from qmix_dsa.engine.scenario_definition import SCENARIOS

    for scenario in SCENARIOS:
        labels = ", ".join(v['label'] for v in scenario['variants'])
        print(f"{scenario['key']}: {labels}")
    return 0


class CliParser(argparse.ArgumentParser):
    """Los errores de argumentos salen con la categoría usage (código 4)."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog="qmix-dsa", description="QMIX para acceso dinámico al espectro")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    p = sub.add_parser("train", help="Entrena según un fichero de configuración")
    p.add_argument("config")
    p.add_argument("--resume", help="Checkpoint desde el que reanudar")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="Evaluación greedy de un checkpoint")
    p.add_argument("checkpoint")
    p.add_argument("--episodes", type=int, default=200)
    p.add_argument("--config", help="Configuración (K, N, M deben coincidir con el checkpoint)")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("oracle", help="Cota del oráculo y baseline aleatorio")
    p.add_argument("config")
    p.add_argument("--episodes", type=int, default=100)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gradcheck", help="Comprobación de gradientes por diferencias finitas")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-entries", type=int, default=40)
    p.set_defaults(func=cmd_gradcheck)

    p = sub.add_parser("plot", help="Exporta las curvas de un CSV de métricas a SVG")
    p.add_argument("csv")
    p.add_argument("svg")
    p.add_argument("--window", type=int, default=20)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("scenario", help="Ejecuta un escenario predefinido")
    p.add_argument("key")
    p.add_argument("--config", help="Configuración base")
    p.add_argument("--eval-episodes", type=int, default=200)
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("scenarios", help="Lista los escenarios predefinidos")
    p.set_defaults(func=cmd_scenarios)
    return parser


def main(argv=None) -> int:
    load_dotenv()
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except QmixDsaError as e:
        print(f"ERROR [{e.category}]: {e}", file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        print("\nInterrumpido por el usuario.", file=sys.stderr)
        return 130
    except Exception as e:
        logger.exception("Error inesperado")
        print(f"\nOcurrió un error fatal: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
