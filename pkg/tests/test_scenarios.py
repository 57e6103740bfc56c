from pathlib import Path
from unittest.mock import patch

import numpy as np
import pytest

from qmix_dsa.engine.experiment_runner import ExperimentResult
from qmix_dsa.engine.scenario_definition import SCENARIOS
from qmix_dsa.engine.scenario_runner import (get_scenario, list_scenarios, run_scenario, scenario_config,
                                             structure_model)
from qmix_dsa.errors import ConfigurationError
from qmix_dsa.models.episode_record import EpisodeRecord
from qmix_dsa.models.experiment_config import ExperimentConfig
from qmix_dsa.models.metrics_row import PHASE_EVAL, MetricsRow


def _eval_rows(success_rate, oracle_bound, count=4, num_users=3, num_slots=20):
    demand = num_users * num_slots
    successes = round(success_rate * demand)
    return [MetricsRow(epoch=300, episode=k, successes=successes, collisions=0, silent=demand - successes,
                       total_reward=2 * successes, success_rate=successes / demand, oracle_bound=oracle_bound,
                       epsilon=0.0, phase=PHASE_EVAL)
            for k in range(count)]


def _result(tmp_path, resets=0, switch_episode=None, reset_episodes=()):
    return ExperimentResult(tmp_path / "metrics.csv", tmp_path / "checkpoint.qckpt", resets=resets,
                            switch_episode=switch_episode, reset_episodes=list(reset_episodes))


def test_list_and_get_scenarios():
    keys = list_scenarios()

    assert "markov_qmix_vs_iql" in keys and "periodic_to_correlated" in keys
    assert get_scenario("periodic")["expect"] == {"oracle_ratio": 0.90}
    with pytest.raises(ConfigurationError, match="Escenario desconocido"):
        get_scenario("lte")


def test_scenario_config_variants(tmp_path):
    """
    Test que verifica que cada variante hereda la base, aplica sus overrides y escribe en su propio directorio.
    """
    base = ExperimentConfig(output_dir=str(tmp_path))

    configs = scenario_config("markov_qmix_vs_iql", base)

    assert list(configs) == ["qmix", "iql"]
    assert configs["iql"].algorithm == "iql" and configs["iql"].num_users == 6
    assert Path(configs["qmix"].output_dir) == tmp_path / "markov_qmix_vs_iql" / "qmix"
    assert base.num_users == 3

    switching = scenario_config("markov_to_markov", base)["qmix"]
    assert switching.reset_on_degradation is True
    assert (switching.env.kind, switching.env.switch_first, switching.env.switch_second) == \
        ("switching", "markov", "markov")


def test_run_scenario_pass_and_fail(tmp_path):
    """
    Test que verifica los umbrales de tasa de éxito y ratio frente al oráculo con entrenamiento simulado.
    """
    base = ExperimentConfig(output_dir=str(tmp_path))
    with patch("qmix_dsa.engine.scenario_runner.run_experiment", return_value=_result(tmp_path)), \
         patch("qmix_dsa.engine.scenario_runner.evaluate", return_value=_eval_rows(0.9, 57)):
        passed = run_scenario("markov_few_users", base, eval_episodes=4)

    assert passed.checks == {"qmix.success_rate": True, "qmix.oracle_ratio": True}
    assert passed.status == "PASS"
    assert passed.variants[0].oracle_fraction == pytest.approx(0.95)

    with patch("qmix_dsa.engine.scenario_runner.run_experiment", return_value=_result(tmp_path)), \
         patch("qmix_dsa.engine.scenario_runner.evaluate", return_value=_eval_rows(0.5, 57)):
        failed = run_scenario("markov_few_users", base, eval_episodes=4)

    assert failed.checks["qmix.success_rate"] is False
    assert failed.status == "FAIL"


def test_run_scenario_comparison(tmp_path):
    """
    QMIX debe superar a IQL en al menos 0.10 de tasa de éxito.
    """
    def fake_evaluate(path, episodes, config, episode_hook=None):
        rate = 0.9 if config.algorithm == "qmix" else 0.7
        return _eval_rows(rate, 100, num_users=6)

    base = ExperimentConfig(output_dir=str(tmp_path))
    with patch("qmix_dsa.engine.scenario_runner.run_experiment", return_value=_result(tmp_path)), \
         patch("qmix_dsa.engine.scenario_runner.evaluate", side_effect=fake_evaluate):
        outcome = run_scenario("markov_qmix_vs_iql", base, eval_episodes=4)

    assert outcome.checks == {"qmix_vs_iql": True}
    assert [v.label for v in outcome.variants] == ["qmix", "iql"]


def _correlated_episode(config, corrupt=False):
    """Episodio de estados generados por el propio modelo correlado de la configuración."""
    model = structure_model(config)
    rng = np.random.default_rng(0)
    states = [model.initial_state(rng)]
    for _ in range(config.slots_per_episode):
        states.append(model.step(states[-1], rng))
    states = np.array(states)
    if corrupt:
        follower = int(np.argmax(np.bincount(model.leader_of) > 1))
        states[3, model.leaders[follower] + 1] ^= 1
    N, T, K = config.num_users, config.slots_per_episode, config.num_channels
    return EpisodeRecord(states, -np.ones((T + 1, N, K)), np.zeros((T, N)), np.zeros((T, N)))


@pytest.mark.parametrize("reset_episodes, detected", [
    ([3049], True),           # 50 episodios desde el cambio, contando el del reinicio
    ([3050], False),
    ([3000, 3200], True),
    ([1200], False),          # reinicio anterior al cambio: no cuenta
    ([], False),
])
def test_detection_must_happen_within_fifty_episodes_of_switch(tmp_path, reset_episodes, detected):
    """
    Test que verifica que el reinicio tras el cambio de entorno debe llegar en como mucho 50 episodios.
    """
    base = ExperimentConfig(output_dir=str(tmp_path))
    result = _result(tmp_path, resets=len(reset_episodes), switch_episode=3000, reset_episodes=reset_episodes)
    with patch("qmix_dsa.engine.scenario_runner.run_experiment", return_value=result), \
         patch("qmix_dsa.engine.scenario_runner.evaluate", return_value=_eval_rows(0.6, 40)):
        outcome = run_scenario("markov_to_markov", base, eval_episodes=4)

    assert outcome.checks["qmix.detect_within"] is detected
    assert outcome.checks["qmix.oracle_ratio"] is True
    assert outcome.variants[0].detection_delay == result.detection_delay()


def test_detection_delay_counts_from_switch_episode(tmp_path):
    result = _result(tmp_path, switch_episode=3000, reset_episodes=[100, 3004, 3100])

    assert result.detection_delay() == 5
    assert _result(tmp_path).detection_delay() is None
    assert result.to_dict()["detection_delay"] == 5


@pytest.mark.parametrize("key, corrupt", [("correlated", False), ("correlated", True),
                                          ("periodic_to_correlated", False)])
def test_correlated_structure_is_checked_on_evaluation_states(tmp_path, key, corrupt):
    """
    Test que verifica que cada seguidor replica (o invierte) a su líder en todos los estados evaluados.
    """
    base = ExperimentConfig(output_dir=str(tmp_path))
    config = scenario_config(key, base)["qmix"]
    episode = _correlated_episode(config, corrupt)

    def fake_evaluate(path, episodes, config, episode_hook=None):
        assert episode_hook is not None
        episode_hook(episode)
        return _eval_rows(0.6, 40)

    result = _result(tmp_path, resets=1, switch_episode=3000, reset_episodes=[3010])
    with patch("qmix_dsa.engine.scenario_runner.run_experiment", return_value=result), \
         patch("qmix_dsa.engine.scenario_runner.evaluate", side_effect=fake_evaluate):
        outcome = run_scenario(key, base, eval_episodes=1)

    assert outcome.checks["qmix.structure"] is (not corrupt)
    assert outcome.variants[0].structure_violations == (1 if corrupt else 0)


def test_every_training_scenario_with_single_variant_has_expectations():
    """
    Un escenario sin umbrales pasaría siempre; solo los barridos quedan sin ellos.
    """
    for scenario in SCENARIOS:
        if len(scenario['variants']) == 1:
            assert scenario.get('expect'), scenario['key']


def test_structure_model_only_for_correlated_environments(tmp_path):
    base = ExperimentConfig(output_dir=str(tmp_path))

    assert structure_model(scenario_config("markov_to_markov", base)["qmix"]) is None
    assert structure_model(scenario_config("periodic", base)["qmix"]) is None
    assert structure_model(scenario_config("correlated", base)["qmix"]).kind == "correlated"
