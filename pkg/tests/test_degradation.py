import pytest

from qmix_dsa.engine.degradation import DegradationDetector, detect_degradation
from qmix_dsa.errors import ConfigurationError


def test_constant_rate_never_degrades():
    detector = DegradationDetector(window=20, ratio=0.5)

    assert not any(detector.update(0.7) for _ in range(200))
    assert not detect_degradation([0.7] * 200, window=20, ratio=0.5)


def test_sudden_drop_fires_when_window_mean_falls_below_ratio():
    """
    Test que verifica que tras una caída de 1.0 a 0.25 el detector salta en el
    episodio bajo número 14: media 1 - 0.0375·k < 0.5 por primera vez con k = 14.
    """
    detector = DegradationDetector(window=20, ratio=0.5)
    for _ in range(30):
        assert not detector.update(1.0)

    fired = [detector.update(0.25) for _ in range(14)]

    assert fired == [False] * 13 + [True]


def test_detect_degradation_function():
    high = [1.0] * 30
    assert detect_degradation(high + [0.25] * 14, window=20, ratio=0.5)
    assert not detect_degradation(high + [0.25] * 13, window=20, ratio=0.5)
    assert not detect_degradation([0.0] * 5, window=20, ratio=0.5)


def test_unarmed_detector_ignores_episodes():
    """
    Mientras ε no se ha estabilizado el detector no acumula historia.
    """
    detector = DegradationDetector(window=3, ratio=0.5)
    for _ in range(10):
        assert not detector.update(1.0, armed=False)

    assert len(detector.history) == 0
    assert detector.running_max is None


def test_state_and_restore():
    detector = DegradationDetector(window=3, ratio=0.5)
    for rate in (1.0, 1.0, 1.0, 0.25):
        detector.update(rate)

    clone = DegradationDetector(window=3, ratio=0.5)
    clone.restore(detector.state())

    assert clone.state() == detector.state()
    assert clone.update(0.25) == detector.update(0.25)

    detector.reset()
    assert detector.state() == {"history": [], "running_max": None}


@pytest.mark.parametrize("window,ratio", [(0, 0.5), (10, 0.0), (10, 1.0)])
def test_invalid_detector_parameters(window, ratio):
    with pytest.raises(ConfigurationError, match="Detector inválido"):
        DegradationDetector(window=window, ratio=ratio)
