import pytest

from kdg.checks import SUITES, run_suite
from kdg.errors import PreconditionError


def test_suite_names():
    assert SUITES == ("lemmas", "families", "spectrum")
    with pytest.raises(PreconditionError):
        run_suite("nonsense")


def test_lemmas_suite_small():
    result = run_suite("lemmas", seed=3, trials=8)
    assert result.failed == 0
    assert result.passed > 0
    assert result.ok
    assert result.to_text().startswith("suite lemmas:")
    assert "[ok]" in result.to_text()


def test_families_suite():
    result = run_suite("families")
    assert result.failed == 0, result.failures
    assert result.passed >= 600


def test_spectrum_suite_small():
    result = run_suite("spectrum", seed=1, trials=20)
    assert result.failed == 0, result.failures
    assert result.passed > 100
