import pytest

from minkprod import InvalidInput, Settings
from minkprod.config import thread_count


def test_defaults(monkeypatch):
    for name in ("MINKPROD_TOL", "MINKPROD_EPS", "MINKPROD_GRID", "MINKPROD_SAMPLES", "MINKPROD_SEED", "MINKPROD_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("MINKPROD_THREADS", "2")
    settings = Settings.from_env()
    assert settings.tol == 1e-7
    assert settings.eps == 1e-9
    assert settings.grid == 1024
    assert settings.samples == 720
    assert settings.seed == 0
    assert settings.threads == 2
    assert settings.log_level == "WARNING"


def test_overrides(monkeypatch):
    monkeypatch.setenv("MINKPROD_TOL", "1e-5")
    monkeypatch.setenv("MINKPROD_GRID", "256")
    monkeypatch.setenv("MINKPROD_LOG_LEVEL", "debug")
    settings = Settings.from_env()
    assert settings.tol == 1e-5
    assert settings.grid == 256
    assert settings.log_level == "DEBUG"


@pytest.mark.parametrize(
    "name,value",
    [
        ("MINKPROD_TOL", "small"),
        ("MINKPROD_GRID", "16"),
        ("MINKPROD_SAMPLES", "0"),
        ("MINKPROD_THREADS", "0"),
        ("MINKPROD_LOG_LEVEL", "verbose"),
    ],
)
def test_bad_values(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(InvalidInput):
        Settings.from_env()


def test_thread_count_defaults_to_cores(monkeypatch):
    monkeypatch.delenv("MINKPROD_THREADS", raising=False)
    assert thread_count() >= 1
