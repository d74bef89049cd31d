import os
from dataclasses import dataclass

from .exceptions import InvalidInput

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _env_number(name: str, default, cast):
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        return cast(raw)
    except ValueError as exc:
        raise InvalidInput(f"{name} must be a {cast.__name__}, got {raw!r}") from exc


def thread_count() -> int:
    """Return the worker count for parallel loops.

    `MINKPROD_THREADS` caps parallelism; unset means one worker per core.
    """
    threads = _env_number("MINKPROD_THREADS", os.cpu_count() or 1, int)
    if threads < 1:
        raise InvalidInput("MINKPROD_THREADS must be >= 1")
    return threads


@dataclass(frozen=True)
class Settings:
    tol: float = 1e-7
    eps: float = 1e-9
    grid: int = 1024
    samples: int = 720
    seed: int = 0
    threads: int = 1
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        settings = cls(
            tol=_env_number("MINKPROD_TOL", cls.tol, float),
            eps=_env_number("MINKPROD_EPS", cls.eps, float),
            grid=_env_number("MINKPROD_GRID", cls.grid, int),
            samples=_env_number("MINKPROD_SAMPLES", cls.samples, int),
            seed=_env_number("MINKPROD_SEED", cls.seed, int),
            threads=thread_count(),
            log_level=os.environ.get("MINKPROD_LOG_LEVEL", cls.log_level).upper(),
        )
        settings.validate()
        return settings

    def validate(self) -> None:
        if self.tol < 0 or self.eps < 0:
            raise InvalidInput("tolerances must be >= 0")
        if self.grid < 64:
            raise InvalidInput("grid must be >= 64")
        if self.samples < 1:
            raise InvalidInput("samples must be >= 1")
        if self.log_level not in LOG_LEVELS:
            raise InvalidInput(f"log level must be one of {', '.join(LOG_LEVELS)}")


DEFAULT_EPS = Settings.eps
DEFAULT_TOL = Settings.tol
