"""
Runtime settings read from the environment (and an optional .env file).
Separates tunables such as the worker cap and default sample budget from
the numerical code.
"""

import os

from dotenv import load_dotenv

from errors import ConfigError

# Load environment variables
load_dotenv()

# Defaults
DEFAULT_THREADS = 1
DEFAULT_SAMPLES = 65536
DEFAULT_SEED = 0
DEFAULT_LOG_LEVEL = "WARNING"


def _int_from_env(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from e
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


class RuntimeConfig:
    """Configuration provider for runtime tunables."""

    @staticmethod
    def get_threads() -> int:
        """
        Worker cap for order-preserving parallel maps (BERGMAN_THREADS).

        Returns:
            Number of worker threads, at least 1
        """
        return _int_from_env("BERGMAN_THREADS", DEFAULT_THREADS, 1)

    @staticmethod
    def get_default_samples() -> int:
        """
        Default quadrature sample budget (BERGMAN_SAMPLES).

        Returns:
            Positive sample count
        """
        return _int_from_env("BERGMAN_SAMPLES", DEFAULT_SAMPLES, 1)

    @staticmethod
    def get_default_seed() -> int:
        """
        Seed used when none is given on the command line (BERGMAN_SEED).

        Returns:
            Non-negative seed
        """
        return _int_from_env("BERGMAN_SEED", DEFAULT_SEED, 0)

    @staticmethod
    def get_log_level() -> str:
        """
        Logging level name for the command-line entry point (BERGMAN_LOG_LEVEL).

        Returns:
            Upper-case level name
        """
        level = os.getenv("BERGMAN_LOG_LEVEL", DEFAULT_LOG_LEVEL).strip().upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ConfigError(f"BERGMAN_LOG_LEVEL has unknown level {level!r}")
        return level

    @staticmethod
    def get_all_settings() -> dict:
        """
        Get every setting as a dictionary (embedded in run reports).

        Returns:
            Dictionary with setting names as keys
        """
        return {
            "threads": RuntimeConfig.get_threads(),
            "samples": RuntimeConfig.get_default_samples(),
            "seed": RuntimeConfig.get_default_seed(),
        }
