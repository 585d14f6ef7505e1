"""
Configuration package.
Provides centralized access to runtime settings.
"""

from .settings import RuntimeConfig

__all__ = ["RuntimeConfig"]
