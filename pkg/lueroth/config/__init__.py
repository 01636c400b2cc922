"""Configuration."""

from lueroth.config.settings import Settings, settings

__all__ = ["Settings", "settings"]
