"""
Configuration package.
"""

from .settings import Settings, get_settings, settings
