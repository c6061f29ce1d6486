"""Wearable-health data engineering and evaluation toolkit."""

from _wearlab import *  # noqa: F401,F403
from _wearlab import __version__  # noqa: F401
