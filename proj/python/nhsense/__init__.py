"""Simulator and analysis toolkit for non-Hermitian qubit sensing."""

from _nhsense import *  # noqa: F401,F403
from _nhsense import __version__  # noqa: F401
