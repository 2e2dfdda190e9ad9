"""Sufficient pinning-controllability analysis for coupled-oscillator networks."""

from ._core import *  # noqa: F401,F403
from ._core import generators  # noqa: F401

__version__ = "0.1.0"
