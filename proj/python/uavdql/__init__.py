"""Priority-aware UAV serving order with tabular double Q-learning."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

PRESETS = ("default", "dql1", "dql2", "dql3")

__version__ = "0.1.0"
