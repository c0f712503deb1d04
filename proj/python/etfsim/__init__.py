"""Seamless UAV transition planning and multicast simulation."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__, __version__  # noqa: F401
