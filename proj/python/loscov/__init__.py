"""LOS coverage probabilities for mm-wave AP deployments."""

from ._loscov import *  # noqa: F401,F403
from ._loscov import __version__  # noqa: F401
