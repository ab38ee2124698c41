"""Field-level controller communication toolkit."""

from ._plcbench import *  # noqa: F401,F403
from ._plcbench import __version__  # noqa: F401
