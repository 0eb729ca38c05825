"""Kinematics toolkit for a six-dof decoupled haptic device.

The compiled extension carries the full API; this package re-exports it.
"""

from orthohaptic._core import *  # noqa: F401,F403
from orthohaptic._core import __version__  # noqa: F401
