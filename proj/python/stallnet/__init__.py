"""Trajectory-logged optimizer runs and attractor/STN/LON network analysis."""

from ._stallnet import *  # noqa: F401,F403
from ._stallnet import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"
