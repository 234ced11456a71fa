"""Spatiotemporal trajectory tracking toolkit.

Lead/lag spatiotemporal offsets, threshold-gated acceleration
compensation, an LQR + dual-PID tracking simulator and the error
analysis pipeline, all backed by the C++ core in ``sttrack._core``.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
