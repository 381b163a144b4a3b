"""Periodicity-cell solver for inhomogeneous elastic plates.

Thin python surface over the C++ core: cell construction, meshing, the
periodicity-cell solves, homogenized rigidities, boundary-layer and
representative-plate analyses, surface wrinkling metrics, and the CLI
pipeline (run_command).
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = _core_doc or __doc__
