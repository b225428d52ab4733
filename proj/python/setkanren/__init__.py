"""Relational programming with first-class finite sets.

The compiled core lives in ``_setkanren``; this package re-exports it. The
module is importable both from an installed wheel (where the extension sits
inside the package) and straight from a build tree on ``PYTHONPATH``.
"""

try:
    from ._setkanren import EngineError, Session, __version__, run_program
except ImportError:  # build-tree layout: extension next to the package
    from _setkanren import EngineError, Session, __version__, run_program

__all__ = ["EngineError", "Session", "run_program", "__version__"]
