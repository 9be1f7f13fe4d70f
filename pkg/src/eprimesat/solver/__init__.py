"""SAT solver kernel; the compiled extension shadows _core.py when built."""

from ._core import COMPILED, Solver, luby

__all__ = ["COMPILED", "Solver", "luby"]
