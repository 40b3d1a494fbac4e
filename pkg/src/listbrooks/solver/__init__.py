"""Solvers for the two scattered-``P`` settings."""

from listbrooks.solver.common import SolveResult, SolveTrace, bad_components, extend_to_rest
from listbrooks.solver.pairing import solve_distance3
from listbrooks.solver.sweep import solve_distance4

__all__ = ["SolveResult", "SolveTrace", "bad_components", "extend_to_rest", "solve_distance3", "solve_distance4"]
