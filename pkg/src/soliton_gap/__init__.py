"""Computable constants and model checks for the scalar-curvature gap
theorem on complete shrinking gradient Ricci solitons."""

__version__ = "0.1.0"

from .bound_chain import GapInputs, full_report, solve_gap_epsilon
from .numerics import QuadratureSpec

__all__ = ["GapInputs", "QuadratureSpec", "full_report", "solve_gap_epsilon", "__version__"]
