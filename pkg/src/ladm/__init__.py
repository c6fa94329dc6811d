"""Laplace-Adomian decomposition for the Kundu-Eckhaus equation."""

from .adomian import (
    FactorKind,
    MonomialNonlinearity,
    NonlinearOperator,
    adomian_poly,
    adomian_poly_sum,
    lambda_consistency_check,
)
from .oracle import ComparisonRow, ExactSolution, PlaneWave, compare_grid, exact_eval, exact_residual_check
from .series import HarmonicPoly, TimeSeries, from_tree, to_tree
from .solver import EquationModel, LadmRun, kundu_eckhaus, ladm_step, residual, run

__version__ = "0.1.0"
