"""Flight-time minimisation: problem construction, solvers, KKT checks and the reduction chain."""
from .kkt import KKTReport, closed_form_tightness_gap, eq40_residual, kkt_residuals, stationarity
from .problem import (OptimizationProblem, build_problem, constraint_c1, constraint_residuals,
                      is_feasible, objective_eq30)
from .reduction import ReductionStep, ReductionTrace, reduction_trace
from .solvers import (Solution, SolutionSource, agree_within_lattice, solve_analytic, solve_grid,
                      solve_paper_closed_form)
