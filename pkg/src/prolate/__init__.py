"""Prolate spheroidal wave functions and their quadratures."""

__version__ = "0.1.0"

from . import _backend
from .diagnostics import (OutsideEvaluator, check_derivative_growth, check_spacing,
                          compute_Pnm, eval_dpsi_outside, eval_psi_outside,
                          partial_fraction_residual, roots_outside, run_experiment)
from .eigensystem import build_system, chi_approx, eigenpair
from .errors import (BracketError, ConvergenceError, DomainError, InfeasibleError,
                     ParameterWindowError, ProlateError, TaylorDriftError)
from .legendre import gauss_rule, legendre_tables
from .nodes import NodeSet, find_nodes
from .pswf import ProlateFunction, eval_dpsi, eval_phi_tilde, eval_psi, prolate
from .quadrature import (OrderSelection, QuadratureRule, build_rule, certified_error_bound,
                         integrate, lambda_upper_bounds, select_order)
from .report import ErrorReport
from .weights import weights_fast, weights_series

backend = _backend.NAME
