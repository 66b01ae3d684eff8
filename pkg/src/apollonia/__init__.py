"""Apollonian circle packings as orbits of a rank-4 Coxeter group.

Exact orbit enumeration and curvature counts, the orbit zeta function and
its theta-function pieces, the Delta_5 orbit-sum identity, and the
geometry of the Apollonian cone.
"""
from __future__ import annotations

from ._backend import BACKEND
from .cone import Label, apex_orbit, classify, classify_many, edge_tangency_check
from .errors import (ApolloniaError, ArithmeticDomainError, DivergenceError, ReductionError,
                     UnsupportedPackingError, ValidationError)
from .exact import QuadraticScalar
from .lattice import (ALPHA, D2_BASE, D3_BASE, OMEGA, RHO, Quadruple, WeightPoint, bilinear,
                      descartes_defect, reduce_to_base, reflect_root, reflect_weight)
from .modular import delta5_coeff, g_table, g_table_eta_theta, theta_eval, verify_theorem_delta
from .packing import curvature_census, fit_delta, orbit_bfs
from .series import l_partial, theta_expansion_residual, z1_of_t, z_partial

__all__ = [
    "ALPHA", "BACKEND", "D2_BASE", "D3_BASE", "OMEGA", "RHO", "ApolloniaError",
    "ArithmeticDomainError", "DivergenceError", "Label", "QuadraticScalar", "Quadruple",
    "ReductionError", "UnsupportedPackingError", "ValidationError", "WeightPoint", "apex_orbit",
    "bilinear", "classify", "classify_many", "curvature_census", "delta5_coeff",
    "descartes_defect", "edge_tangency_check", "fit_delta", "g_table", "g_table_eta_theta",
    "l_partial", "orbit_bfs", "reduce_to_base", "reflect_root", "reflect_weight", "theta_eval",
    "theta_expansion_residual", "verify_theorem_delta", "z1_of_t", "z_partial",
]
