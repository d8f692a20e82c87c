"""Zonal and associated spherical functions of SO(p, q) by hypergeometric series, with quadrature checks."""

from .errors import ConvergenceError, DomainError, ParityError, PoleError, ReconstructionError, SopqError
from .hyper import HornParamGroup, HornSeriesSpec, SeriesResult, appell_f2_terminating, horn_eval, horn_validate
from .oracle import BasisLabel, QuadratureConfig, expansion_residual, gram_matrix, quad_assoc, quad_zonal
from .orthopoly import Signature, assoc_coeff, basis_norm_general, basis_norm_q2, gegenbauer, pair_coeff
from .scalar import gamma_ratio, log_gamma, pochhammer
from .sfcore import (
    AssocIndex,
    RepParam,
    assoc_horn,
    assoc_series,
    symmetry_check,
    theta,
    unitary_pair_check,
    zonal_horn,
    zonal_series,
)

__all__ = [
    "SopqError", "DomainError", "PoleError", "ParityError", "ConvergenceError", "ReconstructionError",
    "HornParamGroup", "HornSeriesSpec", "SeriesResult", "appell_f2_terminating", "horn_eval", "horn_validate",
    "BasisLabel", "QuadratureConfig", "expansion_residual", "gram_matrix", "quad_assoc", "quad_zonal",
    "Signature", "assoc_coeff", "basis_norm_general", "basis_norm_q2", "gegenbauer", "pair_coeff",
    "gamma_ratio", "log_gamma", "pochhammer",
    "AssocIndex", "RepParam", "assoc_horn", "assoc_series", "symmetry_check", "theta",
    "unitary_pair_check", "zonal_horn", "zonal_series",
]
