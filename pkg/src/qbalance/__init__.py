"""Exact q-analog generating functions and their residue distributions modulo m."""

from .qpoly import (
    QPolynomial,
    fmaj_gf_B,
    gaussian_binomial,
    maj_gf_symmetric,
    q_catalan,
    q_derangement,
    q_derangement_B,
    q_factorial,
    q_integer,
)
from .residue import ResidueDistribution, deviation, eval_root_of_unity, filter_kernel, filter_sum, fold_mod

__version__ = "0.1.0"
