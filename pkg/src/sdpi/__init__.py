"""Divergences and strong data processing constants on finite alphabets."""
from .contraction import (
    EtaEstimate,
    SearchConfig,
    dobrushin_coefficient,
    estimate,
    eta2_binary_closed_form,
    eta2_binary_sup,
    eta2_boundary,
    eta2_bsc_sup,
    eta_chi2_spectral,
    eta_estimate_ascent,
    eta_estimate_grid,
    eta_ratio,
    rayleigh_quotient,
    thm1_directional_limit,
    thm2_lower_bound,
)
from .divergences import (
    DivergenceSpec,
    DivergenceValue,
    chi2_divergence,
    divergence,
    h2,
    kl_divergence,
    phi_divergence,
    renyi_divergence,
    tv_divergence,
)
from .figure import FigureRow, figure_curves
from .io import parse_input
from .probability import (
    AdmissiblePair,
    Channel,
    DensityPerturbation,
    Distribution,
    ValidationError,
    adjoint,
    apply_adjoint_to_perturbation,
    perturbation_from,
    pushforward,
)

__version__ = "0.1.0"
