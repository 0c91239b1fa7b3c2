"""Numerical laboratory for semi-classical analysis on H-type groups.

The package realizes the group Fourier transform, semi-classical
pseudodifferential quantization, symbolic calculus, Wigner transforms and
semi-classical measure limits on step-2 H-type groups as finite-dimensional
computations: representations are truncated in a tensor Hermite basis and
all integrals are replaced by explicit quadrature rules, so that every
identity of the calculus can be checked at desk scale.
"""

from .group import (
    HTypeStructure,
    GroupElement,
    HaarGrid,
    heisenberg,
    make_from_matrices,
    group_product,
    group_inverse,
    dilate,
    homogeneous_norm,
    haar_grid,
    convolve,
)
from .specfun import (
    hermite_function,
    hermite_tensor,
    laguerre_normalized,
    reduced_bessel,
    gauss_hermite,
    gauss_legendre,
)
from .fourier import (
    HermiteBasisSpec,
    adapted_basis,
    rep_matrix,
    rep_matrix_element,
    infinitesimal_rep,
    sublaplacian_symbol,
    spherical_inf,
    spherical_finite,
    LambdaGrid,
    annulus_lambda_grid,
    FourierEngine,
    fourier_finite,
    fan_data,
    lemma_limit_experiment,
)
from .symbols import (
    Symbol,
    SymbolNorms,
    symbol_norms,
    kernel_cutoff,
    radialize_symbol,
    LambdaWindowBPart,
)
from .quantize import (
    op_apply,
    assemble_operator,
    operator_norm,
    tau_quantize,
    l2_bound_suite,
    band_limited_probes,
    shell_probes,
    adjoint_expansion_check,
    composition_expansion_check,
)
from .measures import (
    FamilySpec,
    family_sample,
    hermite_level,
    lambda_schedule,
    wigner,
    wigner_trace_marginal,
    wigner_autocorrelation,
    wigner_lambda_marginal,
    wigner_total_trace,
    wigner_pairing,
    l_eps_concentration,
    concentration_prediction,
    concentration_prediction_radial,
    OscillationContext,
    l_eps_oscillation,
    oscillation_prediction_part1,
    oscillation_prediction_part2,
    eps_oscillation_profile,
    weak_density_check,
    limit_experiment,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
