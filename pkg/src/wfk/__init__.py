"""wfk: N-band paraunitary wavelet filter banks.

Construction of every rational lossless N-band wavelet filter from a
convex parameter box, state-space realization by cascade, numerical
verification of the defining symmetries, and perfect-reconstruction
subband processing.
"""

from .errors import (
    ConvergenceError,
    DimensionError,
    FirRequiredError,
    InvariantError,
    PoleError,
    SamplingError,
    SingularMatrixError,
    WfkError,
)
from .filters import (
    BoxPoint,
    CheckReport,
    Factor,
    FilterParameters,
    ModulationStructure,
    SubbandFilterSet,
    box_to_params,
    check_paraunitary,
    check_symmetry,
    cyclic_shift_matrix,
    decimated_unitary_eval,
    dft_matrix,
    elementary_unitary_eval,
    elementary_wavelet_eval,
    modulation_structure,
    params_to_box,
    quotient_decimation_check,
    sample_box,
    sample_parameters,
    subband_filters,
    unit_circle_points,
    wavelet_eval,
)
from .linalg import (
    FIXTURE_TOL,
    TOL,
    adjoint,
    elimination_rank,
    frobenius_distance,
    mat_mul,
    solve_linear,
)
from .realization import (
    MinimalityReport,
    Realization,
    SteinCertificate,
    cascade,
    eval_realization,
    impulse_response,
    mcmillan_degree,
    realize_allpass_core,
    realize_decimated_unitary,
    realize_elementary_wavelet,
    realize_wavelet,
    spectral_radius,
    stein_certificate,
    system_matrix,
    verify_minimality,
)
from .signal import (
    SubbandSet,
    analyze,
    circular_convolve,
    decimate,
    expand,
    frequency_pr_check,
    simulate,
    synthesis_delay,
    synthesize,
)

__all__ = [
    "BoxPoint",
    "CheckReport",
    "ConvergenceError",
    "DimensionError",
    "FIXTURE_TOL",
    "Factor",
    "FilterParameters",
    "FirRequiredError",
    "InvariantError",
    "MinimalityReport",
    "ModulationStructure",
    "PoleError",
    "Realization",
    "SamplingError",
    "SingularMatrixError",
    "SteinCertificate",
    "SubbandFilterSet",
    "SubbandSet",
    "TOL",
    "WfkError",
    "adjoint",
    "analyze",
    "box_to_params",
    "cascade",
    "check_paraunitary",
    "check_symmetry",
    "circular_convolve",
    "cyclic_shift_matrix",
    "decimate",
    "decimated_unitary_eval",
    "dft_matrix",
    "elementary_unitary_eval",
    "elementary_wavelet_eval",
    "elimination_rank",
    "eval_realization",
    "expand",
    "frequency_pr_check",
    "frobenius_distance",
    "impulse_response",
    "mat_mul",
    "mcmillan_degree",
    "modulation_structure",
    "params_to_box",
    "quotient_decimation_check",
    "realize_allpass_core",
    "realize_decimated_unitary",
    "realize_elementary_wavelet",
    "realize_wavelet",
    "sample_box",
    "sample_parameters",
    "simulate",
    "solve_linear",
    "spectral_radius",
    "stein_certificate",
    "subband_filters",
    "synthesis_delay",
    "synthesize",
    "system_matrix",
    "unit_circle_points",
    "wavelet_eval",
    "verify_minimality",
]
