"""stlab: numerical laboratory for traces, determinants and eigenvalue norms
of nuclear operators on sequence spaces."""

__version__ = "0.1.0"

from .determinant import (
    ContinuityReport,
    DeterminantPoly,
    PowerTraces,
    continuity_probe,
    det_poly_newton,
    det_product,
    det_series,
    power_traces,
    trace_from_det_residue,
)
from .directsum import (
    DirectSumOperator,
    assemble_direct_sum,
    concatenate_reps,
    direct_sum,
    extract_block,
    inclusion,
    projection,
    spectrum_union_check,
    summed_quasinorm_bound,
)
from .factorization import (
    LpFactorization,
    ab_ba_spectrum_check,
    build_diagonal_factorization,
    build_S,
    factorization_product,
)
from .lorentz import (
    FactorPair,
    LorentzParams,
    QuasinormRangeError,
    as_sequence,
    decreasing_rearrangement,
    factor_l1_lqinf,
    lorentz_quasinorm,
)
from .nuclear import (
    NuclearRep,
    QuasinormEstimate,
    assemble,
    lorentz_decay_coefficients,
    nuclear_trace,
    quasinorm_lorentz_lapreste,
    quasinorm_rpq,
    random_rep,
    rep_from_json,
    rep_to_json,
)
from .spectral import (
    EigensolveError,
    Spectrum,
    eigenvalues,
    spectral_trace,
    spectrum_from_json,
    spectrum_lorentz_norm,
    spectrum_to_json,
)
from .weaknorm import (
    as_family,
    weak_norm_2,
    weak_norm_inf,
    weak_norm_q_estimate,
)
