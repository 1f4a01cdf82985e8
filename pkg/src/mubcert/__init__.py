"""Certification of genuine multipartite entanglement from correlations
measured in pairs of mutually unbiased bases."""

from .correlations import (
    BasisAssignment,
    CertificationReport,
    LbpsPatternSet,
    c_max,
    c_pattern_sum,
    computational_setting,
    diagonal_set,
    hadamard_setting,
    i3,
    i3_oracle,
    i4,
    i4_oracle,
    i_m_bipartite,
    i_value_oracle,
    joint_probability,
    lbps_quadripartite,
    lbps_tripartite,
    mutual_predictability,
    outcome_distribution,
    uniform_setting,
)
from .linalg import (
    DensityMatrix,
    InvariantError,
    StateVector,
    dagger,
    kron,
    mix,
    partial_trace,
    permute_parties,
    purity,
    reduced_rank,
    schmidt_coefficients,
)
from .locc import (
    PovmParams,
    PovmSweepResult,
    apply_branch,
    build_povm,
    convexity_probe,
    omega,
    sweep,
)
from .measures import global_q, one_tangle, triangle_tau
from .mub import (
    Basis,
    MubFamily,
    computational_basis,
    fourier_basis,
    fourier_pair,
    is_unbiased,
    prime_mub_family,
    qubit_mub_triple,
)
from .states import (
    acin_canonical,
    bipartitions,
    ghz3,
    ghz4,
    psi_lambda,
    random_biseparable,
    random_pure,
    random_separable,
    w3,
    wg4,
)

__version__ = "0.1.0"
