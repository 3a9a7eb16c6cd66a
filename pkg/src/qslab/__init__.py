"""Single-qubit open-system toolkit: exactly solvable noise channels, a
memory measure built on deviation from the best constant-rate semigroup,
and quantum-speed-limit bounds, plus sweep plumbing that ties the two
together into trend curves.
"""

from .channels import (
    AMPLITUDE_DAMPING,
    DEPHASING,
    NMADChannel,
    NoiseChannel,
    OUNChannel,
    RateSingularityError,
    RTNChannel,
    SemigroupChannel,
    apply_generator,
    decoherence_p,
    evolve,
    markov_reference,
    rate_gamma,
    time_derivative,
)
from .memory import (
    ZetaResult,
    choi_distance_factor,
    generator_choi,
    generator_choi_distance,
    zeta,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    MinimizationError,
    MinimizeSpec,
    QuadratureError,
    QuadratureSpec,
    finite_diff,
    integrate,
    minimize_scalar,
)
from .qmat import (
    IDENTITY_2,
    SIGMA_MINUS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    BlochState,
    bloch_to_rho,
    bures_angle,
    bures_fidelity,
    norms,
    purity,
    relative_purity,
    rho_to_bloch,
    trace_norm_4,
)
from .qsl import (
    DegenerateStateError,
    QslResult,
    fisher_q,
    qsl_bures_ad_closed,
    qsl_bures_dl,
    qsl_relative_purity,
    qsl_rp_ad_closed,
    qsl_rp_dephasing_closed,
    qsl_wu_ad_closed,
    qsl_wu_mixed,
    sld,
    v_qsl,
    v_qsl_avg,
)
from .sweep import (
    BOUND_KEYS,
    CSV_HEADER,
    Scenario,
    SweepPlan,
    SweepRecord,
    emit,
    fig_preset,
    read_csv,
    run_scenario,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AMPLITUDE_DAMPING",
    "BOUND_KEYS",
    "BlochState",
    "CSV_HEADER",
    "DEFAULT_QUADRATURE",
    "DEPHASING",
    "DegenerateStateError",
    "IDENTITY_2",
    "MinimizationError",
    "MinimizeSpec",
    "NMADChannel",
    "NoiseChannel",
    "OUNChannel",
    "QslResult",
    "QuadratureError",
    "QuadratureSpec",
    "RTNChannel",
    "RateSingularityError",
    "SIGMA_MINUS",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "Scenario",
    "SemigroupChannel",
    "SweepPlan",
    "SweepRecord",
    "ZetaResult",
    "apply_generator",
    "bloch_to_rho",
    "bures_angle",
    "bures_fidelity",
    "choi_distance_factor",
    "decoherence_p",
    "emit",
    "evolve",
    "fig_preset",
    "finite_diff",
    "fisher_q",
    "generator_choi",
    "generator_choi_distance",
    "integrate",
    "markov_reference",
    "minimize_scalar",
    "norms",
    "purity",
    "qsl_bures_ad_closed",
    "qsl_bures_dl",
    "qsl_relative_purity",
    "qsl_rp_ad_closed",
    "qsl_rp_dephasing_closed",
    "qsl_wu_ad_closed",
    "qsl_wu_mixed",
    "rate_gamma",
    "read_csv",
    "relative_purity",
    "rho_to_bloch",
    "run_scenario",
    "run_sweep",
    "sld",
    "trace_norm_4",
    "v_qsl",
    "v_qsl_avg",
    "zeta",
    "__version__",
]
