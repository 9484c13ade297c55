"""Trace-norm geometric discord of two-qubit states.

Closed-form evaluation organized by the spectrum of K K^T - x x^T,
cross-validated by a brute-force minimizer over measurement axes.
"""

from .bloch import (
    BlochForm,
    LocalFrame,
    TwoQubitState,
    apply_local_rotation,
    diagonalize_correlation,
    from_bloch,
    to_bloch,
    validate_state,
)
from .discord import (
    Branch,
    DiscordResult,
    EigenFrame,
    discord_d1,
    discord_d2,
    discord_lower_bound,
    eigenframe,
    gap_functions,
    mu_candidates,
    theta_stars,
)
from .disturbance import (
    DisturbanceReport,
    WholeSphere,
    WHOLE_SPHERE,
    disturbance_matrix,
    g_pair,
    measure_channel,
    singular_min_check,
    singular_set_residual,
    singular_set_solve,
    trace_norm_closed,
    trace_norm_direct,
)
from .oracle import (
    CertifyRecord,
    CriticalPointReport,
    OracleResult,
    certify,
    critical_residual,
    ginibre_state,
    minimize_circle,
    minimize_grid,
)
from . import errors, families

__all__ = [
    "BlochForm", "LocalFrame", "TwoQubitState", "apply_local_rotation",
    "diagonalize_correlation", "from_bloch", "to_bloch", "validate_state",
    "Branch", "DiscordResult", "EigenFrame", "discord_d1", "discord_d2",
    "discord_lower_bound", "eigenframe", "gap_functions", "mu_candidates",
    "theta_stars", "DisturbanceReport", "WholeSphere", "WHOLE_SPHERE",
    "disturbance_matrix", "g_pair", "measure_channel", "singular_min_check",
    "singular_set_residual", "singular_set_solve", "trace_norm_closed",
    "trace_norm_direct", "CertifyRecord", "CriticalPointReport",
    "OracleResult", "certify", "critical_residual", "ginibre_state",
    "minimize_circle", "minimize_grid", "errors", "families",
]

__version__ = "0.1.0"
