"""Brute-force certification of the closed-form discord.

The oracle minimizes the closed trace-norm formula over a deterministic
Fibonacci hemisphere grid (the objective is even in v) and polishes the
best grid point by golden-section coordinate descent in spherical angles.
Independent diagnostics: per-circle one-dimensional minima, and the
first-order stationarity residuals of the matrix

    G_mu = -W_x M K K^T - K K^T M W_x + E^T E + mu L_plus,   mu = ||S||_1^2,

which commutes with the measurement projector P_v at every critical point
of the trace-norm landscape.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .bloch import BlochForm, _readonly
from .discord import DiscordResult, EigenFrame, _golden_min, discord_d1, eigenframe, minimize_on_circle
from .disturbance import (
    adjugate_3x3,
    fibonacci_hemisphere,
    trace_norm_closed,
    trace_norm_closed_many,
    unit_axis,
)
from .errors import CertificationFailure, DegenerateGap

ORACLE_TOL = 1e-6
DEFAULT_GRID = 20000
DEFAULT_REFINE_TOL = 1e-10
_MAX_REFINE_SWEEPS = 200


@dataclass(frozen=True)
class OracleResult:
    min_value: float
    argmin: np.ndarray
    grid_size: int
    refine_iters: int
    value_gap_estimate: float

    def __post_init__(self):
        object.__setattr__(self, "argmin", _readonly(np.asarray(self.argmin, dtype=float)))


@dataclass(frozen=True)
class CriticalPointReport:
    v: np.ndarray
    mu: float
    omega: float
    commutator_residual: float
    eigen_residual: float

    def __post_init__(self):
        object.__setattr__(self, "v", _readonly(np.asarray(self.v, dtype=float)))


@dataclass
class CertifyRecord:
    """Structured outcome of one certification run."""

    label: str
    closed: DiscordResult
    oracle: OracleResult
    gap: float
    tol: float
    circle_minima: dict | None
    circle_gaps: dict | None
    residual_closed: CriticalPointReport
    residual_oracle: CriticalPointReport
    argmin_frame: np.ndarray
    off_circle_measure: float
    passed: bool = field(default=False)


def ginibre_state(rng: np.random.Generator) -> np.ndarray:
    """Full-rank random density matrix G G^dag / tr(G G^dag)."""
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def _spherical(theta: float, phi: float) -> np.ndarray:
    s = math.sin(theta)
    return np.array([s * math.cos(phi), s * math.sin(phi), math.cos(theta)])


def minimize_grid(b: BlochForm, n_points: int = DEFAULT_GRID,
                  refine_tol: float = DEFAULT_REFINE_TOL) -> OracleResult:
    """Global minimum estimate of the disturbance trace norm over axes.

    Deterministic hemisphere grid, then alternating golden-section searches
    in the polar and azimuthal angles around the best grid point until the
    value stops improving by more than refine_tol (at most 200 sweeps).
    """
    if n_points < 1000:
        raise ValueError("n_points must be at least 1000")
    grid = fibonacci_hemisphere(n_points)
    vals = trace_norm_closed_many(b, grid)
    j = int(np.argmin(vals))
    best_v = grid[j]

    # second-best basin: best value outside an exclusion cap around the argmin
    cap = 3.0 * math.sqrt(2.0 * math.pi / n_points)
    align = np.abs(grid @ best_v)
    outside = align < math.cos(cap)
    gap_estimate = float(vals[outside].min() - vals[j]) if outside.any() else 0.0

    theta = math.acos(min(max(best_v[2], -1.0), 1.0))
    phi = math.atan2(best_v[1], best_v[0])
    spacing = math.sqrt(2.0 * math.pi / n_points)

    def value_at(th, ph):
        return trace_norm_closed(b, _spherical(th, ph)).trace_norm

    current = float(vals[j])
    width = 2.0 * spacing
    sweeps = 0
    for sweeps in range(1, _MAX_REFINE_SWEEPS + 1):
        theta, _, _ = _golden_min(lambda t: value_at(t, phi), theta - width, theta + width)
        phi, new, _ = _golden_min(lambda p: value_at(theta, p), phi - width, phi + width)
        width = max(width * 0.35, 1e-13)
        if current - new < refine_tol and sweeps >= 3:
            current = min(current, new)
            break
        current = min(current, new)
    argmin = unit_axis(_spherical(theta, phi))
    value = trace_norm_closed(b, argmin).trace_norm
    if vals[j] < value:
        value, argmin = float(vals[j]), grid[j]
    return OracleResult(value, argmin, n_points, sweeps, gap_estimate)


def minimize_circle(b: BlochForm, frame: EigenFrame, zero_index: int,
                    n: int = 10000) -> tuple[float, np.ndarray]:
    """One-dimensional minimum of ||S||_1^2 on a big circle of the frame.

    Requires a non-degenerate frame; returns (mu_min, axis in lab frame).
    """
    vals = frame.l_minus_vals
    if vals[0] - vals[1] <= 1e-9 * max(1.0, vals[0] - vals[2]) or \
       vals[1] - vals[2] <= 1e-9 * max(1.0, vals[0] - vals[2]):
        raise DegenerateGap("circle minimization needs a non-degenerate spectrum")
    return minimize_on_circle(frame, zero_index, n)


def critical_residual(b: BlochForm, v) -> CriticalPointReport:
    """Stationarity residuals of G_mu at the axis v.

    commutator_residual is max|G_mu P_v - P_v G_mu|; eigen_residual is
    max|G_mu P_v - omega P_v| with omega = <v, G_mu v>.  Both vanish at
    critical points of the trace-norm landscape.
    """
    v = unit_axis(v)
    mu = trace_norm_closed(b, v).trace_norm ** 2
    KK = b.K @ b.K.T
    Wx = np.outer(b.x, b.x)
    E = adjugate_3x3(b.K)
    Pv = np.outer(v, v)
    M = np.eye(3) - Pv
    G = -Wx @ M @ KK - KK @ M @ Wx + E.T @ E + mu * (KK + Wx)
    omega = float(v @ G @ v)
    comm = float(np.abs(G @ Pv - Pv @ G).max())
    eig = float(np.abs(G @ Pv - omega * Pv).max())
    return CriticalPointReport(v, float(mu), omega, comm, eig)


def certify(b: BlochForm, n_points: int = DEFAULT_GRID, tol: float = ORACLE_TOL,
            refine_tol: float = DEFAULT_REFINE_TOL, label: str = "state") -> CertifyRecord:
    """Run the closed form against the brute-force oracle on one state.

    Raises CertificationFailure when |closed - oracle| exceeds tol.  The
    record always carries circle minima, stationarity residuals at both
    argmins, and the oracle argmin expressed in the eigenframe (whose
    coordinate product measures how far it sits from the big circles).
    """
    closed = discord_d1(b)
    oracle = minimize_grid(b, n_points, refine_tol)
    frame = eigenframe(b)
    gap = abs(closed.d1_value - oracle.min_value)

    circle_minima = None
    circle_gaps = None
    if all(k in closed.candidates for k in ("d1", "d2", "mu_star", "mu_star_star")):
        circle_minima = {idx: minimize_circle(b, frame, idx)[0] for idx in (1, 2, 3)}
        circle_gaps = {
            "d1": abs(closed.candidates["d1"] - circle_minima[1]),
            "d2": abs(closed.candidates["d2"] - circle_minima[3]),
            "d3": abs(min(closed.candidates["mu_star"],
                          closed.candidates["mu_star_star"]) - circle_minima[2]),
        }

    argmin_frame = frame.l_minus_vecs.T @ oracle.argmin
    record = CertifyRecord(
        label=label,
        closed=closed,
        oracle=oracle,
        gap=gap,
        tol=tol,
        circle_minima=circle_minima,
        circle_gaps=circle_gaps,
        residual_closed=critical_residual(b, closed.axis),
        residual_oracle=critical_residual(b, oracle.argmin),
        argmin_frame=argmin_frame,
        off_circle_measure=float(abs(np.prod(argmin_frame))),
        passed=gap <= tol,
    )
    if not record.passed:
        raise CertificationFailure(
            f"{label}: closed {closed.d1_value:.9f} vs oracle {oracle.min_value:.9f} "
            f"(gap {gap:.3e} > tol {tol:.1e}; branch {closed.branch.value}; "
            f"oracle argmin frame coords {np.round(argmin_frame, 6).tolist()})",
            record,
        )
    return record
