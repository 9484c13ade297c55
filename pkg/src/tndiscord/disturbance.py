"""Measurement channel, disturbance operator and its trace norm.

An unrecorded projective measurement along the unit axis v acts on the
first qubit through the spin projectors (I +- <v,sigma>)/2.  The
disturbance is the difference between the state and its measured image;
its trace norm has the closed form

    ||S||_1 = sqrt((g1 + sqrt(g1^2 - g2)) / 2)

with the two scalar functions

    g1(v) = ||M x||^2 + tr(M K K^T),            M = I - v v^T,
    g2(v) = 4 (||K^T M x||^2 + <v, E^T E v>),   E = adj K.

Both are even in v, so v and -v describe the same measurement.  The set
where g1^2 = g2 makes the outer square root non-smooth ("singular set");
it is where the closed norm degenerates to sqrt(g1 / 2).
"""

from dataclasses import dataclass

import numpy as np

from .bloch import (
    IDENTITY_2,
    PAULI,
    BlochForm,
    TwoQubitState,
    _as_rho,
    to_bloch,
)
from .errors import NegativeRadicand

SINGULAR_SET_TOL = 1e-10   # relative membership tolerance for g1^2 = g2
_RADICAND_CLAMP = -1e-12   # rounding noise, silently clamped to zero
_RADICAND_ERROR = -1e-9    # beyond this the formula inputs are inconsistent


class WholeSphere:
    """Sentinel: every axis satisfies g1^2 = g2 (fully degenerate case)."""

    def __repr__(self):
        return "WholeSphere"


WHOLE_SPHERE = WholeSphere()


@dataclass(frozen=True)
class DisturbanceReport:
    trace_norm: float
    g1: float
    g2: float
    in_singular_set: bool


def unit_axis(v) -> np.ndarray:
    """Return v normalized to unit length; reject zero or far-off input."""
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if not 1e-6 < n < 1e6:
        raise ValueError(f"measurement axis has unusable norm {n:.3e}")
    return v / n


def spin_projectors(v) -> tuple[np.ndarray, np.ndarray]:
    """Rank-one projectors (I +- <v,sigma>)/2 for a unit axis v."""
    v = unit_axis(v)
    vs = v[0] * PAULI[0] + v[1] * PAULI[1] + v[2] * PAULI[2]
    return (IDENTITY_2 + vs) / 2.0, (IDENTITY_2 - vs) / 2.0


def measure_channel(state, v) -> TwoQubitState:
    """Apply the unrecorded measurement along v to the first qubit.

    The channel is idempotent and leaves the second marginal untouched.
    """
    rho = _as_rho(state)
    p1, p2 = spin_projectors(v)
    out = np.zeros((4, 4), dtype=complex)
    for p in (p1, p2):
        pp = np.kron(p, IDENTITY_2)
        out += pp @ rho @ pp
    return TwoQubitState(out)


def disturbance_matrix(state, v) -> np.ndarray:
    """rho minus its measured image: Hermitian and traceless."""
    rho = _as_rho(state)
    return rho - measure_channel(rho, v).rho


def trace_norm_direct(S) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.abs(np.linalg.eigvalsh(np.asarray(S))).sum())


def adjugate_3x3(K: np.ndarray) -> np.ndarray:
    """Transpose of the cofactor matrix, valid for singular K as well."""
    K = np.asarray(K, dtype=float)
    cof = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(K, i, axis=0), j, axis=1)
            cof[i, j] = ((-1) ** (i + j)) * (minor[0, 0] * minor[1, 1] - minor[0, 1] * minor[1, 0])
    return cof.T


def g_values(b: BlochForm, vs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (g1, g2) for an (n, 3) array of unit axes."""
    vs = np.atleast_2d(np.asarray(vs, dtype=float))
    K = b.K
    x = b.x
    E = adjugate_3x3(K)
    KK = K @ K.T
    EE = E.T @ E
    xv = vs @ x                                   # <x, v>
    mx2 = x @ x - xv * xv                         # ||M x||^2
    g1 = mx2 + np.trace(KK) - np.einsum("ni,ij,nj->n", vs, KK, vs)
    ktm = x @ K - xv[:, None] * (vs @ K)          # rows: (K^T M x)^T
    g2 = 4.0 * (np.einsum("ni,ni->n", ktm, ktm) + np.einsum("ni,ij,nj->n", vs, EE, vs))
    return g1, g2


def g_pair(b: BlochForm, v) -> tuple[float, float]:
    """Scalar (g1, g2) at one unit axis."""
    g1, g2 = g_values(b, unit_axis(v)[None, :])
    return float(g1[0]), float(g2[0])


def _closed_from_g(g1: float, g2: float) -> tuple[float, bool]:
    """Trace norm from (g1, g2), with radicand hygiene.

    Negative radicands within rounding noise are clamped to zero; anything
    below the bug threshold raises NegativeRadicand.
    """
    rad = g1 * g1 - g2
    scale = max(1.0, g1 * g1)
    if rad < _RADICAND_ERROR * scale:
        raise NegativeRadicand(rad)
    if rad < 0.0:
        rad = 0.0
    in_singular = abs(g1 * g1 - g2) <= SINGULAR_SET_TOL * scale
    return float(np.sqrt((g1 + np.sqrt(rad)) / 2.0)), in_singular


def trace_norm_closed(b: BlochForm, v) -> DisturbanceReport:
    """Closed-form trace norm of the disturbance along v."""
    g1, g2 = g_pair(b, v)
    value, in_singular = _closed_from_g(g1, g2)
    return DisturbanceReport(value, g1, g2, in_singular)


def trace_norm_closed_many(b: BlochForm, vs: np.ndarray) -> np.ndarray:
    """Closed-form trace norm for an (n, 3) array of unit axes."""
    g1, g2 = g_values(b, vs)
    rad = g1 * g1 - g2
    scale = np.maximum(1.0, g1 * g1)
    worst = (rad / scale).min() if rad.size else 0.0
    if worst < _RADICAND_ERROR:
        raise NegativeRadicand(float(worst))
    return np.sqrt((g1 + np.sqrt(np.maximum(rad, 0.0))) / 2.0)


def singular_set_residual(b: BlochForm, v) -> float:
    """g1(v)^2 - g2(v); zero within tolerance means v is in the singular set."""
    g1, g2 = g_pair(b, v)
    return g1 * g1 - g2


def l_minus_matrix(b: BlochForm) -> np.ndarray:
    """K K^T - x x^T, the operator whose spectrum organizes the minimization."""
    return b.K @ b.K.T - np.outer(b.x, b.x)


def singular_set_solve(b: BlochForm):
    """Solve g1^2 = g2 for the axes of the singular set.

    With eigenvalues lam1 >= lam2 >= lam3 of K K^T - x x^T, the distinct
    case has exactly two projectors: v2 = 0, v1^2 = (lam1-lam2)/(lam1-lam3),
    v3^2 = (lam2-lam3)/(lam1-lam3) in the eigenbasis (both relative signs,
    v and -v identified).  A double eigenvalue collapses them to a single
    axis, and a fully degenerate spectrum makes every axis singular.
    Axes are returned in the original (lab) coordinates.
    """
    L = l_minus_matrix(b)
    lam, vecs = np.linalg.eigh(L)
    lam = lam[::-1]
    vecs = vecs[:, ::-1]
    l1, l2, l3 = lam
    span = max(l1 - l3, 0.0)
    tol = 1e-12 * max(1.0, abs(l1))
    if span <= tol:
        return WHOLE_SPHERE
    if l1 - l2 <= tol:
        return [vecs[:, 2].copy()]
    if l2 - l3 <= tol:
        return [vecs[:, 0].copy()]
    c1 = np.sqrt((l1 - l2) / span)
    c3 = np.sqrt((l2 - l3) / span)
    return [vecs @ np.array([c1, 0.0, c3]), vecs @ np.array([c1, 0.0, -c3])]


def fibonacci_hemisphere(n: int) -> np.ndarray:
    """Deterministic quasi-uniform sample of n axes with positive third
    component; sufficient because every quantity here is even in v."""
    i = np.arange(n)
    golden = (1.0 + np.sqrt(5.0)) / 2.0
    z = (i + 0.5) / n
    phi = 2.0 * np.pi * i / golden
    r = np.sqrt(1.0 - z * z)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def singular_min_check(b: BlochForm, v_star, samples: int = 20000) -> bool:
    """Certify (at sampling resolution) that the minimum of the trace norm
    is attained at v_star in the singular set.

    Checks, over a deterministic sphere sample, that g1(v_star) <= 2 g1(v)
    everywhere and that g1(v_star) g1(v) >= (g2(v) + g2(v_star)) / 2
    wherever g1(v) <= g1(v_star).  A False result only demotes the value
    sqrt(g1(v_star) / 2) to an upper bound.
    """
    v_star = unit_axis(v_star)
    g1s, g2s = g_pair(b, v_star)
    vs = fibonacci_hemisphere(samples)
    g1, g2 = g_values(b, vs)
    slack = 1e-12 * max(1.0, g1s * g1s)
    if (g1s > 2.0 * g1 + slack).any():
        return False
    low = g1 <= g1s + slack
    return bool((g1s * g1[low] + slack >= 0.5 * (g2[low] + g2s)).all())
