"""Constructors for the named two-qubit state families used as fixtures.

Every constructor returns a validated state or raises
OutOfPositivityRegion when the parameters leave the physical region.
Matrices are written in the product basis |00>, |01>, |10>, |11>.
"""

import numpy as np

from .bloch import BlochForm, TwoQubitState, from_bloch, validate_state
from .errors import NotPositive, OutOfPositivityRegion

PSI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


def _validated(rho, context: str) -> TwoQubitState:
    try:
        return validate_state(rho)
    except NotPositive as exc:
        raise OutOfPositivityRegion(f"{context}: min eigenvalue {exc.min_eigenvalue:.3e}") from exc


def werner(t: float) -> TwoQubitState:
    """Werner state with x = y = 0 and K = t I; physical for -1 <= t <= 1/3."""
    if not -1.0 - 1e-12 <= t <= 1.0 / 3.0 + 1e-12:
        raise OutOfPositivityRegion(f"werner requires -1 <= t <= 1/3, got t = {t}")
    rho = np.array(
        [
            [1 + t, 0, 0, 0],
            [0, 1 - t, 2 * t, 0],
            [0, 2 * t, 1 - t, 0],
            [0, 0, 0, 1 + t],
        ],
        dtype=complex,
    ) / 4.0
    return _validated(rho, f"werner(t={t})")


def isotropic(t: float) -> TwoQubitState:
    """Mixture (1-t)/4 I + t |Psi+><Psi+|; physical for -1/3 <= t <= 1."""
    if not -1.0 / 3.0 - 1e-12 <= t <= 1.0 + 1e-12:
        raise OutOfPositivityRegion(f"isotropic requires -1/3 <= t <= 1, got t = {t}")
    rho = np.array(
        [
            [1 + t, 0, 0, 2 * t],
            [0, 1 - t, 0, 0],
            [0, 0, 1 - t, 0],
            [2 * t, 0, 0, 1 + t],
        ],
        dtype=complex,
    ) / 4.0
    return _validated(rho, f"isotropic(t={t})")


def rho1(a: float, b: float, w: complex, z: complex, t: float) -> TwoQubitState:
    """Family with K = t I and Bloch data x = (Re z, Im z, (a+b)/2),
    y = (Re w, Im w, (a-b)/2). Positivity is checked, not assumed."""
    wc, zc = np.conj(w), np.conj(z)
    rho = np.array(
        [
            [1 + a + t, wc, zc, 0],
            [w, 1 + b - t, 2 * t, zc],
            [z, 2 * t, 1 - b - t, wc],
            [0, z, w, 1 - a + t],
        ],
        dtype=complex,
    ) / 4.0
    return _validated(rho, f"rho1(a={a}, b={b}, w={w}, z={z}, t={t})")


def rho2(a: float, b: float, w: complex, z: complex, t: float) -> TwoQubitState:
    """Companion family with K = t diag(1, -1, 1); same Bloch relations as rho1."""
    wc, zc = np.conj(w), np.conj(z)
    rho = np.array(
        [
            [1 + a + t, wc, zc, 2 * t],
            [w, 1 + b - t, 0, zc],
            [z, 0, 1 - b - t, wc],
            [2 * t, z, w, 1 - a + t],
        ],
        dtype=complex,
    ) / 4.0
    return _validated(rho, f"rho2(a={a}, b={b}, w={w}, z={z}, t={t})")


def bell_diagonal(i1: float, i2: float, i3: float) -> TwoQubitState:
    """State with maximally mixed marginals: x = y = 0, K = diag(i1, i2, i3)."""
    state = from_bloch(BlochForm(np.zeros(3), np.zeros(3), np.diag([i1, i2, i3])))
    return _validated(state.rho, f"bell_diagonal({i1}, {i2}, {i3})")


def pure_n(N: float) -> TwoQubitState:
    """Rank-one state with Schmidt weight N: K = diag(N, -N, 1), x = (0, 0, sqrt(1-N^2))."""
    if not 0.0 <= N <= 1.0:
        raise OutOfPositivityRegion(f"pure_n requires 0 <= N <= 1, got N = {N}")
    c = np.sqrt(1.0 - N * N)
    rho = np.array(
        [
            [1 + c, 0, 0, N],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
            [N, 0, 0, 1 - c],
        ],
        dtype=complex,
    ) / 2.0
    return _validated(rho, f"pure_n(N={N})")


def rho_theta(theta: float) -> TwoQubitState:
    """One-parameter mixed family with x = (0, 0, -sin^2 t) and
    K = diag(cos t sin t, -cos t sin t, 0), theta in [0, pi/2]."""
    c, s = np.cos(theta), np.sin(theta)
    rho = np.array(
        [
            [2 * c * c, 0, 0, 2 * s * c],
            [0, 0, 0, 0],
            [0, 0, 2, 0],
            [2 * s * c, 0, 0, 2 * s * s],
        ],
        dtype=complex,
    ) / 4.0
    return _validated(rho, f"rho_theta(theta={theta})")


def x_state(rho11: float, rho22: float, rho33: float, rho44: float,
            rho14: float, rho23: float) -> TwoQubitState:
    """State supported on the diagonal and anti-diagonal only.

    Off-diagonal entries are restricted to be nonnegative reals; any X-shaped
    state can be brought to this form by local phase rotations.
    """
    if rho14 < 0 or rho23 < 0:
        raise ValueError("x_state takes nonnegative off-diagonal elements")
    rho = np.array(
        [
            [rho11, 0, 0, rho14],
            [0, rho22, rho23, 0],
            [0, rho23, rho33, 0],
            [rho14, 0, 0, rho44],
        ],
        dtype=complex,
    )
    return _validated(rho, "x_state")


def quantum_classical(kappa: float, x1: float, x3: float, y=(0.0, 0.0, 0.0)) -> TwoQubitState:
    """Correlation matrix with a single nonzero singular value:
    K = diag(kappa, 0, 0), x = (x1, 0, x3), arbitrary y."""
    b = BlochForm(np.array([x1, 0.0, x3]), np.asarray(y, dtype=float),
                  np.diag([kappa, 0.0, 0.0]))
    state = from_bloch(b)
    return _validated(state.rho, f"quantum_classical(kappa={kappa}, x1={x1}, x3={x3})")


def _beyond_x_entries(gamma: float):
    gt = np.sqrt(1.0 + 16.0 * gamma * gamma)
    if gt > 7.0 + 1e-12:
        raise OutOfPositivityRegion(f"beyond_x requires |gamma| <= sqrt(3), got gamma = {gamma}")
    lo = np.sqrt(max(7.0 - gt, 0.0))
    hi = np.sqrt(7.0 + gt)
    w1 = (lo * (gt - 1.0) + hi * (gt + 1.0)) / (2.0 * np.sqrt(2.0) * gt)
    w2 = (lo * (gt + 1.0) + hi * (gt - 1.0)) / (2.0 * np.sqrt(2.0) * gt)
    z = (hi - lo) / gt * np.sqrt(2.0) * gamma
    return w1, w2, z


def _beyond_x_rho(gamma: float, a: float) -> np.ndarray:
    w1, w2, z = _beyond_x_entries(gamma)
    return np.array(
        [
            [1 + a * (1 + w2), -1j * a * z, -1j * a * z, a * (2 - w1)],
            [1j * a * z, 1 + a * (1 - w2), a * (2 + w1), 1j * a * z],
            [1j * a * z, a * (2 + w1), 1 - a * (1 + w2), 1j * a * z],
            [a * (2 - w1), -1j * a * z, -1j * a * z, 1 - a * (1 - w2)],
        ],
        dtype=complex,
    ) / 4.0


def beyond_x(gamma: float, a: float) -> TwoQubitState:
    """Two-parameter family with x = (0, 0, a) and a non-diagonalizable-by-
    phases correlation block; K K^T = a^2 [[4,0,0],[0,4,2g],[0,2g,3]].

    The admissible range of a depends on gamma and is enforced by an explicit
    positivity check; see :func:`beyond_x_max_a` for the boundary.
    """
    return _validated(_beyond_x_rho(gamma, a), f"beyond_x(gamma={gamma}, a={a})")


def beyond_x_max_a(gamma: float, tol: float = 1e-12) -> float:
    """Largest a >= 0 keeping beyond_x(gamma, a) positive, by bisection on
    the minimum eigenvalue."""
    def min_ev(a):
        return np.linalg.eigvalsh(_beyond_x_rho(gamma, a)).min()

    lo, hi = 0.0, 1.0
    while min_ev(hi) > 0 and hi < 64.0:
        hi *= 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if min_ev(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return lo


FAMILY_BUILDERS = {
    "werner": werner,
    "isotropic": isotropic,
    "rho1": rho1,
    "rho2": rho2,
    "bell_diagonal": bell_diagonal,
    "pure_n": pure_n,
    "rho_theta": rho_theta,
    "x_state": x_state,
    "quantum_classical": quantum_classical,
    "beyond_x": beyond_x,
}
