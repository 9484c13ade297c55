"""Density-matrix <-> Bloch/correlation representation of two-qubit states.

A two-qubit state is stored either as a 4x4 density matrix (basis
|00>, |01>, |10>, |11>) or as the triple (x, y, K): the Bloch vectors of
the two marginals and the 3x3 correlation matrix

    rho = (1/4) (I (x) I  +  <x,sigma> (x) I  +  I (x) <y,sigma>
                 + sum_jk K_jk sigma_j (x) sigma_k)

Local unitaries act on this data through a pair of SO(3) rotations:
x -> Ux, y -> Vy, K -> U K V^T.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian, NotPositive, NotSpecialOrthogonal, NotUnitTrace

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)
IDENTITY_2 = np.eye(2, dtype=complex)

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10
ROTATION_TOL = 1e-12


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class TwoQubitState:
    """A 4x4 density matrix. Construct through :func:`validate_state`."""

    rho: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rho", _readonly(np.asarray(self.rho, dtype=complex)))


@dataclass(frozen=True)
class BlochForm:
    """Bloch vectors of both marginals plus the correlation matrix."""

    x: np.ndarray
    y: np.ndarray
    K: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", _readonly(np.asarray(self.x, dtype=float)))
        object.__setattr__(self, "y", _readonly(np.asarray(self.y, dtype=float)))
        object.__setattr__(self, "K", _readonly(np.asarray(self.K, dtype=float)))


@dataclass(frozen=True)
class LocalFrame:
    """SO(3) pair (U, V) with U K V^T = diag(D); D entries may be negative."""

    U: np.ndarray
    V: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "U", _readonly(np.asarray(self.U, dtype=float)))
        object.__setattr__(self, "V", _readonly(np.asarray(self.V, dtype=float)))
        object.__setattr__(self, "D", _readonly(np.asarray(self.D, dtype=float)))


def validate_state(rho) -> TwoQubitState:
    """Check Hermiticity, unit trace and positivity of a 4x4 matrix.

    Raises NotHermitian, NotUnitTrace or NotPositive, each carrying the
    violation magnitude. Tolerances are absolute (1e-10), loose enough for
    double-precision data read from files.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > HERMITICITY_TOL:
        raise NotHermitian(float(herm))
    tr_dev = abs(np.trace(rho) - 1.0)
    if tr_dev > TRACE_TOL:
        raise NotUnitTrace(float(tr_dev))
    min_ev = float(np.linalg.eigvalsh(rho).min())
    if min_ev < -POSITIVITY_TOL:
        raise NotPositive(min_ev)
    return TwoQubitState(rho)


def _as_rho(state) -> np.ndarray:
    return state.rho if isinstance(state, TwoQubitState) else np.asarray(state, dtype=complex)


def to_bloch(state) -> BlochForm:
    """Extract (x, y, K): x_j = tr(rho s_j (x) I), K_jk = tr(rho s_j (x) s_k)."""
    rho = _as_rho(state)
    x = np.empty(3)
    y = np.empty(3)
    K = np.empty((3, 3))
    for j, sj in enumerate(PAULI):
        x[j] = np.trace(rho @ np.kron(sj, IDENTITY_2)).real
        y[j] = np.trace(rho @ np.kron(IDENTITY_2, sj)).real
        for k, sk in enumerate(PAULI):
            K[j, k] = np.trace(rho @ np.kron(sj, sk)).real
    return BlochForm(x, y, K)


def from_bloch(b: BlochForm) -> TwoQubitState:
    """Rebuild the density matrix from (x, y, K). No positivity check here:
    arbitrary Bloch data need not describe a physical state, so callers
    validate separately when they need a guarantee."""
    rho = np.kron(IDENTITY_2, IDENTITY_2).astype(complex)
    for j, sj in enumerate(PAULI):
        rho += b.x[j] * np.kron(sj, IDENTITY_2)
        rho += b.y[j] * np.kron(IDENTITY_2, sj)
        for k, sk in enumerate(PAULI):
            rho += b.K[j, k] * np.kron(sj, sk)
    return TwoQubitState(rho / 4.0)


def _signed_svd(K: np.ndarray):
    """SVD-based factorization K = U^T diag(D) V with U, V in SO(3).

    Singular values come out descending; a reflection in either factor is
    absorbed by flipping its third column together with the sign of D[2],
    so both determinants end up +1 and D may carry one negative entry.
    """
    W, s, Vh = np.linalg.svd(K)
    D = s.copy()
    # deterministic column signs: first component of sizable magnitude positive
    for i in range(3):
        col = W[:, i]
        lead = col[np.argmax(np.abs(col))]
        if lead < 0:
            W[:, i] = -col
            Vh[i, :] = -Vh[i, :]
    U = W.T
    V = Vh
    if np.linalg.det(U) < 0:
        U[2, :] = -U[2, :]
        D[2] = -D[2]
    if np.linalg.det(V) < 0:
        V[2, :] = -V[2, :]
        D[2] = -D[2]
    return U, V, D


def diagonalize_correlation(b: BlochForm) -> tuple[LocalFrame, BlochForm]:
    """Rotate to a locally equivalent form with diagonal correlation matrix.

    Returns the SO(3) pair and the transformed Bloch form (Ux, Vy, diag(D)).
    Sorted |D| equals the singular values of K.
    """
    U, V, D = _signed_svd(b.K)
    frame = LocalFrame(U, V, D)
    return frame, BlochForm(U @ b.x, V @ b.y, np.diag(D))


def _check_rotation(R: np.ndarray, name: str):
    if np.abs(R @ R.T - np.eye(3)).max() > 1e-10 or abs(np.linalg.det(R) - 1.0) > 1e-10:
        raise NotSpecialOrthogonal(f"{name} is not a special orthogonal 3x3 matrix")


def apply_local_rotation(b: BlochForm, U, V) -> BlochForm:
    """Apply the local-frame change x -> Ux, y -> Vy, K -> U K V^T."""
    U = np.asarray(U, dtype=float)
    V = np.asarray(V, dtype=float)
    _check_rotation(U, "U")
    _check_rotation(V, "V")
    return BlochForm(U @ b.x, V @ b.y, U @ b.K @ V.T)
