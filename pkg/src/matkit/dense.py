# src/matkit/dense.py
"""
Dense complex linear algebra for the 2x2 and 4x4 matrices of the two-qubit model.

Matrices are numpy arrays of complex entries. All functions are pure and never
modify their inputs.
"""
import numpy as np
from scipy.linalg import expm

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-8
NEGATIVE_EIGENVALUE_TOL = 1e-6
EIGENVALUE_CLIP = 1e-12

SUBSYSTEMS = ("A", "B")


def _as_square(m, name: str, dims=(2, 4)) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] not in dims:
        raise ValueError(f"{name}: expected a square matrix of dimension {dims}, got shape {arr.shape}.")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: matrix has non-finite entries.")
    return arr


def _check_hermitian(arr: np.ndarray, name: str, tol: float = HERMITIAN_TOL):
    deviation = np.max(np.abs(arr - arr.conj().T))
    if deviation > tol:
        raise ValueError(f"{name}: matrix is not Hermitian (max |m - m^dag| = {deviation:.3e}).")


def _check_unit_trace(arr: np.ndarray, name: str):
    trace = np.trace(arr)
    if abs(trace - 1.0) > TRACE_TOL:
        raise ValueError(f"{name}: density matrix trace is {trace.real:.12g}, expected 1.")


def kron(a, b) -> np.ndarray:
    """Kronecker product a (x) b of two 2x2 matrices, (a (x) b)[2i+k, 2j+l] = a[i, j] b[k, l]."""
    a = _as_square(a, "kron", dims=(2,))
    b = _as_square(b, "kron", dims=(2,))
    return np.kron(a, b)


def mat_exp(m, scale: complex = 1.0) -> np.ndarray:
    """exp(scale * m) by Pade scaling and squaring."""
    arr = _as_square(m, "mat_exp")
    if not np.isfinite(scale):
        raise ValueError(f"mat_exp: scale must be finite, got {scale}.")
    return expm(complex(scale) * arr)


def herm_eigvals(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in ascending order."""
    arr = _as_square(m, "herm_eigvals")
    _check_hermitian(arr, "herm_eigvals")
    return np.linalg.eigvalsh(arr)


def partial_trace(rho, keep: str) -> np.ndarray:
    """Reduced 2x2 density matrix of qubit `keep` ("A" = q1, "B" = q2)."""
    if keep not in SUBSYSTEMS:
        raise ValueError(f"partial_trace: subsystem must be one of {SUBSYSTEMS}, got {keep!r}.")
    arr = _as_square(rho, "partial_trace", dims=(4,))
    _check_hermitian(arr, "partial_trace", tol=TRACE_TOL)
    _check_unit_trace(arr, "partial_trace")
    # rho[2i+k, 2j+l] -> tensor[i, k, j, l]
    tensor = arr.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ikjk->ij", tensor)
    return np.einsum("ikil->kl", tensor)


def von_neumann_entropy(rho) -> float:
    """S(rho) = -Tr[rho ln rho] in nats, with 0 ln 0 = 0."""
    arr = _as_square(rho, "von_neumann_entropy")
    _check_hermitian(arr, "von_neumann_entropy", tol=TRACE_TOL)
    _check_unit_trace(arr, "von_neumann_entropy")
    eigvals = np.linalg.eigvalsh(0.5 * (arr + arr.conj().T))
    if eigvals[0] < -NEGATIVE_EIGENVALUE_TOL:
        raise ValueError(f"von_neumann_entropy: eigenvalue {eigvals[0]:.3e} < 0, not a density matrix.")
    eigvals = np.clip(eigvals, 0.0, 1.0)
    eigvals = eigvals[eigvals > EIGENVALUE_CLIP]
    entropy = float(-np.sum(eigvals * np.log(eigvals)))
    return min(max(entropy, 0.0), float(np.log(arr.shape[0])))
