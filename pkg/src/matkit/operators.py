# src/matkit/operators.py
"""
Single-qubit operators and the two-qubit basis convention.

Single-qubit basis order is (e, g): index 0 is the excited state. The two-qubit
basis is |q1 q2> = |q1> (x) |q2> with q1 the slow index, giving the order
(ee, eg, ge, gg) and basis index b = 2*(1 - s1) + (1 - s2), s = 1 meaning excited.
"""
import numpy as np


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    arr.setflags(write=False)
    return arr


IDENTITY_2 = _frozen(np.eye(2))
SIGMA_X = _frozen([[0, 1], [1, 0]])
SIGMA_Z = _frozen([[1, 0], [0, -1]])
SIGMA_MINUS = _frozen([[0, 0], [1, 0]])  # |g><e|

BASIS_LABELS = ("ee", "eg", "ge", "gg")


def basis_index(s1: int, s2: int) -> int:
    """Basis index of the product state with excitations (s1, s2)."""
    if s1 not in (0, 1) or s2 not in (0, 1):
        raise ValueError(f"basis_index: excitations must be 0 or 1, got ({s1}, {s2}).")
    return 2 * (1 - s1) + (1 - s2)


def basis_state(s1: int, s2: int) -> np.ndarray:
    """Normalized amplitude vector of |s1 s2>."""
    psi = np.zeros(4, dtype=complex)
    psi[basis_index(s1, s2)] = 1.0
    return psi


def excitations(index: int) -> tuple[int, int]:
    """Inverse of basis_index."""
    if index not in range(4):
        raise ValueError(f"excitations: basis index must be in [0, 4), got {index}.")
    return 1 - index // 2, 1 - index % 2
