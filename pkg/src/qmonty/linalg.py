"""Dense complex linear algebra helpers for the 27-dimensional game space.

Everything operates on plain numpy arrays with ``dtype=complex``. The basis of
the three-qutrit space is ordered so that the state |x y z> sits at integer
index 9x + 3y + z (first register most significant), which matches the
row-major Kronecker convention of :func:`tensor`.
"""

from __future__ import annotations

import numpy as np

#: Global tolerance for structural checks (unitarity, Hermiticity, trace).
TOL = 1e-10

#: Slack allowed below zero for eigenvalues of nominally positive matrices.
EIG_SLACK = 1e-9


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with (i1*rows_b + i2, j1*cols_b + j2) ordering."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=complex).conj().T


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product, with an explicit shape check."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"matmul: inner dimensions differ ({a.shape} vs {b.shape})")
    return a @ b


def trace(a: np.ndarray) -> complex:
    """Sum of diagonal entries of a square matrix."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"trace: expected a square matrix, got shape {a.shape}")
    return complex(np.trace(a))


def unitarity_residual(a: np.ndarray) -> float:
    """Max-norm of U†U - I."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"unitarity_residual: expected a square matrix, got shape {a.shape}")
    return float(np.abs(a.conj().T @ a - np.eye(a.shape[0])).max())


def check_unitary(a: np.ndarray, tol: float = TOL) -> bool:
    """True iff max|U†U - I| <= tol."""
    return unitarity_residual(a) <= tol


def require_unitary(a: np.ndarray, tol: float = TOL, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a complex array, raising if it fails unitarity at ``tol``.

    The error message reports the worst residual entry so a hand-typed matrix
    can be fixed without guessing.
    """
    a = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError(f"{name}: entries must be finite")
    r = unitarity_residual(a)
    if r > tol:
        raise ValueError(f"{name}: not unitary, max|U†U - I| = {r:.3e} > tol {tol:.1e}")
    return a


def min_eigenvalue_hermitian(a: np.ndarray, tol: float = TOL) -> float:
    """Smallest eigenvalue of the Hermitian part of ``a``.

    ``a`` must already be Hermitian within ``tol``; the symmetrization
    (a + a†)/2 only cleans up floating-point noise before the solve.
    """
    a = np.asarray(a, dtype=complex)
    dev = float(np.abs(a - a.conj().T).max())
    if dev > tol:
        raise ValueError(f"min_eigenvalue_hermitian: input is not Hermitian (max|A - A†| = {dev:.3e})")
    return float(np.linalg.eigvalsh((a + a.conj().T) / 2).min())
