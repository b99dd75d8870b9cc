"""Named player strategies and an 8-angle SU(3) parameterization.

A strategy is a 3x3 unitary acting on one player's qutrit. Four named
strategies are exposed under the tags used by the CLI and CSV output:

    I   identity (the classical stay-put choice)
    H   the fair strategy: diagonal magnitudes 1/sqrt(2), off-diagonal 1/2
    M1  cyclic shift |k> -> |k-1 mod 3|
    M2  cyclic shift |k> -> |k+1 mod 3|  (M2 = M1†, M1·M2 = I)

Arbitrary strategies enter either as explicit matrices (validated against
unitarity) or as 8 real angles through :func:`su3_from_angles`.
"""

from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from .linalg import TOL, require_unitary

StrategySpec = Union[str, Sequence[float], np.ndarray]

_SQRT2 = np.sqrt(2.0)
_SQRT7 = np.sqrt(7.0)


def identity_strategy() -> np.ndarray:
    return np.eye(3, dtype=complex)


def fair_strategy() -> np.ndarray:
    """The SU(3) unitary that makes the noiseless game fair against any Bob."""
    return np.array(
        [
            [1 / _SQRT2, 1 / 2, 1 / 2],
            [-1 / 2, (3 - 1j * _SQRT7) / (4 * _SQRT2), (1 + 1j * _SQRT7) / (4 * _SQRT2)],
            [(-1 - 1j * _SQRT7) / (4 * _SQRT2), (-3 + 1j * _SQRT7) / 8, (5 + 1j * _SQRT7) / 8],
        ],
        dtype=complex,
    )


def cycle_down() -> np.ndarray:
    """Permutation sending |k> to |k-1 mod 3> (tag M1)."""
    return np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)


def cycle_up() -> np.ndarray:
    """Permutation sending |k> to |k+1 mod 3> (tag M2)."""
    return np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)


NAMED_TAGS = ("I", "H", "M1", "M2")

_NAMED = {
    "I": identity_strategy,
    "H": fair_strategy,
    "M1": cycle_down,
    "M2": cycle_up,
}


def gell_mann_generators() -> np.ndarray:
    """The eight standard traceless Hermitian SU(3) generators, stacked (8,3,3)."""
    g = np.zeros((8, 3, 3), dtype=complex)
    g[0] = [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
    g[1] = [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]
    g[2] = [[1, 0, 0], [0, -1, 0], [0, 0, 0]]
    g[3] = [[0, 0, 1], [0, 0, 0], [1, 0, 0]]
    g[4] = [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]]
    g[5] = [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
    g[6] = [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]
    g[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return g


_GENERATORS = gell_mann_generators()


def su3_from_angles(angles: Sequence[float]) -> np.ndarray:
    """exp(i sum_k angles_k G_k) via eigendecomposition of the Hermitian sum.

    The map is total: any 8 real angles give a unitary; the zero vector gives
    the identity.
    """
    v = np.asarray(angles, dtype=float)
    if v.shape != (8,):
        raise ValueError(f"su3_from_angles: expected 8 angles, got shape {v.shape}")
    h = np.tensordot(v, _GENERATORS, axes=1)
    w, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(1j * w)) @ vecs.conj().T


def su3_from_angles_batch(angles: np.ndarray) -> np.ndarray:
    """Vectorized su3_from_angles for an (n, 8) array; returns (n, 3, 3)."""
    v = np.asarray(angles, dtype=float)
    if v.ndim != 2 or v.shape[1] != 8:
        raise ValueError(f"su3_from_angles_batch: expected shape (n, 8), got {v.shape}")
    h = np.tensordot(v, _GENERATORS, axes=([1], [0]))
    w, vecs = np.linalg.eigh(h)
    return np.einsum("nij,nj,nkj->nik", vecs, np.exp(1j * w), vecs.conj())


def resolve(spec: StrategySpec, tol: float = TOL) -> np.ndarray:
    """Turn a strategy spec into a validated 3x3 unitary.

    Accepts a named tag from ``NAMED_TAGS``, an explicit 3x3 matrix
    (validated against unitarity at ``tol``; the error reports the residual),
    or an 8-vector of angles (always valid).
    """
    if isinstance(spec, str):
        try:
            return _NAMED[spec]()
        except KeyError:
            raise ValueError(f"unknown strategy tag {spec!r}; expected one of {NAMED_TAGS}") from None
    arr = np.asarray(spec)
    if arr.shape == (3, 3):
        return require_unitary(arr, tol=tol, name="strategy")
    if arr.shape == (8,):
        return su3_from_angles(arr.astype(float))
    raise ValueError(f"strategy spec must be a tag, a 3x3 matrix or 8 angles; got shape {arr.shape}")


def strategy_label(spec: StrategySpec) -> str:
    """CSV/report label for a spec: the tag itself, 'angles', or 'custom'."""
    if isinstance(spec, str):
        return spec
    arr = np.asarray(spec)
    return "angles" if arr.shape == (8,) else "custom"


def haar_random_unitary(rng: np.random.Generator) -> np.ndarray:
    """Draw a Haar-distributed 3x3 unitary from ``rng``.

    QR of a complex Gaussian matrix, with the R diagonal's phases folded back
    into Q so the distribution is uniform rather than QR-convention-skewed.
    """
    x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    q, r = np.linalg.qr(x)
    d = np.diag(r)
    return q * (d / np.abs(d))
