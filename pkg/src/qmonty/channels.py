"""Qutrit noise channels in Kraus form, and their lift to the game space.

Each channel is built on a single qutrit (dim 3) and lifted to the full
three-qutrit space by acting on the two player registers while leaving the
opened-box register untouched:

    {e_1 .. e_n}  ->  {I3 (x) e_i (x) e_j : i, j in 1..n}

which keeps the completeness sum intact (it factorizes register-wise).
Zero-probability Kraus elements are kept rather than pruned so the operator
counts stay at their nominal values (3, 2 and 9) for every p.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .linalg import tensor

#: Primitive third root of unity.
OMEGA = np.exp(2j * np.pi / 3)

_I3 = np.eye(3, dtype=complex)


class ChannelKind(enum.Enum):
    """The supported noise models. Values double as the CLI channel names."""

    NOISELESS = "none"
    AMPLITUDE_DAMPING = "amp-damp"
    DEPHASING = "dephasing"
    DEPOLARIZING = "depolarizing"


@dataclass(frozen=True)
class KrausSet:
    """A family of Kraus operators {E_k} with sum_k E_k†E_k = I.

    Parameters
    ----------
    kind : ChannelKind
    p : float
        Decoherence parameter in [0, 1].
    dim : int
        Dimension the operators act on (3 before lifting, 27 after).
    ops : tuple of ndarray
        The operators, each dim x dim complex.
    """

    kind: ChannelKind
    p: float
    dim: int
    ops: tuple = field(repr=False)

    def __post_init__(self):
        for k, op in enumerate(self.ops):
            if op.shape != (self.dim, self.dim):
                raise ValueError(f"KrausSet: operator {k} has shape {op.shape}, expected ({self.dim}, {self.dim})")


def completeness_residual(kset: KrausSet) -> float:
    """Max-norm deviation of sum_k E_k†E_k from the identity."""
    acc = np.zeros((kset.dim, kset.dim), dtype=complex)
    for op in kset.ops:
        acc += op.conj().T @ op
    return float(np.abs(acc - np.eye(kset.dim)).max())


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    return p


def shift_matrix() -> np.ndarray:
    """Cyclic level-shift word Y used by the depolarizing channel.

        Y = |0><1| + |1><2| + |2><0|
    """
    return np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)


def clock_matrix() -> np.ndarray:
    """Diagonal phase word Z = diag(1, w, w^2), w = exp(2i pi/3)."""
    return np.diag([1.0, OMEGA, OMEGA**2]).astype(complex)


def kraus_amplitude_damping(p: float) -> KrausSet:
    """Energy-loss channel on one qutrit: both excited levels decay to |0>.

    E0 = diag(1, sqrt(1-p), sqrt(1-p)), E1 = sqrt(p)|0><1|, E2 = sqrt(p)|0><2|.
    """
    p = _check_p(p)
    e0 = np.diag([1.0, np.sqrt(1 - p), np.sqrt(1 - p)]).astype(complex)
    e1 = np.zeros((3, 3), dtype=complex)
    e1[0, 1] = np.sqrt(p)
    e2 = np.zeros((3, 3), dtype=complex)
    e2[0, 2] = np.sqrt(p)
    return KrausSet(ChannelKind.AMPLITUDE_DAMPING, p, 3, (e0, e1, e2))


def kraus_dephasing(p: float) -> KrausSet:
    """Phase-randomizing channel: E0 = sqrt(1-p) I, E1 = sqrt(p) diag(1, w, w^2)."""
    p = _check_p(p)
    return KrausSet(ChannelKind.DEPHASING, p, 3, (np.sqrt(1 - p) * _I3, np.sqrt(p) * clock_matrix()))


def kraus_depolarizing(p: float) -> KrausSet:
    """Uniform generalized-Pauli channel over the eight nontrivial Y/Z words.

    E0 = sqrt(1-p) I and sqrt(p/8) {Y, Z, Y², YZ, Y²Z, YZ², Y²Z², Z²}.
    """
    p = _check_p(p)
    y = shift_matrix()
    z = clock_matrix()
    words = (y, z, y @ y, y @ z, y @ y @ z, y @ z @ z, y @ y @ z @ z, z @ z)
    ops = (np.sqrt(1 - p) * _I3,) + tuple(np.sqrt(p / 8) * w for w in words)
    return KrausSet(ChannelKind.DEPOLARIZING, p, 3, ops)


def kraus_noiseless(p: float = 0.0) -> KrausSet:
    """Identity channel (p accepted for interface uniformity, ignored)."""
    _check_p(p)
    return KrausSet(ChannelKind.NOISELESS, 0.0, 3, (_I3.copy(),))


_BUILDERS = {
    ChannelKind.NOISELESS: kraus_noiseless,
    ChannelKind.AMPLITUDE_DAMPING: kraus_amplitude_damping,
    ChannelKind.DEPHASING: kraus_dephasing,
    ChannelKind.DEPOLARIZING: kraus_depolarizing,
}


def kraus_for(kind: ChannelKind, p: float) -> KrausSet:
    """Single-qutrit Kraus set for the given channel kind at decoherence p."""
    return _BUILDERS[kind](p)


def lift_to_game_space(single: KrausSet) -> KrausSet:
    """Lift a single-qutrit Kraus set to the 27-dim game space.

    Noise acts independently on the two player registers; the opened-box
    register is noiseless. The lifted family has n^2 operators.
    """
    if single.dim != 3:
        raise ValueError(f"lift_to_game_space: expected dim-3 operators, got dim {single.dim}")
    ops = tuple(tensor(_I3, tensor(ei, ej)) for ei in single.ops for ej in single.ops)
    return KrausSet(single.kind, single.p, 27, ops)


def apply_channel(rho: np.ndarray, kset: KrausSet) -> np.ndarray:
    """Apply the channel: rho -> sum_k E_k rho E_k†."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (kset.dim, kset.dim):
        raise ValueError(f"apply_channel: state shape {rho.shape} does not match Kraus dim {kset.dim}")
    out = np.zeros_like(rho)
    for op in kset.ops:
        out += op @ rho @ op.conj().T
    return out
