"""Density-matrix engine for the three-qutrit quantum Monty Hall game.

The game space is a 27-dimensional Hilbert space of three qutrits with basis
state |x y z> at index 9x + 3y + z:

    register 1 (x): which box the host opens
    register 2 (y): Bob's chosen box
    register 3 (z): where Alice hid the prize

Registers 2 and 3 start maximally entangled, pass through the noise channel,
then the players' local unitaries B and A act, the host marks an opened box
(operator O), and Bob either switches (operator S, weight cos γ) or stays
(identity, weight sin γ). Bob wins whenever his register agrees with Alice's,
i.e. on the diagonal indices 9i + 3j + j. All payoffs are exact expectations;
nothing is sampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channels import ChannelKind, apply_channel, kraus_for, lift_to_game_space
from .linalg import TOL, require_unitary, tensor

#: Diagonal indices 9i + 3j + j where Bob's box matches the prize box.
WIN_INDICES = tuple(9 * i + 3 * j + j for i in range(3) for j in range(3))

#: Bound on the imaginary residue tolerated in summed diagonal entries.
IMAG_RESIDUE_TOL = 1e-12

_I3 = np.eye(3, dtype=complex)


@dataclass
class GameConfig:
    """One fully specified round: channel, decoherence, mixing angle, strategies.

    ``gamma`` weights Bob's two branches: γ=0 is pure switching, γ=π/2 pure
    sticking. ``alice`` and ``bob`` are 3x3 unitaries (validated at ``tol``).
    """

    channel: ChannelKind
    p: float
    gamma: float
    alice: np.ndarray
    bob: np.ndarray
    tol: float = TOL

    def __post_init__(self):
        if not isinstance(self.channel, ChannelKind):
            raise ValueError(f"channel: expected a ChannelKind, got {self.channel!r}")
        self.p = float(self.p)
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p: must be in [0, 1], got {self.p}")
        self.gamma = float(self.gamma)
        if not 0.0 <= self.gamma <= np.pi / 2:
            raise ValueError(f"gamma: must be in [0, pi/2], got {self.gamma}")
        self.alice = require_unitary(self.alice, tol=self.tol, name="alice")
        self.bob = require_unitary(self.bob, tol=self.tol, name="bob")
        if self.alice.shape != (3, 3):
            raise ValueError(f"alice: expected a 3x3 matrix, got {self.alice.shape}")
        if self.bob.shape != (3, 3):
            raise ValueError(f"bob: expected a 3x3 matrix, got {self.bob.shape}")


@dataclass
class PayoffResult:
    """Bob's branch payoffs and totals; alice = 1 - bob_total (zero sum)."""

    bob_not_switch: float
    bob_switch: float
    bob_total: float
    alice: float


def build_open_operator() -> np.ndarray:
    """27x27 basis permutation marking the box the host opens.

    Column |l j k> with j != k goes to row |n j k>, n = (i + l) mod 3 with i
    the unique index distinct from j and k: the host must open the one box
    that is neither Bob's choice nor the prize. Column |l j j> (Bob sits on
    the prize, the host picks a convention) goes to row |m j j>,
    m = (j + l + 1) mod 3. Injective on each column class, hence unitary.
    """
    op = np.zeros((27, 27), dtype=complex)
    for l in range(3):
        for j in range(3):
            for k in range(3):
                col = 9 * l + 3 * j + k
                if j != k:
                    i = 3 - j - k
                    row = 9 * ((i + l) % 3) + 3 * j + k
                else:
                    row = 9 * ((j + l + 1) % 3) + 3 * j + j
                op[row, col] = 1.0
    return op


def build_switch_operator() -> np.ndarray:
    """27x27 basis permutation moving Bob to the remaining unopened box.

    Column |i j k> with j != i goes to row |i l k> where l is the unique index
    distinct from i and j. Columns |i i k> are fixed points (they keep the
    operator unitary; they never occur in an actual game round).
    """
    op = np.zeros((27, 27), dtype=complex)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                col = 9 * i + 3 * j + k
                if j != i:
                    row = 9 * i + 3 * (3 - i - j) + k
                else:
                    row = col
                op[row, col] = 1.0
    return op


def initial_state() -> np.ndarray:
    """rho_i = |psi><psi| with |psi> = |0> (x) (|00> + |11> + |22>)/sqrt(3).

    The opened-box register starts at |0>; the player registers share the
    maximally entangled pair, so the diagonal support is {0, 4, 8}.
    """
    psi = np.zeros(27, dtype=complex)
    for m in range(3):
        psi[3 * m + m] = 1 / np.sqrt(3)
    return np.outer(psi, psi.conj())


@lru_cache(maxsize=1)
def _open_operator() -> np.ndarray:
    return build_open_operator()


@lru_cache(maxsize=1)
def _switch_operator() -> np.ndarray:
    return build_switch_operator()


@lru_cache(maxsize=1)
def _initial_state() -> np.ndarray:
    return initial_state()


@lru_cache(maxsize=32)
def _lifted_kraus(kind: ChannelKind, p: float):
    return lift_to_game_space(kraus_for(kind, p))


def noisy_initial_state(channel: ChannelKind, p: float) -> np.ndarray:
    """Initial state after the lifted channel (noise acts once, up front)."""
    return apply_channel(_initial_state(), _lifted_kraus(channel, float(p)))


def strategy_operator(cfg: GameConfig) -> np.ndarray:
    """The players' joint move I3 (x) B (x) A on the game space."""
    return tensor(_I3, tensor(cfg.bob, cfg.alice))


def evolve(cfg: GameConfig) -> tuple[np.ndarray, np.ndarray]:
    """Run one round; return the two branch states (rho_fN, rho_fS).

    rho_fN = U_N rho_noisy U_N†  with  U_N = sin(γ) O (I⊗B⊗A)
    rho_fS = U_S rho_noisy U_S†  with  U_S = cos(γ) S O (I⊗B⊗A)

    The branch weights ride on the operators, so trace(rho_fN) = sin²γ and
    trace(rho_fS) = cos²γ.
    """
    rho_noisy = noisy_initial_state(cfg.channel, cfg.p)
    moved = _open_operator() @ strategy_operator(cfg)
    u_not_switch = np.sin(cfg.gamma) * moved
    u_switch = np.cos(cfg.gamma) * (_switch_operator() @ moved)
    rho_fn = u_not_switch @ rho_noisy @ u_not_switch.conj().T
    rho_fs = u_switch @ rho_noisy @ u_switch.conj().T
    return rho_fn, rho_fs


def _winning_diagonal_sum(rho: np.ndarray, which: str) -> float:
    total = 0.0
    for idx in WIN_INDICES:
        entry = rho[idx, idx]
        if abs(entry.imag) >= IMAG_RESIDUE_TOL:
            raise ValueError(
                f"bob_payoff: diagonal entry {idx} of {which} has imaginary residue "
                f"{entry.imag:.3e} >= {IMAG_RESIDUE_TOL:.0e}; this signals an upstream bug"
            )
        total += entry.real
    return total


def bob_payoff(rho_fn: np.ndarray, rho_fs: np.ndarray) -> PayoffResult:
    """Sum the winning diagonal of both branches; Alice gets the complement."""
    if rho_fn.shape != (27, 27) or rho_fs.shape != (27, 27):
        raise ValueError(f"bob_payoff: expected 27x27 states, got {rho_fn.shape} and {rho_fs.shape}")
    bob_not_switch = _winning_diagonal_sum(rho_fn, "the not-switch branch")
    bob_switch = _winning_diagonal_sum(rho_fs, "the switch branch")
    total = bob_not_switch + bob_switch
    return PayoffResult(bob_not_switch, bob_switch, total, 1.0 - total)


def play(cfg: GameConfig) -> PayoffResult:
    """Exact expected payoffs for one configuration. Pure and deterministic."""
    rho_fn, rho_fs = evolve(cfg)
    return bob_payoff(rho_fn, rho_fs)
