"""Closed-form payoff expressions for four pinned strategy choices.

Each function here is an independent algebraic target for the density-matrix
engine: it evaluates a hand-derived polynomial in the noise strength p and the
switch/stick mixing angle γ, with no operators, states, or channels involved.
The ``*_fair`` pair fixes Alice's unitary to the balancing strategy H and
Bob's to the identity; the ``*_classical_bob`` pair keeps Bob classical
(B = I) but leaves Alice free, entering only through the squared magnitudes
|a_ij|² of her matrix. Agreement with :func:`qmonty.engine.play` on a dense
(p, γ) grid is what certifies the engine end to end.
"""

from __future__ import annotations

import numpy as np

from .strategies import StrategySpec, resolve


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    return p


def _magnitudes(alice: StrategySpec) -> np.ndarray:
    """|a_ij|² of Alice's resolved 3x3 unitary."""
    return np.abs(resolve(alice)) ** 2


def amp_damp_fair(p: float, gamma: float) -> float:
    """Bob's total payoff under amplitude damping with A = H, B = I.

    (1/6)[(3 − 2(−1+p)p)cos²γ + (3 + 2(−1+p)p)sin²γ]: exactly 1/2 at p = 0
    and p = 1, and symmetric under p ↦ 1−p, peaking at p = 0.5 for the
    switching branch (γ = 0) with value 7/12.
    """
    p = _check_p(p)
    q = 2 * (-1 + p) * p
    return ((3 - q) * np.cos(gamma) ** 2 + (3 + q) * np.sin(gamma) ** 2) / 6


def depol_fair(p: float, gamma: float) -> float:
    """Bob's total payoff under depolarizing noise with A = H, B = I.

    (1/128)[(64 + 3(16−9p)p)cos²γ + (64 + 3p(−16+9p))sin²γ]: 1/2 at p = 0,
    81.25/128 at (p=0.5, γ=0), and 85.33…/128 ≈ 2/3 at (p=0.9, γ=0).
    """
    p = _check_p(p)
    q = 3 * (16 - 9 * p) * p
    return ((64 + q) * np.cos(gamma) ** 2 + (64 - q) * np.sin(gamma) ** 2) / 128


def amp_damp_classical_bob(alice: StrategySpec, p: float, gamma: float) -> float:
    """Bob's total payoff under amplitude damping when Bob stays classical.

    Polynomial in p with coefficients built from the |a_ij|² of Alice's
    matrix; the γ = 0 (switch) and γ = π/2 (stick) branches carry different
    coefficient sets. With alice = H this collapses to :func:`amp_damp_fair`.
    """
    p = _check_p(p)
    m = _magnitudes(alice)
    switch_branch = -(
        -(m[0, 1] + m[0, 2] + m[1, 2] + m[2, 1]) * (-1 + p) ** 2
        + (2 * m[0, 0] + m[1, 0] + m[1, 1] + m[1, 2] + m[2, 0] + m[2, 1] + m[2, 2]) * (-1 + p) * p
        + (m[1, 0] + m[2, 0]) * (-1 - 2 * p**2)
    ) / 3
    stick_branch = -(
        m[0, 0] * (-1 - 2 * p**2)
        + (m[1, 1] + m[2, 2]) * (-1 + 2 * p - p**2)
        + (m[0, 1] + m[0, 2] + m[1, 0] + m[2, 0]) * (-p + p**2)
    ) / 3
    return switch_branch * np.cos(gamma) ** 2 + stick_branch * np.sin(gamma) ** 2


def depol_classical_bob(alice: StrategySpec, p: float, gamma: float) -> float:
    """Bob's total payoff under depolarizing noise when Bob stays classical.

    Depends on Alice's matrix only through the diagonal and off-diagonal
    sums of |a_ij|² (the channel washes out everything finer). With
    alice = H this collapses to :func:`depol_fair`.
    """
    p = _check_p(p)
    m = _magnitudes(alice)
    off_sum = m[0, 1] + m[0, 2] + m[1, 0] + m[1, 2] + m[2, 0] + m[2, 1]
    diag_sum = m[0, 0] + m[1, 1] + m[2, 2]
    switch_branch = (
        (64 - 96 * p + 54 * p**2) * off_sum + (48 * p - 27 * p**2) * (2 * diag_sum + off_sum)
    ) / 192
    stick_branch = -((-48 * p + 27 * p**2) * off_sum + (-64 + 96 * p - 54 * p**2) * diag_sum) / 192
    return switch_branch * np.cos(gamma) ** 2 + stick_branch * np.sin(gamma) ** 2
