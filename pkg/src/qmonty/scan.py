"""Best-response search over one player's SU(3) strategy space.

Fix the channel, noise strength, mixing angle, and one player's unitary, then
look for the other player's best reply: grid the eight strategy angles
coarsely, keep the best cell, and polish it by coordinate descent. Because the
host's marking and switching operators are basis permutations, Bob's total
payoff is a quadratic form in the free player's matrix entries against a
precomputed (3, 3, 3) kernel, so whole batches of candidate unitaries are
scored with a single einsum instead of 27x27 matrix products.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import ChannelKind
from .engine import (
    WIN_INDICES,
    GameConfig,
    PayoffResult,
    _open_operator,
    _switch_operator,
    noisy_initial_state,
    play,
)
from .strategies import (
    NAMED_TAGS,
    StrategySpec,
    resolve,
    su3_from_angles,
    su3_from_angles_batch,
)

#: Coarse grids beyond this many cells are refused rather than attempted.
MAX_GRID_CELLS = 10**7

_CHUNK = 1 << 16


@dataclass
class ScanSpec:
    """Search problem: who is pinned, to what, and how hard to look."""

    channel: ChannelKind
    p: float
    gamma: float
    fixed_player: str
    fixed_strategy: StrategySpec
    grid_points_per_angle: int = 5
    refine_iterations: int = 3

    def __post_init__(self):
        if not isinstance(self.channel, ChannelKind):
            raise ValueError(f"channel: expected a ChannelKind, got {self.channel!r}")
        self.p = float(self.p)
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p: must be in [0, 1], got {self.p}")
        self.gamma = float(self.gamma)
        if not 0.0 <= self.gamma <= np.pi / 2:
            raise ValueError(f"gamma: must be in [0, pi/2], got {self.gamma}")
        if self.fixed_player not in ("alice", "bob"):
            raise ValueError(f"fixed_player: expected 'alice' or 'bob', got {self.fixed_player!r}")
        self.grid_points_per_angle = int(self.grid_points_per_angle)
        if self.grid_points_per_angle < 2:
            raise ValueError(
                f"grid_points_per_angle: must be >= 2, got {self.grid_points_per_angle}"
            )
        cells = self.grid_points_per_angle**8
        if cells > MAX_GRID_CELLS:
            raise ValueError(
                f"grid_points_per_angle: {self.grid_points_per_angle}^8 = {cells} cells "
                f"exceeds the cap of {MAX_GRID_CELLS}; use a coarser grid plus refinement"
            )
        self.refine_iterations = int(self.refine_iterations)
        if self.refine_iterations < 0:
            raise ValueError(f"refine_iterations: must be >= 0, got {self.refine_iterations}")

    @property
    def free_player(self) -> str:
        return "bob" if self.fixed_player == "alice" else "alice"


@dataclass
class ScanReport:
    """Outcome of a scan; ``named_payoffs`` benchmarks I/H/M1/M2 in the free seat."""

    spec: ScanSpec
    best_angles: tuple[float, ...]
    best_strategy: np.ndarray
    best_payoff: PayoffResult
    best_value: float
    coarse_value: float
    refined_value: float
    named_payoffs: dict[str, PayoffResult] = field(default_factory=dict)


def _permutation_image(op: np.ndarray) -> np.ndarray:
    """For a 0/1 permutation matrix, the row index each column maps to."""
    rows, cols = np.nonzero(np.abs(op) > 0.5)
    image = np.empty(op.shape[1], dtype=np.intp)
    image[cols] = rows
    return image


def payoff_kernel(spec: ScanSpec) -> np.ndarray:
    """(3, 3, 3) kernel K with bob_total(F) = Σ F[r, s] conj(F[r, t]) K[r, s, t].

    ``F`` is the free player's unitary. The kernel folds together the noisy
    initial state, the fixed player's unitary, the branch weights sin²γ /
    cos²γ, and the preimages of the winning diagonal under the marking (and
    switching) permutations.
    """
    open_image = _permutation_image(_open_operator())
    switch_image = _permutation_image(_switch_operator())
    win = np.zeros(27, dtype=bool)
    win[list(WIN_INDICES)] = True
    mask_not_switch = win[open_image].reshape(3, 3, 3).astype(float)
    mask_switch = win[switch_image[open_image]].reshape(3, 3, 3).astype(float)
    mask = (
        np.sin(spec.gamma) ** 2 * mask_not_switch + np.cos(spec.gamma) ** 2 * mask_switch
    )

    rho6 = noisy_initial_state(spec.channel, spec.p).reshape((3,) * 6)
    fixed = resolve(spec.fixed_strategy)
    if spec.fixed_player == "bob":
        # Alice is free: contract out the opened-box and Bob axes.
        return np.einsum("xyz,yu,yv,xuaxvb->zab", mask, fixed, fixed.conj(), rho6)
    # Bob is free: contract out the opened-box and Alice axes.
    return np.einsum("xyz,za,zb,xuaxvb->yuv", mask, fixed, fixed.conj(), rho6)


def kernel_payoff(free: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Bob's total payoff for a batch (n, 3, 3) of free-player unitaries."""
    return np.einsum("nrs,nrt,rst->n", free, free.conj(), kernel).real


def _objective(bob_total: np.ndarray, free_player: str) -> np.ndarray:
    """What the free player is maximizing (Alice holds 1 - bob_total)."""
    return bob_total if free_player == "bob" else 1.0 - bob_total


def _best_coarse_cell(spec: ScanSpec, kernel: np.ndarray) -> tuple[np.ndarray, float]:
    g = spec.grid_points_per_angle
    axes = np.linspace(0.0, 2 * np.pi, g, endpoint=False)
    total = g**8
    best_val = -np.inf
    best_angles = np.zeros(8)
    for lo in range(0, total, _CHUNK):
        digits = np.unravel_index(np.arange(lo, min(lo + _CHUNK, total)), (g,) * 8)
        angles = axes[np.stack(digits, axis=-1)]
        vals = _objective(kernel_payoff(su3_from_angles_batch(angles), kernel), spec.free_player)
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val = float(vals[k])
            best_angles = angles[k]
    return best_angles, best_val


def _refine(
    spec: ScanSpec, kernel: np.ndarray, angles: np.ndarray, value: float
) -> tuple[np.ndarray, float]:
    """Coordinate descent around the best cell; never loses ground.

    Each round shrinks the probe window by half, and a zero offset leads every
    candidate list, so ties keep the current point and the objective is
    monotone over rounds.
    """
    g = spec.grid_points_per_angle
    angles = angles.copy()
    for round_index in range(1, spec.refine_iterations + 1):
        width = (2 * np.pi / g) / 2**round_index
        offsets = np.concatenate(([0.0], np.linspace(-width, width, g)))
        for axis in range(8):
            candidates = np.tile(angles, (offsets.size, 1))
            candidates[:, axis] += offsets
            vals = _objective(
                kernel_payoff(su3_from_angles_batch(candidates), kernel), spec.free_player
            )
            k = int(np.argmax(vals))
            if vals[k] > value:
                value = float(vals[k])
                angles = candidates[k]
    return angles, value


def _config_for(spec: ScanSpec, free_matrix: np.ndarray) -> GameConfig:
    fixed = resolve(spec.fixed_strategy)
    if spec.fixed_player == "bob":
        return GameConfig(spec.channel, spec.p, spec.gamma, alice=free_matrix, bob=fixed)
    return GameConfig(spec.channel, spec.p, spec.gamma, alice=fixed, bob=free_matrix)


def best_response_scan(spec: ScanSpec) -> ScanReport:
    """Coarse grid plus coordinate-descent polish; deterministic per spec.

    The reported payoffs come from :func:`qmonty.engine.play` at the winning
    angles, so report numbers are exactly what the single-game path produces.
    """
    kernel = payoff_kernel(spec)
    coarse_angles, coarse_value = _best_coarse_cell(spec, kernel)
    best_angles, refined_value = _refine(spec, kernel, coarse_angles, coarse_value)
    best_matrix = su3_from_angles(best_angles)
    best_result = play(_config_for(spec, best_matrix))
    best_value = best_result.bob_total if spec.free_player == "bob" else best_result.alice
    named = {tag: play(_config_for(spec, resolve(tag))) for tag in NAMED_TAGS}
    return ScanReport(
        spec=spec,
        best_angles=tuple(float(a) for a in best_angles),
        best_strategy=best_matrix,
        best_payoff=best_result,
        best_value=float(best_value),
        coarse_value=float(coarse_value),
        refined_value=float(refined_value),
        named_payoffs=named,
    )


def format_report(report: ScanReport) -> str:
    """Plain-text rendering of a scan report (one value per line)."""
    spec = report.spec
    lines = [
        f"channel={spec.channel.value} p={spec.p:.15g} gamma={spec.gamma:.15g}",
        f"fixed player: {spec.fixed_player}; scanned player: {spec.free_player}",
        f"grid: {spec.grid_points_per_angle} points/angle, {spec.refine_iterations} refinement rounds",
        f"coarse best ({spec.free_player}): {report.coarse_value:.15g}",
        f"refined best ({spec.free_player}): {report.refined_value:.15g}",
        "best angles: " + ", ".join(f"{a:.15g}" for a in report.best_angles),
        "best strategy matrix:",
    ]
    for row in report.best_strategy:
        lines.append("  " + "  ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row))
    r = report.best_payoff
    lines.append(
        f"payoffs at best: bob_not_switch={r.bob_not_switch:.15g} "
        f"bob_switch={r.bob_switch:.15g} bob={r.bob_total:.15g} alice={r.alice:.15g}"
    )
    for tag in NAMED_TAGS:
        n = report.named_payoffs[tag]
        lines.append(f"named {tag:>2} in {spec.free_player} seat: bob={n.bob_total:.15g} alice={n.alice:.15g}")
    return "\n".join(lines)
