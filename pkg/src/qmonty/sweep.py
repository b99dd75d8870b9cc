"""Deterministic CSV emission for payoff sweeps and preset payoff curves.

Two layouts are produced. A sweep is one row per (p, γ) pair in a flat
schema carrying the full payoff breakdown. A figure preset is the standard
payoff-versus-noise picture: p from 0 to 1 in steps of 0.01, with the
switching (γ=0) and sticking (γ=π/2) curves side by side as two columns.

Every number is printed with repr-stable ``%.15g`` formatting, files are
UTF-8 with LF line endings, and nothing time- or locale-dependent is
written, so rerunning the same spec reproduces the same bytes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .channels import ChannelKind
from .engine import GameConfig, play
from .strategies import StrategySpec, resolve, strategy_label

#: Header for the flat sweep layout.
SWEEP_HEADER = "channel,p,gamma,alice,bob,payoff_bob_not_switch,payoff_bob_switch,payoff_bob,payoff_alice"

#: Header for the two-curve figure layout.
FIGURE_HEADER = "p,payoff_bob_gamma0,payoff_bob_gamma_pi_2"

#: Preset id -> (channel, alice tag, bob tag) for the six standard curves.
FIGURE_PRESETS: dict[int, tuple[ChannelKind, str, str]] = {
    1: (ChannelKind.AMPLITUDE_DAMPING, "H", "I"),
    2: (ChannelKind.AMPLITUDE_DAMPING, "I", "I"),
    3: (ChannelKind.AMPLITUDE_DAMPING, "H", "M1"),
    4: (ChannelKind.DEPOLARIZING, "H", "I"),
    5: (ChannelKind.DEPOLARIZING, "I", "I"),
    6: (ChannelKind.DEPOLARIZING, "H", "M1"),
}

#: p grid used by all figure presets: 0, 0.01, ..., 1.
FIGURE_P_GRID = tuple(i / 100.0 for i in range(101))


@dataclass
class SweepSpec:
    """A (p, γ) product grid for one channel and one strategy pair."""

    channel: ChannelKind
    p_grid: Sequence[float]
    gamma_values: Sequence[float]
    alice: StrategySpec
    bob: StrategySpec
    output_path: str | os.PathLike

    def __post_init__(self):
        if not isinstance(self.channel, ChannelKind):
            raise ValueError(f"channel: expected a ChannelKind, got {self.channel!r}")
        self.p_grid = tuple(float(p) for p in self.p_grid)
        if not self.p_grid:
            raise ValueError("p_grid: must be nonempty")
        if any(not 0.0 <= p <= 1.0 for p in self.p_grid):
            raise ValueError(f"p_grid: values must be in [0, 1], got {self.p_grid}")
        if any(b < a for a, b in zip(self.p_grid, self.p_grid[1:])):
            raise ValueError("p_grid: values must be sorted ascending")
        self.gamma_values = tuple(float(g) for g in self.gamma_values)
        if not self.gamma_values:
            raise ValueError("gamma_values: must be nonempty")
        if any(not 0.0 <= g <= np.pi / 2 for g in self.gamma_values):
            raise ValueError(f"gamma_values: values must be in [0, pi/2], got {self.gamma_values}")
        if any(b < a for a, b in zip(self.gamma_values, self.gamma_values[1:])):
            raise ValueError("gamma_values: values must be sorted ascending")


def format_number(x: float) -> str:
    """The one number format used in every CSV cell (15 significant digits)."""
    return f"{float(x):.15g}"


def sweep_rows(spec: SweepSpec) -> list[str]:
    """CSV body lines, p outer ascending, γ inner as listed."""
    alice = resolve(spec.alice)
    bob = resolve(spec.bob)
    alice_label = strategy_label(spec.alice)
    bob_label = strategy_label(spec.bob)
    rows = []
    for p in spec.p_grid:
        for gamma in spec.gamma_values:
            r = play(GameConfig(spec.channel, p, gamma, alice=alice, bob=bob))
            rows.append(
                ",".join(
                    (
                        spec.channel.value,
                        format_number(p),
                        format_number(gamma),
                        alice_label,
                        bob_label,
                        format_number(r.bob_not_switch),
                        format_number(r.bob_switch),
                        format_number(r.bob_total),
                        format_number(r.alice),
                    )
                )
            )
    return rows


def _write_csv(path: str | os.PathLike, header: str, rows: list[str]) -> Path:
    """Write header + rows with LF endings; remove the file on a failed write."""
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(header + "\n")
            for row in rows:
                fh.write(row + "\n")
    except OSError:
        try:
            path.unlink()
        except OSError:
            pass
        raise
    return path


def run_sweep(spec: SweepSpec) -> Path:
    """Evaluate the grid and write the flat sweep CSV; returns the path."""
    return _write_csv(spec.output_path, SWEEP_HEADER, sweep_rows(spec))


def figure_rows(preset: int) -> list[str]:
    """CSV body lines for one preset: p, switching payoff, sticking payoff."""
    if preset not in FIGURE_PRESETS:
        raise ValueError(f"preset: expected an integer in 1..6, got {preset!r}")
    channel, alice_tag, bob_tag = FIGURE_PRESETS[preset]
    alice = resolve(alice_tag)
    bob = resolve(bob_tag)
    rows = []
    for p in FIGURE_P_GRID:
        switching = play(GameConfig(channel, p, 0.0, alice=alice, bob=bob))
        sticking = play(GameConfig(channel, p, np.pi / 2, alice=alice, bob=bob))
        rows.append(
            ",".join(
                (
                    format_number(p),
                    format_number(switching.bob_total),
                    format_number(sticking.bob_total),
                )
            )
        )
    return rows


def reproduce_figure(preset: int, output_path: str | os.PathLike) -> Path:
    """Write the two-curve CSV for one of the six presets; returns the path."""
    return _write_csv(output_path, FIGURE_HEADER, figure_rows(preset))
