"""Exact payoff simulation for a three-qutrit quantum Monty Hall game.

Three noise channels (amplitude damping, dephasing, depolarizing) act on the
players' entangled registers before arbitrary local unitary strategies, a
box-opening permutation, and a weighted switch/stick branch pair. Everything
is dense 27-dimensional density-matrix arithmetic: payoffs are exact
expectations, not sampled estimates.

Typical use::

    from qmonty import ChannelKind, GameConfig, play, resolve

    cfg = GameConfig(ChannelKind.AMPLITUDE_DAMPING, p=0.5, gamma=0.0,
                     alice=resolve("H"), bob=resolve("I"))
    play(cfg).bob_total   # 7/12
"""

from .channels import (
    ChannelKind,
    KrausSet,
    apply_channel,
    completeness_residual,
    kraus_amplitude_damping,
    kraus_dephasing,
    kraus_depolarizing,
    kraus_for,
    kraus_noiseless,
    lift_to_game_space,
)
from .closed_forms import (
    amp_damp_classical_bob,
    amp_damp_fair,
    depol_classical_bob,
    depol_fair,
)
from .engine import (
    GameConfig,
    PayoffResult,
    WIN_INDICES,
    bob_payoff,
    build_open_operator,
    build_switch_operator,
    evolve,
    initial_state,
    noisy_initial_state,
    play,
    strategy_operator,
)
from .linalg import check_unitary, min_eigenvalue_hermitian, require_unitary, unitarity_residual
from .scan import ScanReport, ScanSpec, best_response_scan, format_report, kernel_payoff, payoff_kernel
from .strategies import (
    NAMED_TAGS,
    StrategySpec,
    cycle_down,
    cycle_up,
    fair_strategy,
    gell_mann_generators,
    haar_random_unitary,
    identity_strategy,
    resolve,
    strategy_label,
    su3_from_angles,
    su3_from_angles_batch,
)
from .sweep import (
    FIGURE_P_GRID,
    FIGURE_PRESETS,
    SweepSpec,
    reproduce_figure,
    run_sweep,
    sweep_rows,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelKind",
    "KrausSet",
    "apply_channel",
    "completeness_residual",
    "kraus_amplitude_damping",
    "kraus_dephasing",
    "kraus_depolarizing",
    "kraus_for",
    "kraus_noiseless",
    "lift_to_game_space",
    "amp_damp_classical_bob",
    "amp_damp_fair",
    "depol_classical_bob",
    "depol_fair",
    "GameConfig",
    "PayoffResult",
    "WIN_INDICES",
    "bob_payoff",
    "build_open_operator",
    "build_switch_operator",
    "evolve",
    "initial_state",
    "noisy_initial_state",
    "play",
    "strategy_operator",
    "check_unitary",
    "min_eigenvalue_hermitian",
    "require_unitary",
    "unitarity_residual",
    "ScanReport",
    "ScanSpec",
    "best_response_scan",
    "format_report",
    "kernel_payoff",
    "payoff_kernel",
    "NAMED_TAGS",
    "StrategySpec",
    "cycle_down",
    "cycle_up",
    "fair_strategy",
    "gell_mann_generators",
    "haar_random_unitary",
    "identity_strategy",
    "resolve",
    "strategy_label",
    "su3_from_angles",
    "su3_from_angles_batch",
    "FIGURE_P_GRID",
    "FIGURE_PRESETS",
    "SweepSpec",
    "reproduce_figure",
    "run_sweep",
    "sweep_rows",
    "__version__",
]
