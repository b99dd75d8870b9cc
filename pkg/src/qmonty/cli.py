"""Command-line front end: single games, sweeps, figure presets, scans.

Subcommands: ``play`` (one game, payoffs to stdout), ``sweep`` (CSV over a
(p, γ) grid), ``figure`` (one of six preset payoff-vs-noise CSVs), ``scan``
(best-response search over one player's strategy space), and ``selftest``
(engine-versus-closed-form residuals and other cross-checks, printed, never
asserted).

Exit codes: 0 on success, 1 for validation problems (bad flags, bad values,
malformed inputs), 2 for I/O failures. Diagnostics go to stderr; data goes to
the requested file or stdout.

A ``--config`` file of ``key=value`` lines (keys matching the long flag
names, ``-`` and ``_`` interchangeable) supplies defaults; explicit flags win.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .channels import ChannelKind
from .closed_forms import (
    amp_damp_classical_bob,
    amp_damp_fair,
    depol_classical_bob,
    depol_fair,
)
from .engine import GameConfig, PayoffResult, play
from .scan import ScanSpec, best_response_scan, format_report
from .strategies import (
    NAMED_TAGS,
    StrategySpec,
    fair_strategy,
    haar_random_unitary,
    resolve,
)
from .sweep import FIGURE_PRESETS, SweepSpec, format_number, reproduce_figure, run_sweep

_CHANNEL_CHOICES = tuple(kind.value for kind in ChannelKind)


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; the contract here is 1."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_channel(text: str) -> ChannelKind:
    try:
        return ChannelKind(text)
    except ValueError:
        raise ValueError(
            f"channel: expected one of {', '.join(_CHANNEL_CHOICES)}, got {text!r}"
        ) from None


def _parse_float(text: str, name: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"{name}: expected a number, got {text!r}") from None


def _parse_gamma(text: str) -> float:
    """Accept 0, pi, pi/2, pi/4 (any pi/<denominator>), or plain radians."""
    token = text.strip().lower()
    if token == "pi":
        return math.pi
    if token.startswith("pi/"):
        return math.pi / _parse_float(token[3:], "gamma denominator")
    return _parse_float(token, "gamma")


def _parse_gamma_list(text: str) -> list[float]:
    return [_parse_gamma(tok) for tok in text.split(",")]


def _parse_p_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"p-grid: expected start:stop:step, got {text!r}")
    start = _parse_float(parts[0], "p-grid start")
    stop = _parse_float(parts[1], "p-grid stop")
    step = _parse_float(parts[2], "p-grid step")
    if step <= 0:
        raise ValueError(f"p-grid: step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"p-grid: stop {stop} is below start {start}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


def _load_matrix_file(path: str) -> np.ndarray:
    """Nine 're,im' lines, row-major; blank lines and # comments ignored."""
    text = Path(path).read_text(encoding="utf-8")
    entries = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"{path}: expected 're,im' per line, got {raw!r}")
        entries.append(complex(_parse_float(parts[0], "matrix entry"), _parse_float(parts[1], "matrix entry")))
    if len(entries) != 9:
        raise ValueError(f"{path}: expected 9 matrix entries, found {len(entries)}")
    return np.array(entries, dtype=complex).reshape(3, 3)


def _parse_strategy(text: str) -> StrategySpec:
    """Tag, @file (9 're,im' lines), or angles:v1,...,v8."""
    if text.startswith("@"):
        return _load_matrix_file(text[1:])
    if text.startswith("angles:"):
        values = [_parse_float(tok, "angle") for tok in text[len("angles:"):].split(",")]
        if len(values) != 8:
            raise ValueError(f"angles: expected 8 comma-separated values, got {len(values)}")
        return np.array(values, dtype=float)
    return text


def _load_config(path: str) -> dict[str, str]:
    text = Path(path).read_text(encoding="utf-8")
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _require(value, flag: str):
    if value is None:
        raise ValueError(f"{flag} is required (flag or config file)")
    return value


def _print_payoffs(result: PayoffResult) -> None:
    print(f"payoff_bob_not_switch {format_number(result.bob_not_switch)}")
    print(f"payoff_bob_switch {format_number(result.bob_switch)}")
    print(f"payoff_bob {format_number(result.bob_total)}")
    print(f"payoff_alice {format_number(result.alice)}")


def _cmd_play(args) -> int:
    tol = _parse_float(args.tol, "tol")
    cfg = GameConfig(
        channel=_parse_channel(args.channel),
        p=_parse_float(args.p, "p"),
        gamma=_parse_gamma(args.gamma),
        alice=resolve(_parse_strategy(args.alice), tol=tol),
        bob=resolve(_parse_strategy(args.bob), tol=tol),
        tol=tol,
    )
    _print_payoffs(play(cfg))
    return 0


def _cmd_sweep(args) -> int:
    tol = _parse_float(args.tol, "tol")
    alice = _parse_strategy(args.alice)
    bob = _parse_strategy(args.bob)
    resolve(alice, tol=tol)
    resolve(bob, tol=tol)
    spec = SweepSpec(
        channel=_parse_channel(args.channel),
        p_grid=_parse_p_grid(_require(args.p_grid, "--p-grid")),
        gamma_values=_parse_gamma_list(args.gamma),
        alice=alice,
        bob=bob,
        output_path=_require(args.out, "--out"),
    )
    path = run_sweep(spec)
    print(f"wrote {len(spec.p_grid) * len(spec.gamma_values)} rows to {path}", file=sys.stderr)
    return 0


def _cmd_figure(args) -> int:
    preset_text = _require(args.preset, "preset")
    try:
        preset = int(preset_text)
    except ValueError:
        raise ValueError(f"preset: expected an integer in 1..6, got {preset_text!r}") from None
    path = reproduce_figure(preset, _require(args.out, "--out"))
    channel, alice_tag, bob_tag = FIGURE_PRESETS[preset]
    print(
        f"wrote preset {preset} ({channel.value}, alice={alice_tag}, bob={bob_tag}) to {path}",
        file=sys.stderr,
    )
    return 0


def _cmd_scan(args) -> int:
    tol = _parse_float(args.tol, "tol")
    fixed_flag = args.alice if args.fixed_player == "alice" else args.bob
    fixed = _parse_strategy(fixed_flag)
    resolve(fixed, tol=tol)
    spec = ScanSpec(
        channel=_parse_channel(args.channel),
        p=_parse_float(args.p, "p"),
        gamma=_parse_gamma(args.gamma),
        fixed_player=args.fixed_player,
        fixed_strategy=fixed,
        grid_points_per_angle=int(_parse_float(args.grid_points, "grid-points")),
        refine_iterations=int(_parse_float(args.refine_iterations, "refine-iterations")),
    )
    text = format_report(best_response_scan(spec))
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        print(f"wrote scan report to {args.out}", file=sys.stderr)
    else:
        print(text)
    return 0


def _dephasing_variation(alice, bob, p_values) -> float:
    worst = 0.0
    for gamma in (0.0, math.pi / 2):
        base = play(GameConfig(ChannelKind.DEPHASING, 0.0, gamma, alice=alice, bob=bob)).bob_total
        for p in p_values:
            value = play(GameConfig(ChannelKind.DEPHASING, p, gamma, alice=alice, bob=bob)).bob_total
            worst = max(worst, abs(value - base))
    return worst


def _cmd_selftest(args) -> int:
    p_grid = [i / 100.0 for i in range(101)]
    gammas = np.linspace(0.0, math.pi / 2, 5)
    h = fair_strategy()
    eye = resolve("I")
    rng = np.random.default_rng(20240817)
    random_alice = haar_random_unitary(rng)

    print("engine vs closed forms, max |difference| over a 101x5 (p, gamma) grid:")
    checks = [
        ("amp_damp_fair (alice=H, bob=I)", ChannelKind.AMPLITUDE_DAMPING, h, lambda p, g: amp_damp_fair(p, g)),
        ("depol_fair (alice=H, bob=I)", ChannelKind.DEPOLARIZING, h, lambda p, g: depol_fair(p, g)),
        (
            "amp_damp_classical_bob (random alice, bob=I)",
            ChannelKind.AMPLITUDE_DAMPING,
            random_alice,
            lambda p, g: amp_damp_classical_bob(random_alice, p, g),
        ),
        (
            "depol_classical_bob (random alice, bob=I)",
            ChannelKind.DEPOLARIZING,
            random_alice,
            lambda p, g: depol_classical_bob(random_alice, p, g),
        ),
    ]
    for label, channel, alice, formula in checks:
        worst = max(
            abs(play(GameConfig(channel, p, g, alice=alice, bob=eye)).bob_total - formula(p, g))
            for p in p_grid
            for g in gammas
        )
        print(f"  {label}: {worst:.3e}")

    det_h = np.linalg.det(h)
    print(f"det(H) = {det_h.real:.15g}{det_h.imag:+.15g}j (special unitary wants 1)")

    caption = play(GameConfig(ChannelKind.AMPLITUDE_DAMPING, 0.5, 0.0, alice=h, bob=resolve("M1")))
    prose = play(GameConfig(ChannelKind.AMPLITUDE_DAMPING, 0.5, 0.0, alice=eye, bob=resolve("M1")))
    print("shifted-Bob configurations at amp-damp p=0.5, gamma=0 (both reported;")
    print("the preset table uses alice=H, the 5/6 benchmark holds for alice=I):")
    print(f"  alice=H, bob=M1: payoff_bob {format_number(caption.bob_total)}")
    print(f"  alice=I, bob=M1: payoff_bob {format_number(prose.bob_total)}")

    print("dephasing: max |payoff(p) - payoff(0)| per named strategy pair")
    print("(reported, not asserted; gamma in {0, pi/2}, 11-point p grid):")
    p_eleven = [i / 10.0 for i in range(11)]
    for alice_tag in NAMED_TAGS:
        for bob_tag in NAMED_TAGS:
            worst = _dephasing_variation(resolve(alice_tag), resolve(bob_tag), p_eleven)
            marker = "  <-- varies with p" if worst > 1e-10 else ""
            print(f"  alice={alice_tag:<2} bob={bob_tag:<2}: {worst:.6e}{marker}")
    worst_random = max(
        _dephasing_variation(haar_random_unitary(rng), haar_random_unitary(rng), p_eleven)
        for _ in range(5)
    )
    print(f"  5 seeded random pairs: {worst_random:.6e}")
    return 0


def build_parser() -> tuple[_Parser, dict[str, _Parser]]:
    parser = _Parser(prog="qmonty", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value defaults file; explicit flags override")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subs: dict[str, _Parser] = {}

    def add(name: str, handler, help_text: str) -> _Parser:
        sp = subparsers.add_parser(name, help=help_text)
        sp.add_argument("--config", help=argparse.SUPPRESS)
        sp.set_defaults(func=handler)
        subs[name] = sp
        return sp

    common_game = dict(
        channel=("--channel", "none", f"noise channel: {', '.join(_CHANNEL_CHOICES)}"),
        p=("--p", "0", "decoherence strength in [0, 1]"),
        gamma=("--gamma", "0", "mixing angle: 0 is pure switch, pi/2 is pure stick"),
        alice=("--alice", "I", "Alice's unitary: tag (I,H,M1,M2), @file, or angles:v1,...,v8"),
        bob=("--bob", "I", "Bob's unitary: same forms as --alice"),
        tol=("--tol", "1e-10", "unitarity tolerance for strategy validation"),
    )

    sp = add("play", _cmd_play, "evaluate one game and print the payoffs")
    for flag, default, help_text in common_game.values():
        sp.add_argument(flag, default=default, help=help_text)

    sp = add("sweep", _cmd_sweep, "write a CSV over a (p, gamma) grid")
    for key, (flag, default, help_text) in common_game.items():
        if key == "p":
            continue
        if key == "gamma":
            sp.add_argument(flag, default="0,pi/2", help="comma-separated mixing angles")
        else:
            sp.add_argument(flag, default=default, help=help_text)
    sp.add_argument("--p-grid", dest="p_grid", help="decoherence grid as start:stop:step")
    sp.add_argument("--out", help="output CSV path")

    sp = add("figure", _cmd_figure, "write one of the six preset payoff-curve CSVs")
    sp.add_argument("preset", nargs="?", help="preset number 1..6")
    sp.add_argument("--out", help="output CSV path")

    sp = add("scan", _cmd_scan, "search one player's strategy space for a best response")
    for key, (flag, default, help_text) in common_game.items():
        sp.add_argument(flag, default=default, help=help_text)
    sp.add_argument(
        "--fixed-player",
        dest="fixed_player",
        choices=("alice", "bob"),
        default="bob",
        help="which player keeps the strategy given by --alice/--bob; the other is scanned",
    )
    sp.add_argument("--grid-points", dest="grid_points", default="5", help="coarse grid points per angle (>= 2)")
    sp.add_argument(
        "--refine-iterations", dest="refine_iterations", default="3", help="coordinate-descent rounds after the coarse pass"
    )
    sp.add_argument("--out", help="write the report here instead of stdout")

    add("selftest", _cmd_selftest, "print engine-vs-closed-form residuals and cross-checks")

    return parser, subs


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()

    preliminary = _Parser(add_help=False)
    preliminary.add_argument("--config")
    known, _ = preliminary.parse_known_args(argv)
    if known.config:
        try:
            config = _load_config(known.config)
        except ValueError as exc:
            print(f"qmonty: error: {exc}", file=sys.stderr)
            return 1
        except OSError as exc:
            print(f"qmonty: error: {exc}", file=sys.stderr)
            return 2
        internal = {"func", "help", "config", "command"}
        all_dests = {action.dest for sp in subs.values() for action in sp._actions} - internal
        unknown = sorted(set(config) - all_dests)
        if unknown:
            print(f"qmonty: error: config: unknown keys: {', '.join(unknown)}", file=sys.stderr)
            return 1
        for sp in subs.values():
            dests = {action.dest for action in sp._actions} - internal
            applicable = {k: v for k, v in config.items() if k in dests}
            if applicable:
                sp.set_defaults(**applicable)

    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help(sys.stderr)
        return 1
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"qmonty: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"qmonty: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
