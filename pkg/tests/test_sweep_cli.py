import numpy as np
import pytest

from qmonty.channels import ChannelKind
from qmonty.cli import main
from qmonty.engine import GameConfig, play
from qmonty.strategies import resolve
from qmonty.sweep import (
    FIGURE_HEADER,
    FIGURE_P_GRID,
    FIGURE_PRESETS,
    SWEEP_HEADER,
    SweepSpec,
    reproduce_figure,
    run_sweep,
)


def _sweep_spec(tmp_path, name="out.csv", **overrides):
    base = dict(
        channel=ChannelKind.AMPLITUDE_DAMPING,
        p_grid=[0.0, 0.5, 1.0],
        gamma_values=[0.0, np.pi / 2],
        alice="H",
        bob="I",
        output_path=tmp_path / name,
    )
    base.update(overrides)
    return SweepSpec(**base)


def test_sweep_schema_and_row_order(tmp_path):
    path = run_sweep(_sweep_spec(tmp_path))
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == SWEEP_HEADER
    assert len(lines) == 1 + 3 * 2
    first = lines[1].split(",")
    assert first[0] == "amp-damp"
    assert first[3] == "H" and first[4] == "I"
    p_column = [row.split(",")[1] for row in lines[1:]]
    assert p_column == ["0", "0", "0.5", "0.5", "1", "1"]


def test_sweep_rows_are_zero_sum_and_bounded(tmp_path):
    path = run_sweep(_sweep_spec(tmp_path, p_grid=[i / 10 for i in range(11)]))
    for row in path.read_text(encoding="utf-8").splitlines()[1:]:
        cells = row.split(",")
        bob = float(cells[7])
        alice = float(cells[8])
        assert 0.0 - 1e-12 <= bob <= 1.0 + 1e-12
        assert alice == pytest.approx(1.0 - bob, abs=1e-12)


def test_sweep_reruns_are_byte_identical(tmp_path):
    a = run_sweep(_sweep_spec(tmp_path, name="a.csv"))
    b = run_sweep(_sweep_spec(tmp_path, name="b.csv"))
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_sweep_spec_validation():
    with pytest.raises(ValueError, match="nonempty"):
        SweepSpec(ChannelKind.NOISELESS, [], [0.0], "I", "I", "x.csv")
    with pytest.raises(ValueError, match="sorted"):
        SweepSpec(ChannelKind.NOISELESS, [0.5, 0.1], [0.0], "I", "I", "x.csv")
    with pytest.raises(ValueError, match="p_grid"):
        SweepSpec(ChannelKind.NOISELESS, [0.0, 1.5], [0.0], "I", "I", "x.csv")
    with pytest.raises(ValueError, match="gamma"):
        SweepSpec(ChannelKind.NOISELESS, [0.0], [3.2], "I", "I", "x.csv")
    with pytest.raises(ValueError, match="channel"):
        SweepSpec("amp-damp", [0.0], [0.0], "I", "I", "x.csv")


def test_figure_presets_table():
    assert set(FIGURE_PRESETS) == {1, 2, 3, 4, 5, 6}
    assert FIGURE_PRESETS[1] == (ChannelKind.AMPLITUDE_DAMPING, "H", "I")
    assert FIGURE_PRESETS[3] == (ChannelKind.AMPLITUDE_DAMPING, "H", "M1")
    assert FIGURE_PRESETS[5] == (ChannelKind.DEPOLARIZING, "I", "I")
    assert len(FIGURE_P_GRID) == 101


def test_figure_layout_and_limits(tmp_path):
    path = reproduce_figure(2, tmp_path / "fig2.csv")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == FIGURE_HEADER
    assert len(lines) == 102
    p0 = lines[1].split(",")
    assert float(p0[0]) == 0.0
    assert float(p0[1]) == pytest.approx(0.0, abs=1e-12)
    assert float(p0[2]) == pytest.approx(1.0, abs=1e-12)


def test_figure_rejects_unknown_preset(tmp_path):
    with pytest.raises(ValueError, match="1..6"):
        reproduce_figure(9, tmp_path / "x.csv")


def test_failed_write_cleans_up(tmp_path):
    missing = tmp_path / "not-there" / "out.csv"
    with pytest.raises(OSError):
        run_sweep(_sweep_spec(tmp_path, output_path=missing))
    assert not missing.exists()


# --- command-line entry point ---


def test_cli_play_prints_four_payoff_lines(capsys):
    rc = main(["play", "--channel", "amp-damp", "--p", "0.5", "--gamma", "0", "--alice", "H"])
    assert rc == 0
    out = capsys.readouterr().out.splitlines()
    assert [line.split()[0] for line in out] == [
        "payoff_bob_not_switch",
        "payoff_bob_switch",
        "payoff_bob",
        "payoff_alice",
    ]
    assert float(out[2].split()[1]) == pytest.approx(7 / 12, abs=1e-10)


def test_cli_gamma_spellings_agree(capsys):
    rc = main(["play", "--gamma", "pi/2", "--channel", "none"])
    assert rc == 0
    first = capsys.readouterr().out
    rc = main(["play", "--gamma", str(np.pi / 2), "--channel", "none"])
    assert rc == 0
    assert capsys.readouterr().out == first


def test_cli_validation_failures_exit_one(capsys):
    assert main(["play", "--p", "1.5"]) == 1
    assert "p: must be in" in capsys.readouterr().err
    assert main(["play", "--channel", "bogus"]) == 1
    assert "channel" in capsys.readouterr().err
    assert main(["play", "--alice", "Q"]) == 1
    assert "unknown strategy tag" in capsys.readouterr().err
    assert main(["scan", "--grid-points", "9"]) == 1
    assert "exceeds the cap" in capsys.readouterr().err


def test_cli_unknown_command_exits_one():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1


def test_cli_io_failures_exit_two(tmp_path, capsys):
    rc = main(
        ["sweep", "--channel", "none", "--p-grid", "0:1:0.5", "--out", str(tmp_path / "no" / "x.csv")]
    )
    assert rc == 2
    assert main(["play", "--alice", "@" + str(tmp_path / "missing.mat")]) == 2


def test_cli_sweep_row_count(tmp_path):
    out = tmp_path / "s.csv"
    rc = main(
        ["sweep", "--channel", "amp-damp", "--p-grid", "0:1:0.1", "--alice", "H", "--out", str(out)]
    )
    assert rc == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 1 + 11 * 2
    half_switch = [r for r in lines[1:] if r.split(",")[1] == "0.5" and r.split(",")[2] == "0"]
    assert len(half_switch) == 1
    assert float(half_switch[0].split(",")[7]) == pytest.approx(7 / 12, abs=1e-10)


def test_cli_matrix_file_matches_tag(tmp_path, capsys):
    mat = tmp_path / "m1.mat"
    mat.write_text(
        "# cyclic shift down\n0,0\n1,0\n0,0\n0,0\n0,0\n1,0\n1,0\n0,0\n0,0\n", encoding="utf-8"
    )
    rc = main(["play", "--channel", "amp-damp", "--p", "0.5", "--bob", "@" + str(mat)])
    assert rc == 0
    from_file = capsys.readouterr().out
    rc = main(["play", "--channel", "amp-damp", "--p", "0.5", "--bob", "M1"])
    assert rc == 0
    assert capsys.readouterr().out == from_file


def test_cli_matrix_file_validation(tmp_path, capsys):
    bad = tmp_path / "bad.mat"
    bad.write_text("1,0\n" * 8, encoding="utf-8")
    assert main(["play", "--alice", "@" + str(bad)]) == 1
    assert "9 matrix entries" in capsys.readouterr().err
    lop = tmp_path / "lop.mat"
    lop.write_text("1,0\n" * 9, encoding="utf-8")
    assert main(["play", "--alice", "@" + str(lop)]) == 1
    assert "not unitary" in capsys.readouterr().err


def test_cli_angles_spec(capsys):
    rc = main(["play", "--channel", "none", "--gamma", "pi/2", "--alice", "angles:0,0,0,0,0,0,0,0"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "payoff_bob 1" in out
    assert main(["play", "--alice", "angles:1,2,3"]) == 1


def test_cli_config_file_defaults_and_overrides(tmp_path, capsys):
    cfg = tmp_path / "game.cfg"
    cfg.write_text(
        "channel=amp-damp\np=0.5\ngamma=0\nalice=H\n# comment line\n", encoding="utf-8"
    )
    rc = main(["play", "--config", str(cfg)])
    assert rc == 0
    assert "payoff_bob 0.583" in capsys.readouterr().out
    rc = main(["play", "--config", str(cfg), "--p", "0"])
    assert rc == 0
    assert "payoff_bob 0.5\n" in capsys.readouterr().out
    cfg_bad = tmp_path / "bad.cfg"
    cfg_bad.write_text("mystery=1\n", encoding="utf-8")
    assert main(["play", "--config", str(cfg_bad)]) == 1
    assert "unknown keys" in capsys.readouterr().err


def test_cli_figure_and_scan_subcommands(tmp_path, capsys):
    fig = tmp_path / "f4.csv"
    assert main(["figure", "4", "--out", str(fig)]) == 0
    assert fig.read_text(encoding="utf-8").splitlines()[0] == FIGURE_HEADER
    assert main(["figure", "--out", str(fig)]) == 1
    assert "preset" in capsys.readouterr().err

    report = tmp_path / "scan.txt"
    rc = main(
        [
            "scan",
            "--channel",
            "none",
            "--fixed-player",
            "alice",
            "--alice",
            "I",
            "--grid-points",
            "2",
            "--refine-iterations",
            "0",
            "--out",
            str(report),
        ]
    )
    assert rc == 0
    assert "refined best" in report.read_text(encoding="utf-8")


def test_cli_selftest_reports_key_sections(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "closed forms" in out
    assert "det(H)" in out
    assert "dephasing" in out
    assert "alice=H  bob=H : 6.2" in out


def test_cli_play_matches_library(capsys):
    rc = main(["play", "--channel", "depolarizing", "--p", "0.9", "--gamma", "0", "--alice", "H"])
    assert rc == 0
    printed = float(capsys.readouterr().out.splitlines()[2].split()[1])
    lib = play(
        GameConfig(ChannelKind.DEPOLARIZING, 0.9, 0.0, alice=resolve("H"), bob=resolve("I"))
    ).bob_total
    assert printed == pytest.approx(lib, abs=1e-15)
