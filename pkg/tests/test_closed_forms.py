import numpy as np
import pytest

from qmonty.channels import ChannelKind
from qmonty.closed_forms import (
    amp_damp_classical_bob,
    amp_damp_fair,
    depol_classical_bob,
    depol_fair,
)
from qmonty.engine import GameConfig, play
from qmonty.strategies import fair_strategy, haar_random_unitary

P_GRID = [i / 20.0 for i in range(21)]
GAMMAS = list(np.linspace(0.0, np.pi / 2, 3))


@pytest.mark.parametrize("fn", [amp_damp_fair, depol_fair])
def test_fair_forms_reject_bad_p(fn):
    with pytest.raises(ValueError, match="p must be in"):
        fn(-0.01, 0.0)
    with pytest.raises(ValueError, match="p must be in"):
        fn(1.01, 0.0)


@pytest.mark.parametrize("fn", [amp_damp_classical_bob, depol_classical_bob])
def test_classical_forms_reject_bad_p(fn):
    with pytest.raises(ValueError, match="p must be in"):
        fn("H", 1.5, 0.0)


def test_amp_damp_fair_pinned_values():
    assert amp_damp_fair(0.0, 0.0) == pytest.approx(0.5, abs=1e-15)
    assert amp_damp_fair(0.0, 1.234) == pytest.approx(0.5, abs=1e-15)
    assert amp_damp_fair(0.5, 0.0) == pytest.approx(7 / 12, abs=1e-15)
    assert amp_damp_fair(0.5, np.pi / 2) == pytest.approx(5 / 12, abs=1e-15)
    assert amp_damp_fair(1.0, 0.0) == pytest.approx(0.5, abs=1e-15)


def test_depol_fair_pinned_values():
    assert depol_fair(0.0, 0.7) == pytest.approx(0.5, abs=1e-15)
    assert depol_fair(0.5, 0.0) == pytest.approx(81.25 / 128, abs=1e-15)
    assert depol_fair(0.9, 0.0) == pytest.approx(85.33 / 128, abs=1e-12)
    assert abs(depol_fair(0.9, 0.0) - 2 / 3) < 5e-4


@pytest.mark.parametrize("fn", [amp_damp_fair, depol_fair])
def test_balanced_angle_freezes_fair_forms(fn):
    for p in P_GRID:
        assert fn(p, np.pi / 4) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("fn", [amp_damp_fair, depol_fair])
def test_branch_payoffs_sum_to_one(fn):
    for p in P_GRID:
        assert fn(p, 0.0) + fn(p, np.pi / 2) == pytest.approx(1.0, abs=1e-12)


def test_amp_damp_fair_reflection_symmetry_peak_at_half():
    values = [amp_damp_fair(p, 0.0) for p in P_GRID]
    for p, v in zip(P_GRID, values):
        assert v == pytest.approx(amp_damp_fair(1.0 - p, 0.0), abs=1e-15)
    assert max(values) == pytest.approx(amp_damp_fair(0.5, 0.0), abs=1e-15)
    assert P_GRID[int(np.argmax(values))] == 0.5


def test_classical_forms_collapse_to_fair_at_h():
    for p in P_GRID:
        for gamma in GAMMAS:
            assert amp_damp_classical_bob("H", p, gamma) == pytest.approx(
                amp_damp_fair(p, gamma), abs=1e-12
            )
            assert depol_classical_bob("H", p, gamma) == pytest.approx(
                depol_fair(p, gamma), abs=1e-12
            )


def test_classical_form_identity_alice_pinned_values():
    assert amp_damp_classical_bob("I", 0.0, np.pi / 2) == pytest.approx(1.0, abs=1e-15)
    assert amp_damp_classical_bob("I", 0.5, np.pi / 2) == pytest.approx(2 / 3, abs=1e-15)
    assert depol_classical_bob("I", 0.0, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert depol_classical_bob("I", 0.9, 0.0) == pytest.approx(2 / 3, abs=5e-3)


@pytest.mark.parametrize(
    "fn,channel",
    [
        (amp_damp_classical_bob, ChannelKind.AMPLITUDE_DAMPING),
        (depol_classical_bob, ChannelKind.DEPOLARIZING),
    ],
)
def test_classical_forms_match_engine_for_arbitrary_alice(fn, channel):
    rng = np.random.default_rng(2024)
    eye = np.eye(3, dtype=complex)
    for alice in (fair_strategy(), haar_random_unitary(rng), haar_random_unitary(rng)):
        for p in P_GRID[::4]:
            for gamma in GAMMAS:
                engine = play(GameConfig(channel, p, gamma, alice=alice, bob=eye)).bob_total
                assert fn(alice, p, gamma) == pytest.approx(engine, abs=1e-12)
