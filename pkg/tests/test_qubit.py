import math

import numpy as np
import pytest

from spin1ladder.qubit import (
    QubitLadderConfig,
    evaluate,
    ladder_settings,
    optimize,
    results_csv,
)


def test_ladder_settings_feasible():
    for k in (1, 2, 3):
        config = ladder_settings(k, 30.0, 20.0)
        result = evaluate(config)
        assert result.constraint_residual < 1e-10
        assert result.feasible


def test_optimize_k1_known_value():
    # the K=1 maximum is (5 sqrt 5 - 11) / 2
    result = optimize(1, seed=0)
    assert result.p_k == pytest.approx((5.0 * math.sqrt(5.0) - 11.0) / 2.0, abs=1e-9)
    assert result.constraint_residual < 1e-10


def test_optimize_k2():
    result = optimize(2, seed=0)
    assert result.p_k == pytest.approx(0.1745, abs=5e-4)


def test_optimize_monotone():
    values = [optimize(k, seed=0).p_k for k in range(1, 6)]
    for lo, hi in zip(values, values[1:]):
        assert hi >= lo - 1e-9
    assert values[-1] < 0.5


def test_maximal_entanglement_kills_ladder():
    # at alpha = 45 deg the end-of-chain probability collapses to zero
    for k in (1, 2, 3):
        config = ladder_settings(k, 45.0, 25.0)
        result = evaluate(config)
        assert result.feasible
        assert result.p_k < 1e-12


def test_evaluate_rejects_bad_lengths():
    with pytest.raises(ValueError):
        evaluate(QubitLadderConfig(2, 30.0, (10.0,), (20.0, 30.0, 40.0)))


def test_alpha_range_enforced():
    with pytest.raises(ValueError):
        ladder_settings(1, 60.0, 20.0)
    with pytest.raises(ValueError):
        ladder_settings(1, 0.0, 20.0)


def test_results_csv_format():
    result = optimize(1, seed=0)
    text = results_csv([result], restarts=100)
    lines = text.strip().split("\n")
    assert lines[0] == "K,p_k,alpha_deg,residual,restarts"
    assert lines[1].startswith("1,")


def test_optimize_deterministic():
    a = optimize(3, seed=7)
    b = optimize(3, seed=7)
    assert a.p_k == b.p_k
    assert a.config.alpha_deg == b.config.alpha_deg
