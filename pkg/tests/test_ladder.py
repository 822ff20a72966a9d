import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spin1ladder.errors import DegenerateAngle, OutOfRangeTheta
from spin1ladder.ladder import (
    LadderSpec,
    coefficients,
    exclusion_rhs,
    ladder_table,
    max_p4,
    optimal_theta_profile,
    phi_window,
    solve_exclusion,
    stepladder_table,
    verify_ladder,
)
from spin1ladder.states import singlet_spin1

theta_lists = st.lists(st.floats(1.0, 89.0, allow_nan=False), min_size=1, max_size=8)


@given(theta_lists)
def test_coefficients_match_explicit_product(thetas):
    c = coefficients(thetas)
    assert len(c) == len(thetas)
    for j in range(len(thetas)):
        explicit = math.sin(math.radians(thetas[0]))
        for k in range(j):
            explicit *= math.cos(math.radians(thetas[k + 1] - thetas[k]))
        assert c[j] == pytest.approx(explicit, abs=1e-12)


def test_table_shape():
    for k in (1, 2, 3):
        thetas = solve_exclusion(k, 75.0 if k == 1 else 65.0)
        table = ladder_table(LadderSpec(k, 75.0 if k == 1 else 65.0, tuple(thetas)))
        assert len(table.a_events) == 4 * k + 1
        assert len(table.b_events) == 4 * k + 1
        assert len(table.edges) == 8 * k


def test_table_outcome_pattern():
    thetas = solve_exclusion(2, 65.0)
    table = ladder_table(LadderSpec(2, 65.0, tuple(thetas)))
    assert table.event(1, 8).outcome == 0
    assert table.event(2, 8).outcome == 0
    assert table.event(1, 0).outcome == 0
    assert table.event(2, 0).outcome == 0


def test_degenerate_phi_rejected():
    for phi in (0.0, 90.0, 180.0, -5.0):
        with pytest.raises(DegenerateAngle):
            stepladder_table(phi, 30.0)


def test_out_of_range_theta_rejected():
    with pytest.raises(OutOfRangeTheta):
        stepladder_table(75.0, 95.0)


def test_stepladder_verifies():
    report = verify_ladder(singlet_spin1(), stepladder_table(75.0, *solve_exclusion(1, 75.0)))
    assert report.passed
    assert report.exclusion_probability < 1e-12
    assert report.start_probability > 0.0


def test_ladder_verifies_k2_k3():
    for k, phi in ((2, 65.0), (3, 60.0)):
        thetas = solve_exclusion(k, phi)
        report = verify_ladder(singlet_spin1(), ladder_table(LadderSpec(k, phi, tuple(thetas))))
        assert report.passed


def test_broken_exclusion_fails_verification():
    # thetas not solving the exclusion constraint leave a nonzero joint term
    table = stepladder_table(75.0, 25.0)
    report = verify_ladder(singlet_spin1(), table)
    assert not report.passed
    assert report.exclusion_probability > 1e-6


def test_exclusion_rhs_monotone_pieces():
    assert exclusion_rhs([30.0]) == pytest.approx(0.125, abs=1e-12)
    assert exclusion_rhs([54.0, 18.0]) == pytest.approx(math.cos(math.radians(36.0)) ** 5, abs=1e-12)


def test_optimal_profile_attains_analytic_maximum():
    for k in range(1, 12):
        thetas = optimal_theta_profile(k)
        analytic = math.cos(math.pi / (2 * k + 1)) ** (2 * k + 1)
        assert exclusion_rhs(thetas) == pytest.approx(analytic, abs=1e-12)


def test_phi_window_k1():
    w = phi_window(1)
    assert w.phi_min_deg == pytest.approx(math.degrees(math.atan(math.sqrt(8.0))), abs=1e-9)
    assert w.phi_min_deg + w.phi_max_deg == pytest.approx(180.0, abs=1e-9)
    assert w.maximum == pytest.approx(0.125, abs=1e-12)


def test_phi_window_contains_solved_phi():
    w = phi_window(2)
    assert w.contains(65.0)
    assert not w.contains(50.0)
    assert not w.contains(130.5)


def test_solve_exclusion_consistency():
    for k, phi in ((1, 80.0), (2, 70.0), (4, 60.0)):
        thetas = solve_exclusion(k, phi)
        assert thetas is not None
        target = 1.0 / math.tan(math.radians(phi)) ** 2
        assert exclusion_rhs(thetas) == pytest.approx(target, abs=1e-9)


def test_solve_exclusion_infeasible_returns_none():
    assert solve_exclusion(1, 50.0) is None
    assert solve_exclusion(2, 55.0) is None


@given(st.integers(1, 8), st.floats(0.01, 0.99))
@settings(max_examples=20, deadline=None)
def test_solve_exclusion_inside_window(k, frac):
    w = phi_window(k)
    phi = w.phi_min_deg + frac * (90.0 - w.phi_min_deg)
    if abs(phi - 90.0) < 1e-6:
        return
    thetas = solve_exclusion(k, phi, window=w)
    assert thetas is not None
    target = 1.0 / math.tan(math.radians(phi)) ** 2
    assert exclusion_rhs(thetas) == pytest.approx(target, abs=1e-8)


def test_max_p4():
    value, phi = max_p4()
    assert value == pytest.approx(1.0 / 27.0, abs=1e-12)
    assert phi == pytest.approx(math.degrees(math.atan(math.sqrt(8.0))), abs=1e-6)


def test_table_json_deterministic():
    thetas = solve_exclusion(1, 75.0)
    t1 = stepladder_table(75.0, thetas[0]).to_json()
    t2 = stepladder_table(75.0, thetas[0]).to_json()
    assert t1 == t2


def test_edge_geometry():
    # perpendicular edges join orthogonal directions, same-direction edges
    # join parallel ones
    thetas = solve_exclusion(2, 65.0)
    table = ladder_table(LadderSpec(2, 65.0, tuple(thetas)))
    for edge in table.edges:
        tgt = table.event(edge.target_particle, edge.target_index).direction
        if edge.kind == "same-direction":
            (src_idx,) = edge.source_indices
            src = table.event(edge.source_particle, src_idx).direction
            assert abs(abs(src.dot(tgt)) - 1.0) < 1e-12
        elif edge.kind == "perpendicular":
            for src_idx in edge.source_indices:
                src = table.event(edge.source_particle, src_idx).direction
                assert abs(src.dot(tgt)) < 1e-12


def test_pair_edges_span_orthogonal_triple():
    # the two sources of a pair edge are orthogonal to each other and the
    # target completes the reasoning via the triad sum rule
    thetas = solve_exclusion(3, 60.0)
    table = ladder_table(LadderSpec(3, 60.0, tuple(thetas)))
    for edge in table.edges:
        if edge.kind != "pair":
            continue
        d1 = table.event(edge.source_particle, edge.source_indices[0]).direction
        d2 = table.event(edge.source_particle, edge.source_indices[1]).direction
        assert abs(d1.dot(d2)) < 1e-12
