"""End-to-end acceptance checks.

Each test prints a single PASS/FAIL line naming the criterion; tolerances
are pinned in the assertions.
"""

import json
import math

import numpy as np
import pytest

from spin1ladder.cli import main as cli_main
from spin1ladder.ladder import (
    LadderSpec,
    exclusion_rhs,
    ladder_table,
    max_p4,
    phi_window,
    solve_exclusion,
    stepladder_table,
    verify_ladder,
)
from spin1ladder.lhv import (
    InferenceGraph,
    enumerate_assignments,
    forward_chain,
    graph_from_table,
    replay,
)
from spin1ladder.qubit import evaluate, ladder_settings, optimize
from spin1ladder.spin import SPIN1, Direction3, spin_component, squared_projectors, triad_complete
from spin1ladder.states import (
    ObservableEvent,
    conditional_probability,
    joint_probability,
    maximally_entangled_spin1,
    partner_direction,
    schmidt,
    singlet_spin1,
)
from spin1ladder.triads import build_triads, coverage, pattern_sec3, pattern_sec4


def report(name, ok):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}")
    assert ok, name


def random_direction(rng):
    return Direction3(*rng.normal(size=3))


def test_criterion_1_start_probability():
    """Joint zero-zero probability equals cos^2(phi)/3 and peaks at 1/27."""
    psi = singlet_spin1()
    rng = np.random.default_rng(101)
    ok = True
    for _ in range(200):
        phi = float(rng.uniform(1.0, 179.0))
        if abs(phi - 90.0) < 0.5:
            continue
        theta = 30.0
        table = stepladder_table(phi, theta)
        p = joint_probability(
            psi,
            ObservableEvent(1, table.event(1, 4).direction, 0),
            ObservableEvent(2, table.event(2, 4).direction, 0),
        )
        expected = math.cos(math.radians(phi)) ** 2 / 3.0
        ok &= abs(p - expected) < 1e-10
    value, _ = max_p4()
    ok &= abs(value - 1.0 / 27.0) < 1e-9
    report("criterion 1: start probability law and 1/27 maximum", ok)


def test_criterion_2_stepladder_chain():
    """All eight stepladder conditionals are 1 and exclusion vanishes exactly
    when the constraint holds."""
    psi = singlet_spin1()
    rng = np.random.default_rng(202)
    ok = True
    checked = 0
    while checked < 25:
        phi = float(rng.uniform(71.0, 89.0))
        thetas = solve_exclusion(1, phi)
        if thetas is None:
            continue
        checked += 1
        rep = verify_ladder(psi, stepladder_table(phi, thetas[0]))
        ok &= all(abs(c.conditional - 1.0) < 1e-10 for c in rep.edge_checks)
        ok &= len(rep.edge_checks) == 8
        ok &= rep.exclusion_probability < 1e-10
        # constraint residual and exclusion vanish together
        lhs = 1.0 / math.tan(math.radians(phi)) ** 2
        ok &= abs(lhs - exclusion_rhs(thetas)) < 1e-10
        # a deliberately wrong theta breaks the exclusion
        bad = verify_ladder(psi, stepladder_table(phi, thetas[0] / 2.0))
        ok &= bad.exclusion_probability > 1e-10
    report("criterion 2: stepladder conditionals and exclusion", ok)


def test_criterion_3_phi_windows():
    """Window endpoints, maxima, nesting, and containment in (45, 135)."""
    ok = True
    windows = {k: phi_window(k) for k in range(1, 12)}
    ok &= abs(windows[1].phi_min_deg - 70.5) < 0.1
    ok &= abs(windows[1].phi_max_deg - 109.5) < 0.1
    ok &= abs(windows[2].phi_min_deg - 59.5) < 0.1
    ok &= abs(windows[2].phi_max_deg - 120.5) < 0.1
    ok &= abs(windows[3].phi_min_deg - 55.2) < 0.1
    ok &= abs(windows[3].phi_max_deg - 124.8) < 0.1
    ok &= abs(windows[11].phi_min_deg - 48.08) < 0.05
    ok &= abs(windows[11].phi_max_deg - 131.92) < 0.05
    for k, w in windows.items():
        analytic = math.cos(math.pi / (2 * k + 1)) ** (2 * k + 1)
        ok &= abs(w.maximum - analytic) < 1e-6
        ok &= 45.0 < w.phi_min_deg < w.phi_max_deg < 135.0
        if k > 1:
            prev = windows[k - 1]
            ok &= w.phi_min_deg < prev.phi_min_deg and w.phi_max_deg > prev.phi_max_deg
    report("criterion 3: phi windows and maxima for K = 1..11", ok)


def test_criterion_4_triad_coverage():
    """Coverage fractions for the two named patterns."""
    psi = singlet_spin1()
    ok = True
    rep3 = coverage(psi, build_triads(pattern_sec3()), phi_window(1))
    ok &= abs(rep3.uncovered_probability - 0.829) < 1e-3
    ok &= abs(rep3.covered_probability - 0.171) < 1e-3
    rep4 = coverage(psi, build_triads(pattern_sec4()), phi_window(11))
    ok &= rep4.covered_probability == 1.0
    ok &= all(c.covered for c in rep4.cells)
    for rep in (rep3, rep4):
        ok &= abs(sum(c.probability for c in rep.cells) - 1.0) < 1e-10
    report("criterion 4: triad coverage for the named angle patterns", ok)


def test_criterion_5_qubit_ladder():
    """Qubit-ladder maxima and the maximal-entanglement collapse."""
    ok = True
    values = [optimize(k, seed=0).p_k for k in range(1, 11)]
    ok &= abs(values[0] - 0.090) < 0.002
    ok &= abs(values[1] - 0.175) < 0.003
    for lo, hi in zip(values, values[1:]):
        ok &= hi >= lo - 1e-9
    ok &= values[-1] < 0.5
    for k in range(1, 6):
        result = evaluate(ladder_settings(k, 45.0, 20.0 + 3.0 * k))
        ok &= result.feasible and result.p_k < 1e-6
    report("criterion 5: qubit ladder maxima and alpha = 45 deg collapse", ok)


def test_criterion_6_lhv_contradiction():
    """Both engines find the contradiction; mutated graphs become consistent."""
    ok = True
    cases = [(1, 75.0), (2, 65.0), (3, 60.0), (11, 60.0)]
    for k, phi in cases:
        thetas = solve_exclusion(k, phi)
        graph = graph_from_table(ladder_table(LadderSpec(k, phi, tuple(thetas))))
        premises = [(f"A{4 * k}", 0), (f"B{4 * k}", 0)]
        cert = forward_chain(graph, premises)
        count, _ = enumerate_assignments(graph, premises, max_observables=100)
        ok &= cert.contradiction and replay(graph, cert) and count == 0
    # removing any one implication restores consistency (24 mutations at K=3)
    thetas = solve_exclusion(3, 60.0)
    graph = graph_from_table(ladder_table(LadderSpec(3, 60.0, tuple(thetas))))
    premises = [("A12", 0), ("B12", 0)]
    mutated_ok = 0
    for drop in range(len(graph.implications)):
        kept = tuple(r for i, r in enumerate(graph.implications) if i != drop)
        mutated = InferenceGraph(graph.observables, kept, graph.exclusions, graph.triads)
        cert = forward_chain(mutated, premises)
        count, witness = enumerate_assignments(mutated, premises, limit=1)
        if not cert.contradiction and count >= 1 and witness is not None:
            mutated_ok += 1
    ok &= mutated_ok == len(graph.implications) >= 20
    report("criterion 6: LHV engines agree on contradiction and mutations", ok)


def test_criterion_7_operator_identities():
    """Triad resolution, projector algebra, and singlet annihilation."""
    rng = np.random.default_rng(707)
    ok = True
    for _ in range(1000):
        u = random_direction(rng)
        w = rng.normal(size=3)
        w -= (w @ u.as_array()) * u.as_array()
        v = Direction3(*w)
        t = triad_complete(u, v)
        total = sum(squared_projectors(d).p_one for d in (u, v, t))
        ok &= np.max(np.abs(total - 2.0 * np.eye(3))) < 1e-12
    for _ in range(100):
        n = random_direction(rng)
        pair = squared_projectors(n)
        ok &= np.max(np.abs(pair.p_zero @ pair.p_zero - pair.p_zero)) < 1e-12
        ok &= np.max(np.abs(pair.p_one @ pair.p_one - pair.p_one)) < 1e-12
        ok &= np.max(np.abs(pair.p_zero + pair.p_one - np.eye(3))) < 1e-12
        psi = singlet_spin1().amplitudes
        sn = spin_component(SPIN1, n)
        ok &= np.max(np.abs(sn @ psi + psi @ sn.T)) < 1e-12
    report("criterion 7: operator identities on random directions", ok)


def test_criterion_8_partner_directions():
    """Partner directions reproduce perfect correlations on random maximally
    entangled states."""
    from scipy.linalg import expm

    rng = np.random.default_rng(808)
    ok = True
    attempts = 0
    successes = 0
    for trial in range(100):
        if trial % 2 == 0:
            params = rng.normal(size=9)
        else:
            # one-sided spin rotation of the singlet: partners always exist
            axis = random_direction(rng)
            params = expm(-1j * rng.uniform(0, np.pi) * spin_component(SPIN1, axis))
        psi = maximally_entangled_spin1(params)
        data = schmidt(psi)
        ok &= np.max(np.abs(data.coefficients - 1.0 / math.sqrt(3.0))) < 1e-12
        for _ in range(20):
            n = random_direction(rng)
            attempts += 1
            m = partner_direction(psi, n)
            if m is None:
                continue
            successes += 1
            for a in (0, 1):
                p = conditional_probability(
                    psi, ObservableEvent(2, m, a), [ObservableEvent(1, n, a)]
                )
                ok &= abs(p - 1.0) < 1e-9
    rate = successes / attempts
    print(f"    partner-direction success rate: {rate:.3f} ({successes}/{attempts})")
    ok &= successes >= 500  # every rotated-singlet query must succeed
    report("criterion 8: partner directions on maximally entangled states", ok)


def test_criterion_9_cli_determinism(tmp_path):
    """Each CLI command is byte-identical across reruns with the same seed."""
    commands = [
        ["verify-stepladder", "--phi", "75"],
        ["phi-window", "--K", "4", "--seed", "3"],
        ["coverage", "--pattern", "sec4", "--K", "2", "--seed", "3"],
        ["optimize-qubit", "--K", "2", "--seed", "3"],
        ["lhv", "--K", "2", "--phi", "65"],
    ]
    ok = True
    for i, argv in enumerate(commands):
        p1 = tmp_path / f"run{i}_a.out"
        p2 = tmp_path / f"run{i}_b.out"
        code1 = cli_main([*argv, "--out", str(p1)])
        code2 = cli_main([*argv, "--out", str(p2)])
        ok &= code1 == 0 and code2 == 0
        ok &= p1.read_bytes() == p2.read_bytes()
    report("criterion 9: deterministic CLI outputs", ok)
