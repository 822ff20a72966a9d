"""Quantum-free logical engine for the EPR certainty chains.

Observables take deterministic values 0 or 1 (hbar^2 units). Two
independent engines certify the contradiction: forward chaining over the
implication rules, and exhaustive enumeration of value assignments. They
deliberately share no rule-evaluation code; the enumeration is the trust
anchor for the chaining logic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import TooManyObservables, UnverifiedTable
from .ladder import DirectionTable, verify_ladder
from .states import BipartiteState, singlet_spin1

Fact = tuple[str, int]  # (observable id, value)

ENUMERATION_BOUND = 40


@dataclass(frozen=True)
class Implication:
    antecedents: tuple[Fact, ...]
    consequent: Fact


@dataclass(frozen=True)
class InferenceGraph:
    """Observables plus implication, exclusion, and per-particle triad rules.

    Triad rules name three observables on one particle whose values must
    sum to 2 (exactly one squared spin component of a spin-1 triad is 0).
    """

    observables: tuple[str, ...]
    implications: tuple[Implication, ...]
    exclusions: tuple[tuple[Fact, ...], ...]
    triads: tuple[tuple[str, str, str], ...] = ()

    def __post_init__(self):
        declared = set(self.observables)
        for imp in self.implications:
            for obs, _ in (*imp.antecedents, imp.consequent):
                if obs not in declared:
                    raise ValueError(f"rule references undeclared observable {obs}")
        for exc in self.exclusions:
            for obs, _ in exc:
                if obs not in declared:
                    raise ValueError(f"exclusion references undeclared observable {obs}")
        for tri in self.triads:
            for obs in tri:
                if obs not in declared:
                    raise ValueError(f"triad references undeclared observable {obs}")

    def to_json(self) -> str:
        return json.dumps(
            {
                "observables": list(self.observables),
                "implications": [
                    {"antecedents": [list(f) for f in imp.antecedents],
                     "consequent": list(imp.consequent)}
                    for imp in self.implications
                ],
                "exclusions": [[list(f) for f in exc] for exc in self.exclusions],
                "triads": [list(t) for t in self.triads],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "InferenceGraph":
        doc = json.loads(text)
        return cls(
            observables=tuple(doc["observables"]),
            implications=tuple(
                Implication(
                    antecedents=tuple((o, v) for o, v in imp["antecedents"]),
                    consequent=tuple(imp["consequent"]),
                )
                for imp in doc["implications"]
            ),
            exclusions=tuple(
                tuple((o, v) for o, v in exc) for exc in doc["exclusions"]
            ),
            triads=tuple(tuple(t) for t in doc["triads"]),
        )


def _obs_id(particle: int, index: int) -> str:
    return f"{'A' if particle == 1 else 'B'}{index}"


def graph_from_table(
    table: DirectionTable,
    strict: bool = True,
    state: BipartiteState | None = None,
    ortho_tol: float = 1e-9,
) -> InferenceGraph:
    """Inference graph of a ladder table: one implication per certainty
    edge, the terminal exclusion, and triad rules for every mutually
    orthogonal direction triple on one particle.

    In strict mode the table must pass Born-rule verification first
    (default state: the spin-1 singlet); otherwise the edges are taken on
    geometric faith.
    """
    if strict:
        report = verify_ladder(state or singlet_spin1(), table)
        if not report.passed:
            raise UnverifiedTable("table failed Born-rule verification")

    observables = tuple(
        _obs_id(p, i) for p in (1, 2) for i in range(4 * table.k + 1)
    )
    implications = tuple(
        Implication(
            antecedents=tuple(
                (_obs_id(e.source_particle, i),
                 table.event(e.source_particle, i).outcome)
                for i in e.source_indices
            ),
            consequent=(
                _obs_id(e.target_particle, e.target_index),
                table.event(e.target_particle, e.target_index).outcome,
            ),
        )
        for e in table.edges
    )
    exclusions = (((_obs_id(1, 0), 0), (_obs_id(2, 0), 0)),)

    triads = []
    for particle in (1, 2):
        events = table.a_events if particle == 1 else table.b_events
        n = len(events)
        for i in range(n):
            for j in range(i + 1, n):
                if abs(events[i].direction.dot(events[j].direction)) >= ortho_tol:
                    continue
                for l in range(j + 1, n):
                    if (
                        abs(events[i].direction.dot(events[l].direction)) < ortho_tol
                        and abs(events[j].direction.dot(events[l].direction)) < ortho_tol
                    ):
                        triads.append(
                            (_obs_id(particle, i), _obs_id(particle, j), _obs_id(particle, l))
                        )
    return InferenceGraph(
        observables=observables,
        implications=implications,
        exclusions=exclusions,
        triads=tuple(triads),
    )


def qubit_ladder_graph(k: int) -> InferenceGraph:
    """Graph of the spin-1/2 ladder: value 1 means 'the named outcome
    occurred'. 2K implications plus the terminal exclusion."""
    observables = tuple(f"{side}{i}" for side in "AB" for i in range(k + 1))
    implications = []
    for j in range(1, k + 1):
        implications.append(Implication(((f"A{j}", 1),), (f"B{j - 1}", 1)))
        implications.append(Implication(((f"B{j}", 1),), (f"A{j - 1}", 1)))
    return InferenceGraph(
        observables=observables,
        implications=tuple(implications),
        exclusions=((("A0", 1), ("B0", 1)),),
    )


@dataclass(frozen=True)
class ChainStep:
    rule_index: int
    derived: Fact


@dataclass(frozen=True)
class ContradictionCertificate:
    """Replayable forward-chaining outcome.

    Either a violated exclusion (or a conflicting derivation) with the
    derivation chain leading to it, or the consistent closure.
    """

    premises: tuple[Fact, ...]
    chain: tuple[ChainStep, ...]
    contradiction: bool
    violated_exclusion: tuple[Fact, ...] | None = None
    conflict: tuple[Fact, Fact] | None = None
    closure: tuple[Fact, ...] = ()

    def to_json(self) -> str:
        return json.dumps(
            {
                "premises": [list(f) for f in self.premises],
                "chain": [
                    {"rule": s.rule_index, "derived": list(s.derived)} for s in self.chain
                ],
                "contradiction": self.contradiction,
                "violated_exclusion": (
                    [list(f) for f in self.violated_exclusion]
                    if self.violated_exclusion
                    else None
                ),
                "conflict": [list(f) for f in self.conflict] if self.conflict else None,
                "closure": [list(f) for f in self.closure],
            }
        )


def forward_chain(graph: InferenceGraph, premises) -> ContradictionCertificate:
    """Fixed-point closure of the premises under the implication rules.

    Stops at the first violated exclusion (or conflicting value for one
    observable) and reports the derivation chain; otherwise returns the
    closure.
    """
    premises = tuple(premises)
    facts: dict[str, int] = {}
    for obs, val in premises:
        facts[obs] = val
    chain: list[ChainStep] = []

    def violated_exclusion():
        for exc in graph.exclusions:
            if all(facts.get(o) == v for o, v in exc):
                return exc
        return None

    exc = violated_exclusion()
    while exc is None:
        progressed = False
        for idx, imp in enumerate(graph.implications):
            if not all(facts.get(o) == v for o, v in imp.antecedents):
                continue
            obs, val = imp.consequent
            if obs in facts:
                if facts[obs] != val:
                    chain.append(ChainStep(idx, imp.consequent))
                    return ContradictionCertificate(
                        premises=premises,
                        chain=tuple(chain),
                        contradiction=True,
                        conflict=((obs, facts[obs]), (obs, val)),
                    )
                continue
            facts[obs] = val
            chain.append(ChainStep(idx, imp.consequent))
            progressed = True
        if not progressed:
            break
        exc = violated_exclusion()
    if exc is not None:
        return ContradictionCertificate(
            premises=premises,
            chain=tuple(chain),
            contradiction=True,
            violated_exclusion=exc,
        )
    return ContradictionCertificate(
        premises=premises,
        chain=tuple(chain),
        contradiction=False,
        closure=tuple(sorted(facts.items())),
    )


def replay(graph: InferenceGraph, certificate: ContradictionCertificate) -> bool:
    """Re-run a certificate step by step and confirm it reproduces the
    claimed violation (or closure)."""
    facts = dict(certificate.premises)
    for step in certificate.chain:
        imp = graph.implications[step.rule_index]
        if not all(facts.get(o) == v for o, v in imp.antecedents):
            return False
        if imp.consequent != step.derived:
            return False
        obs, val = step.derived
        if obs in facts and facts[obs] != val:
            # legal only as the final, conflicting step
            return (
                step is certificate.chain[-1]
                and certificate.contradiction
                and certificate.conflict is not None
            )
        facts[obs] = val
    if certificate.contradiction:
        if certificate.violated_exclusion is not None:
            return all(facts.get(o) == v for o, v in certificate.violated_exclusion)
        return certificate.conflict is not None
    return dict(certificate.closure) == facts


def _propagation_order(graph: InferenceGraph, premises) -> list[str]:
    """Assignment order that lets rules fire as early as possible:
    premises first, then greedily the observable completing the most rules."""
    rule_scopes = [
        {o for o, _ in (*imp.antecedents, imp.consequent)} for imp in graph.implications
    ]
    rule_scopes += [{o for o, _ in exc} for exc in graph.exclusions]
    rule_scopes += [set(tri) for tri in graph.triads]
    ordered = [o for o, _ in premises]
    placed = set(ordered)
    remaining = [o for o in graph.observables if o not in placed]
    while remaining:
        best, best_score = None, -1
        for o in remaining:
            score = sum(1 for sc in rule_scopes if o in sc and sc <= placed | {o})
            if score > best_score:
                best, best_score = o, score
        ordered.append(best)
        placed.add(best)
        remaining.remove(best)
    return ordered


def enumerate_assignments(
    graph: InferenceGraph,
    premises,
    limit: int | None = None,
    max_observables: int = ENUMERATION_BOUND,
):
    """Count deterministic assignments satisfying every rule, restricted to
    the premises. Independent of forward_chain by construction.

    Backtracking with early rule checks; set limit to stop once that many
    satisfying assignments are found (limit=1 gives a pure consistency
    check). Returns (count, witness-or-None).
    """
    if len(graph.observables) > max_observables:
        raise TooManyObservables(
            f"{len(graph.observables)} observables exceeds the bound {max_observables}"
        )
    obs_list = _propagation_order(graph, premises)
    index = {o: i for i, o in enumerate(obs_list)}
    fixed = {}
    for obs, val in premises:
        fixed[index[obs]] = val

    # rule -> observable indices, for firing checks as soon as all are set
    imp_rules = [
        ([(index[o], v) for o, v in imp.antecedents],
         (index[imp.consequent[0]], imp.consequent[1]))
        for imp in graph.implications
    ]
    exc_rules = [[(index[o], v) for o, v in exc] for exc in graph.exclusions]
    tri_rules = [tuple(index[o] for o in tri) for tri in graph.triads]

    by_last: dict[int, list] = {i: [] for i in range(len(obs_list))}
    for ants, (ci, cv) in imp_rules:
        involved = [i for i, _ in ants] + [ci]
        by_last[max(involved)].append(("imp", ants, (ci, cv)))
    for exc in exc_rules:
        by_last[max(i for i, _ in exc)].append(("exc", exc, None))
    for tri in tri_rules:
        by_last[max(tri)].append(("tri", tri, None))

    values = np.full(len(obs_list), -1, dtype=int)
    count = 0
    witness = None

    def ok_at(pos: int) -> bool:
        for kind, data, extra in by_last[pos]:
            if kind == "imp":
                if all(values[i] == v for i, v in data):
                    ci, cv = extra
                    if values[ci] != cv:
                        return False
            elif kind == "exc":
                if all(values[i] == v for i, v in data):
                    return False
            else:
                if values[data[0]] + values[data[1]] + values[data[2]] != 2:
                    return False
        return True

    def recurse(pos: int):
        nonlocal count, witness
        if limit is not None and count >= limit:
            return
        if pos == len(obs_list):
            count += 1
            if witness is None:
                witness = {obs_list[i]: int(values[i]) for i in range(len(obs_list))}
            return
        choices = (fixed[pos],) if pos in fixed else (0, 1)
        for v in choices:
            values[pos] = v
            if ok_at(pos):
                recurse(pos + 1)
            values[pos] = -1

    recurse(0)
    return count, witness
