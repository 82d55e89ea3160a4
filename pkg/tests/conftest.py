"""Shared fixtures: the M1 scenario model, seeded random model/formula
generators, and the acceptance summary hook (one PASS/FAIL line per
criterion at the end of the run).
"""

from __future__ import annotations

import itertools
import random
from pathlib import Path

import pytest

from agentmc.logics.ast import (
    And,
    Atom,
    CoalitionMod,
    FalseF,
    Finally,
    Globally,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    Quant,
    TrueF,
    Until,
)
from agentmc.models.structures import (
    ConcurrentGameStructure,
    KripkeStructure,
    kripke_of_cgs,
    validate_cgs,
    validate_kripke,
)
from agentmc.models.textfmt import parse_model_text

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def m1_text() -> str:
    return (FIXTURES / "m1.cgs").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def m1(m1_text):
    return parse_model_text(m1_text).payload


@pytest.fixture(scope="session")
def k1(m1):
    return kripke_of_cgs(m1)


# ---------------------------------------------------------------------------
# random structures

def random_cgs(rng: random.Random, max_states=5, n_agents=2, max_avail=2,
               atoms=("p", "q")) -> ConcurrentGameStructure:
    """A valid CGS: per state, each agent gets 1..max_avail of its declared
    actions and the full joint product is wired to random targets.
    """
    n = rng.randint(1, max_states)
    states = ["S%d" % i for i in range(n)]
    agents = ["A%d" % i for i in range(n_agents)]
    declared = {a: ("a", "b", "c")[: rng.randint(1, 3)] for a in agents}
    transitions = {}
    for s in states:
        avail = []
        for a in agents:
            k = rng.randint(1, min(max_avail, len(declared[a])))
            picked = rng.sample(declared[a], k)
            avail.append(sorted(picked, key=declared[a].index))
        for vec in itertools.product(*avail):
            transitions[(s, vec)] = rng.choice(states)
    label = {s: [at for at in atoms if rng.random() < 0.4] for s in states}
    initial = rng.sample(states, rng.randint(1, n))
    g = ConcurrentGameStructure.build(
        agents=agents,
        states=states,
        initial=initial,
        atoms=atoms,
        label=label,
        actions=declared,
        transitions=transitions,
    )
    assert not validate_cgs(g)
    return g


def random_kripke(rng: random.Random, max_states=6, atoms=("p", "q")) -> KripkeStructure:
    n = rng.randint(1, max_states)
    states = ["S%d" % i for i in range(n)]
    edges = {
        s: sorted(rng.sample(states, rng.randint(1, min(3, n)))) for s in states
    }
    label = {s: [at for at in atoms if rng.random() < 0.4] for s in states}
    initial = rng.sample(states, rng.randint(1, n))
    k = KripkeStructure.build(
        states=states, initial=initial, atoms=atoms, label=label, edges=edges
    )
    assert not validate_kripke(k)
    return k


# ---------------------------------------------------------------------------
# random formulas

def _random_bool(rng, depth, atoms):
    if depth <= 0 or rng.random() < 0.3:
        return rng.choice(
            [TrueF(), FalseF()] + [Atom(a) for a in atoms]
        )
    shape = rng.randrange(5)
    if shape == 0:
        return Not(_random_bool(rng, depth - 1, atoms))
    left = _random_bool(rng, depth - 1, atoms)
    right = _random_bool(rng, depth - 1, atoms)
    return (And, Or, Implies, Iff)[shape - 1](left, right)


def _random_path(rng, phi, psi):
    shape = rng.randrange(4)
    if shape == 0:
        return Next(phi)
    if shape == 1:
        return Finally(phi)
    if shape == 2:
        return Globally(phi)
    return Until(phi, psi)


def random_atl_formula(rng: random.Random, agents, atoms, modal_depth=3):
    """Arbitrary coalition-modality formula of bounded modal nesting."""
    if modal_depth <= 0:
        return _random_bool(rng, 2, atoms)
    roll = rng.random()
    if roll < 0.25:
        return _random_bool(rng, 2, atoms)
    if roll < 0.4:
        left = random_atl_formula(rng, agents, atoms, modal_depth - 1)
        right = random_atl_formula(rng, agents, atoms, modal_depth - 1)
        return rng.choice((And, Or))(left, right)
    if roll < 0.5:
        return Not(random_atl_formula(rng, agents, atoms, modal_depth - 1))
    coalition = tuple(a for a in agents if rng.random() < 0.5)
    kind = rng.choice(("diamond", "box"))
    phi = random_atl_formula(rng, agents, atoms, modal_depth - 1)
    psi = random_atl_formula(rng, agents, atoms, modal_depth - 1)
    return CoalitionMod(kind, coalition, _random_path(rng, phi, psi))


def random_ctl_formula(rng: random.Random, atoms, modal_depth=3):
    if modal_depth <= 0:
        return _random_bool(rng, 2, atoms)
    roll = rng.random()
    if roll < 0.25:
        return _random_bool(rng, 2, atoms)
    if roll < 0.4:
        left = random_ctl_formula(rng, atoms, modal_depth - 1)
        right = random_ctl_formula(rng, atoms, modal_depth - 1)
        return rng.choice((And, Or))(left, right)
    if roll < 0.5:
        return Not(random_ctl_formula(rng, atoms, modal_depth - 1))
    phi = random_ctl_formula(rng, atoms, modal_depth - 1)
    psi = random_ctl_formula(rng, atoms, modal_depth - 1)
    return Quant(rng.choice(("E", "A")), _random_path(rng, phi, psi))


def random_any_formula(rng: random.Random, agents, atoms, modal_depth=3):
    """Mix of quantifiers, coalition modalities and booleans, for the
    parser/printer round-trip corpus.
    """
    if modal_depth <= 0:
        return _random_bool(rng, 2, atoms)
    roll = rng.random()
    if roll < 0.3:
        return _random_bool(rng, 3, atoms)
    if roll < 0.5:
        left = random_any_formula(rng, agents, atoms, modal_depth - 1)
        right = random_any_formula(rng, agents, atoms, modal_depth - 1)
        return rng.choice((And, Or, Implies, Iff))(left, right)
    if roll < 0.6:
        return Not(random_any_formula(rng, agents, atoms, modal_depth - 1))
    phi = random_any_formula(rng, agents, atoms, modal_depth - 1)
    psi = random_any_formula(rng, agents, atoms, modal_depth - 1)
    path = _random_path(rng, phi, psi)
    if rng.random() < 0.5:
        return Quant(rng.choice(("E", "A")), path)
    coalition = tuple(a for a in agents if rng.random() < 0.5)
    return CoalitionMod(rng.choice(("diamond", "box")), coalition, path)


# ---------------------------------------------------------------------------
# exhaustive strategy playout, used by witness soundness tests

def strategy_members(g, strategy) -> tuple:
    """Coalition members in agent declaration order."""
    return tuple(a for a in g.agents if a in strategy.coalition.members)


def strategy_successors(g, strategy, state) -> list:
    """All one-step targets consistent with the strategy's choice at state."""
    members = strategy_members(g, strategy)
    prefix = strategy.sub_vector(state, members)
    positions = [g.agents.index(a) for a in members]
    return [
        target
        for vec, target in g.rows_by_state[state]
        if tuple(vec[p] for p in positions) == prefix
    ]


def play_until(g, strategy, start, zone, goal, max_steps) -> bool:
    """True iff every adversary play under ``strategy`` from ``start`` hits a
    goal state within max_steps while staying inside zone until then.
    """
    frontier = {start}
    for _ in range(max_steps + 1):
        next_frontier = set()
        for s in frontier:
            if s in goal:
                continue
            if s not in zone:
                return False
            succs = strategy_successors(g, strategy, s)
            if not succs:
                return False
            next_frontier.update(succs)
        if not next_frontier:
            return True
        frontier = next_frontier
    return False


# ---------------------------------------------------------------------------
# acceptance reporting

def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = {}
    order = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, ()):
            for key, value in getattr(report, "user_properties", ()):
                if key != "criterion":
                    continue
                if value not in lines:
                    order.append(value)
                    lines[value] = True
                if outcome != "passed":
                    lines[value] = False
    if not order:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for value in order:
        verdict = "PASS" if lines[value] else "FAIL"
        terminalreporter.write_line("%s  %s" % (verdict, value))
