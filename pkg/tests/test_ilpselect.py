import json
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ilpsumm.clustering import Cluster, ClusterSet
from ilpsumm.errors import EmptySummaryError
from ilpsumm.ilpselect import (SelectionProblem, SelectionSolution, assemble_summary, brute_force,
                               build_problem, dump_json, is_feasible, objective_of, solve_exact)
from ilpsumm.scoring import ScoredPath
from ilpsumm.textcore import Sentence, pos_tag, tokenize
from ilpsumm.wordgraph import Path


def scored(text, utility_scale=1.0):
    t = tuple(pos_tag(tokenize(text)))
    return ScoredPath(Path((), t, 0.0), utility_scale, 1.0)


def test_single_group_argmax():
    sol = solve_exact(SelectionProblem([[0.3, 0.9]]))
    assert sol.chosen == {0: 1} and sol.objective == 0.9 and sol.optimal


def test_conflict_forces_second_best():
    p = SelectionProblem([[0.9, 0.5], [0.8]], frozenset({((0, 0), (1, 0))}))
    sol = solve_exact(p)
    assert sol.chosen == {0: 1, 1: 0}
    assert sol.objective == pytest.approx(1.3)
    assert brute_force(p)[0] == pytest.approx(1.3)


def test_empty_problem_and_empty_group():
    assert solve_exact(SelectionProblem([])).chosen == {}
    sol = solve_exact(SelectionProblem([[], [0.4]]))
    assert sol.chosen == {0: None, 1: 0}


def test_problem_validation():
    with pytest.raises(ValueError):
        SelectionProblem([[0.1, 0.2]], frozenset({((0, 0), (0, 1))}))
    with pytest.raises(ValueError):
        SelectionProblem([[0.1], [0.2]], frozenset({((0, 0), (1, 5))}))
    with pytest.raises(ValueError):
        SelectionProblem([[float("nan")]])
    p = SelectionProblem([[0.1], [0.2]], frozenset({((1, 0), (0, 0))}))
    assert p.conflicts == {((0, 0), (1, 0))}


def test_random_four_group_instances():
    rng = random.Random(99)
    for _ in range(200):
        utils = [[rng.random() for _ in range(rng.randint(1, 5))] for _ in range(4)]
        vs = [(j, i) for j, g in enumerate(utils) for i in range(len(g))]
        conflicts = {(a, b) for a in vs for b in vs if a < b and a[0] != b[0] and rng.random() < 0.4}
        sol = solve_exact(SelectionProblem(utils, frozenset(conflicts)))
        assert sol.objective == oracles.brute_force_select(utils, conflicts)


@st.composite
def problems(draw):
    groups = draw(st.integers(0, 5))
    utils = [draw(st.lists(st.floats(0, 10), min_size=0, max_size=4)) for _ in range(groups)]
    vs = [(j, i) for j, g in enumerate(utils) for i in range(len(g))]
    pairs = [(a, b) for a in vs for b in vs if a < b and a[0] != b[0]]
    conflicts = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return SelectionProblem(utils, frozenset(conflicts))


@settings(max_examples=200, deadline=None)
@given(problems())
def test_solution_feasible_and_optimal(p):
    sol = solve_exact(p)
    assert sol.optimal and is_feasible(p, sol.chosen)
    assert sol.objective == pytest.approx(objective_of(p, sol.chosen))
    assert sol.objective == pytest.approx(brute_force(p)[0])


@settings(max_examples=50, deadline=None)
@given(problems())
def test_budget_exhaustion_returns_feasible_incumbent(p):
    sol = solve_exact(p, node_budget=1)
    assert is_feasible(p, sol.chosen)
    if not sol.optimal:
        assert sol.objective <= brute_force(p)[0] + 1e-9


def test_build_problem_conflicts_only_across_groups():
    a = scored("crews evacuated residents from the flooded town")
    b = scored("crews evacuated residents from the flooded town")
    c = scored("the governor sent soldiers to help")
    p = build_problem([[a, b], [a, c]])
    assert ((0, 0), (0, 1)) not in p.conflicts
    assert ((0, 0), (1, 0)) in p.conflicts and ((0, 1), (1, 0)) in p.conflicts
    assert ((0, 0), (1, 1)) not in p.conflicts


def _cluster(cid):
    s = Sentence("d", cid, (), {}, {})
    return Cluster(cid, s, (s,))


def test_assemble_follows_cluster_order():
    groups = [[scored("first text here")], [scored("second text here")], [scored("third text here")]]
    p = build_problem(groups)
    ordered = ClusterSet((_cluster(2), _cluster(0), _cluster(1)), "mo")
    sol = SelectionSolution({0: 0, 1: None, 2: 0}, 2.0, True, 1)
    summary = assemble_summary(sol, ordered, p)
    assert summary.sentences == ("First text here", "Third text here")
    assert summary.trace == ((2, 0), (1, 0))
    assert summary.text == "First text here\nThird text here\n"


def test_assemble_rejects_empty_selection():
    p = build_problem([[scored("only text here")]])
    with pytest.raises(EmptySummaryError):
        assemble_summary(SelectionSolution({0: None}, 0.0, True, 1), ClusterSet((_cluster(0),), "mo"), p)


def test_dump_json():
    p = SelectionProblem([[0.5], [0.25]], frozenset({((0, 0), (1, 0))}))
    data = json.loads(dump_json(p, solve_exact(p)))
    assert data["problem"] == {"utilities": [[0.5], [0.25]], "conflicts": [[[0, 0], [1, 0]]]}
    assert data["solution"]["chosen"] == {"0": 0, "1": None}
    assert data["solution"]["optimal"] is True
