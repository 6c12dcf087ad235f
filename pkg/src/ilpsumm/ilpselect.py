"""Pick at most one fused sentence per cluster with an exact 0/1 program.

Maximize the sum of selected utilities subject to:

* at most one candidate per group (cluster);
* no two selected candidates from different groups that conflict
  (cosine similarity at or above the redundancy threshold).

Solved exactly by best-first branch and bound over the groups.
"""

from __future__ import annotations

import heapq
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .clustering import ClusterSet
from .errors import EmptySummaryError
from .scoring import ScoredPath
from .textcore import cosine, vectorize

Var = tuple[int, int]


@dataclass(frozen=True)
class SelectionProblem:
    utilities: tuple[tuple[float, ...], ...]
    conflicts: frozenset[tuple[Var, Var]] = frozenset()
    groups: tuple[tuple[ScoredPath, ...], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        utils = tuple(tuple(float(u) for u in g) for g in self.utilities)
        for g in utils:
            for u in g:
                if not math.isfinite(u) or u < 0:
                    raise ValueError(f"utilities must be finite and non-negative, got {u}")
        norm = set()
        for a, b in self.conflicts:
            a, b = tuple(a), tuple(b)
            if a[0] == b[0]:
                raise ValueError(f"conflict {a}-{b} lies within one group")
            for j, i in (a, b):
                if not (0 <= j < len(utils) and 0 <= i < len(utils[j])):
                    raise ValueError(f"conflict refers to unknown variable {(j, i)}")
            norm.add((a, b) if a < b else (b, a))
        object.__setattr__(self, "utilities", utils)
        object.__setattr__(self, "conflicts", frozenset(norm))

    @property
    def n_groups(self) -> int:
        return len(self.utilities)

    def conflict_map(self) -> dict[Var, set[Var]]:
        out: dict[Var, set[Var]] = {}
        for a, b in self.conflicts:
            out.setdefault(a, set()).add(b)
            out.setdefault(b, set()).add(a)
        return out

    def to_json(self) -> dict:
        return {
            "utilities": [list(g) for g in self.utilities],
            "conflicts": sorted([list(a), list(b)] for a, b in self.conflicts),
        }


@dataclass(frozen=True)
class SelectionSolution:
    chosen: Mapping[int, int | None]
    objective: float
    optimal: bool
    nodes_explored: int

    def selected(self) -> list[Var]:
        return [(j, i) for j, i in sorted(self.chosen.items()) if i is not None]

    def to_json(self) -> dict:
        return {
            "chosen": {str(j): i for j, i in sorted(self.chosen.items())},
            "objective": self.objective,
            "optimal": self.optimal,
            "nodes_explored": self.nodes_explored,
        }


def build_problem(scored: Sequence[Sequence[ScoredPath]], redundancy_threshold: float = 0.5,
                  idf: Mapping[str, float] | None = None) -> SelectionProblem:
    """Utilities ``I * LQ / T`` per candidate and cross-cluster conflict pairs."""
    groups = tuple(tuple(g) for g in scored)
    utilities = tuple(tuple(sp.utility for sp in g) for g in groups)
    vecs = [[vectorize(sp.path.tokens, idf) for sp in g] for g in groups]
    conflicts = set()
    for j, k in itertools.combinations(range(len(groups)), 2):
        for i, vi in enumerate(vecs[j]):
            for i2, vk in enumerate(vecs[k]):
                if cosine(vi, vk) >= redundancy_threshold:
                    conflicts.add(((j, i), (k, i2)))
    return SelectionProblem(utilities, frozenset(conflicts), groups)


def is_feasible(problem: SelectionProblem, chosen: Mapping[int, int | None]) -> bool:
    picked = [(j, i) for j, i in chosen.items() if i is not None]
    if len({j for j, _ in picked}) != len(picked):
        return False
    for a, b in itertools.combinations(sorted(picked), 2):
        if (a, b) in problem.conflicts:
            return False
    return True


def objective_of(problem: SelectionProblem, chosen: Mapping[int, int | None]) -> float:
    total = 0.0
    for j in range(problem.n_groups):
        i = chosen.get(j)
        if i is not None:
            total += problem.utilities[j][i]
    return total


def solve_exact(problem: SelectionProblem, node_budget: int = 10_000_000) -> SelectionSolution:
    """Best-first branch and bound.

    A node fixes the choice (a candidate or nothing) for groups ``0..depth-1``.
    Its bound adds, for each remaining group, the best utility still compatible
    with the choices made so far.  Nodes are expanded in order of decreasing
    bound; among equal bounds, the choice vector that prefers higher utility
    (then lower index) in earlier groups goes first.  Complete assignments sit
    in the same queue keyed by their exact value, so the first one popped is
    optimal.  Children whose bound falls below the best complete assignment
    found so far are never queued.

    If ``node_budget`` expansions are used up, the best complete assignment
    seen so far is returned with ``optimal=False``.
    """
    m = problem.n_groups
    if m == 0:
        return SelectionSolution({}, 0.0, True, 0)
    utils = problem.utilities
    conflicts = problem.conflict_map()
    # candidate indices per group, best first
    order = [sorted(range(len(g)), key=lambda i, g=g: (-g[i], i)) for g in utils]

    def compatible(var: Var, chosen: tuple[Var, ...]) -> bool:
        bad = conflicts.get(var)
        return not bad or not any(c in bad for c in chosen)

    def bound(value: float, depth: int, chosen: tuple[Var, ...]) -> float:
        if depth == m:
            return value
        rest = 0.0
        for j in range(depth, m):
            for i in order[j]:
                if compatible((j, i), chosen):
                    rest += utils[j][i]
                    break
        # relative slack keeps the bound admissible under rounding
        return (value + rest) * (1.0 + _BOUND_SLACK)

    # entries: (-bound, rank vector, value, chosen vars)
    heap = [(-bound(0.0, 0, ()), (), 0.0, ())]
    best_val = -1.0
    best: tuple[Var, ...] | None = None
    explored = 0
    while heap:
        _, ranks, value, chosen = heapq.heappop(heap)
        depth = len(ranks)
        if depth == m:
            return SelectionSolution(_as_map(m, chosen), value, True, explored)
        if explored >= node_budget:
            break
        explored += 1
        children = [(r, (depth, i)) for r, i in enumerate(order[depth])]
        children.append((len(order[depth]), None))
        for rank, var in children:
            if var is None:
                child, v = chosen, value
            elif compatible(var, chosen):
                child, v = chosen + (var,), value + utils[depth][var[1]]
            else:
                continue
            b = bound(v, depth + 1, child)
            if b < best_val:
                continue
            heapq.heappush(heap, (-b, ranks + (rank,), v, child))
            if depth + 1 == m and v > best_val:
                best_val, best = v, child

    if best is None:
        # budget ran out before any complete assignment: greedy completion
        best = ()
        for j in range(m):
            for i in order[j]:
                if compatible((j, i), best):
                    best += ((j, i),)
                    break
        best_val = objective_of(problem, _as_map(m, best))
    return SelectionSolution(_as_map(m, best), best_val, False, explored)


_BOUND_SLACK = 1e-12


def _as_map(m: int, chosen: Sequence[Var]) -> dict[int, int | None]:
    out: dict[int, int | None] = {j: None for j in range(m)}
    for j, i in chosen:
        out[j] = i
    return out


def brute_force(problem: SelectionProblem) -> tuple[float, dict[int, int | None]]:
    """Enumerate every assignment; for tests and tiny instances only."""
    m = problem.n_groups
    best_val, best = -1.0, {}
    options = [[None, *range(len(g))] for g in problem.utilities]
    for combo in itertools.product(*options):
        chosen = dict(enumerate(combo))
        if not is_feasible(problem, chosen):
            continue
        val = objective_of(problem, chosen)
        if val > best_val:
            best_val, best = val, chosen
    return max(best_val, 0.0), best if m else {}


@dataclass(frozen=True)
class Summary:
    sentences: tuple[str, ...]
    # (cluster_id, candidate index) behind each sentence
    trace: tuple[tuple[int, int], ...]

    @property
    def text(self) -> str:
        return "\n".join(self.sentences) + "\n"


def assemble_summary(sol: SelectionSolution, clusters: ClusterSet,
                     problem: SelectionProblem) -> Summary:
    """Chosen paths in cluster order; group j of the problem is cluster j of the set."""
    if problem.groups is None:
        raise ValueError("problem carries no candidate paths to assemble")
    if len(clusters) != problem.n_groups:
        raise ValueError(f"{len(clusters)} clusters but {problem.n_groups} groups")
    sentences, trace = [], []
    for j, cluster in enumerate(clusters):
        i = sol.chosen.get(j)
        if i is None:
            continue
        sentences.append(problem.groups[j][i].path.text)
        trace.append((cluster.cluster_id, i))
    if not sentences:
        raise EmptySummaryError("empty summary: the selection chose no path")
    return Summary(tuple(sentences), tuple(trace))


def dump_json(problem: SelectionProblem, sol: SelectionSolution) -> str:
    return json.dumps({"problem": problem.to_json(), "solution": sol.to_json()}, indent=2)
