"""Reference implementations used only by the tests.

Each one takes the slow, obvious route (nested loops, full enumeration, raw
counts) and shares no code with the package beyond plain data.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter


def dense_lexrank(w, d=0.85, iters=2000):
    """p <- d/N + (1-d) M p with M[u][v] = w[u][v] / sum_z w[z][v] (uniform if the column is empty)."""
    n = len(w)
    m = [[0.0] * n for _ in range(n)]
    for v in range(n):
        col = sum(w[z][v] for z in range(n) if z != v)
        for u in range(n):
            if col == 0:
                m[u][v] = 1.0 / n
            elif u != v:
                m[u][v] = w[u][v] / col
    p = [1.0 / n] * n
    for _ in range(iters):
        p = [d / n + (1 - d) * sum(m[u][v] * p[v] for v in range(n)) for u in range(n)]
    return p


def dense_textrank(w, d=0.85, iters=2000):
    """S_i <- (1-d) + d sum_j w[j][i] / W_j S_j, W_j the total weight on node j."""
    n = len(w)
    out = [sum(row) for row in w]
    s = [1.0] * n
    for _ in range(iters):
        s = [(1 - d) + d * sum(w[j][i] / out[j] * s[j] for j in range(n) if out[j] > 0)
             for i in range(n)]
    return s


def all_simple_paths(adj, source, target):
    """Every loopless source->target path as (cost, nodes), sorted by cost then nodes."""
    found = []

    def walk(path, cost):
        u = path[-1]
        if u == target:
            found.append((cost, tuple(path)))
            return
        for v in sorted(adj.get(u, {})):
            if v not in path:
                path.append(v)
                walk(path, cost + adj[u][v])
                path.pop()

    walk([source], 0.0)
    return sorted(found)


def random_dag_like(rng: random.Random, n_nodes: int, source=0, target=1):
    """Random graph on ``n_nodes`` with mostly forward edges, a few back edges,
    small integer weights (so equal costs are exactly equal)."""
    inner = list(range(2, n_nodes))
    order = [source] + inner + [target]
    adj = {u: {} for u in order}
    for a, u in enumerate(order[:-1]):
        for v in order[a + 1:]:
            if rng.random() < 0.45:
                adj[u][v] = float(rng.randint(1, 4))
    for a in range(1, len(order) - 1):
        for b in range(1, a):
            if rng.random() < 0.08:
                adj[order[a]][order[b]] = float(rng.randint(1, 4))
    if not adj[source]:
        adj[source][order[1]] = 1.0
    return adj


def brute_force_select(utilities, conflicts):
    """Best total utility with at most one pick per group and no conflicting pair."""
    bad = {frozenset(pair) for pair in conflicts}
    best = 0.0
    options = [[None, *range(len(g))] for g in utilities]
    for combo in itertools.product(*options):
        picked = [(j, i) for j, i in enumerate(combo) if i is not None]
        if any(frozenset(pair) in bad for pair in itertools.combinations(picked, 2)):
            continue
        best = max(best, sum(utilities[j][i] for j, i in picked))
    return best


class CountLM:
    """Interpolated add-k trigram probabilities straight from corpus counts."""

    def __init__(self, sentences, k=0.1, unk_threshold=1, unk="<unk>"):
        raw = Counter(w for s in sentences for w in s)
        self.vocab = {w for w, c in raw.items() if c > unk_threshold} | {unk}
        self.unk = unk
        sents = [[self.map(w) for w in s] for s in sentences]
        self.c1 = Counter(w for s in sents for w in s)
        self.c2 = Counter(p for s in sents for p in zip(s, s[1:]))
        self.c3 = Counter(t for s in sents for t in zip(s, s[1:], s[2:]))
        self.n = sum(self.c1.values())
        self.k = k

    def map(self, w):
        return w if w in self.vocab else self.unk

    def p1(self, w):
        return (self.c1[w] + self.k) / (self.n + self.k * len(self.vocab))

    def p2(self, u, w):
        kv = self.k * len(self.vocab)
        hist = sum(c for (a, _), c in self.c2.items() if a == u)
        return (self.c2[(u, w)] + kv * self.p1(w)) / (hist + kv)

    def p3(self, u, v, w):
        u, v, w = self.map(u), self.map(v), self.map(w)
        kv = self.k * len(self.vocab)
        hist = sum(c for (a, b, _), c in self.c3.items() if (a, b) == (u, v))
        return (self.c3[(u, v, w)] + kv * self.p2(v, w)) / (hist + kv)


def hand_lq(words, lm: CountLM):
    """LQ = 1 / (1 - LL), LL the mean log2 trigram probability over positions 3..q."""
    logs = [math.log2(lm.p3(words[t - 2], words[t - 1], words[t])) for t in range(2, len(words))]
    ll = sum(logs) / len(logs)
    return 1.0 / (1.0 - ll)
