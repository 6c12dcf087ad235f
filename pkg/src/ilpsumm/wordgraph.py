"""Word-graph fusion of a sentence cluster.

Sentences are laid onto a directed graph whose nodes are (word, POS) pairs
framed by dummy START/END nodes.  Low-cost START->END paths through the graph
are candidate fused sentences.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .clustering import Cluster
from .textcore import Token, cosine, detokenize, vectorize

START, END = 0, 1
_START_KEY = ("<start>", "START")
_END_KEY = ("<end>", "END")

NodeKey = tuple[str, str]


@dataclass(frozen=True)
class PathGenConfig:
    k_max: int = 200
    min_path_len: int = 8
    dedupe_threshold: float = 0.8
    rng_seed: int = 0
    # raw enumeration cap is raw_factor * k_max
    raw_factor: int = 4

    def __post_init__(self):
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        if self.min_path_len < 1:
            raise ValueError("min_path_len must be >= 1")
        if not 0.0 < self.dedupe_threshold <= 1.0:
            raise ValueError("dedupe_threshold must lie in (0, 1]")
        if self.raw_factor < 1:
            raise ValueError("raw_factor must be >= 1")


@dataclass
class Node:
    id: int
    key: NodeKey
    token: Token | None
    # sentence id -> 1-based token offset (START sits at 0)
    positions: dict[int, int] = field(default_factory=dict)

    @property
    def occurrences(self) -> list[tuple[int, int]]:
        return sorted(self.positions.items())

    @property
    def freq(self) -> int:
        return len(self.positions)

    @property
    def label(self) -> str:
        if self.id == START:
            return "START"
        if self.id == END:
            return "END"
        return f"{self.key[0]}/{self.key[1]}"


@dataclass
class Edge:
    source: int
    target: int
    count: int = 0
    weight: float = 0.0


@dataclass(frozen=True)
class Path:
    nodes: tuple[int, ...]
    tokens: tuple[Token, ...]
    cost: float

    @property
    def token_count(self) -> int:
        """Number of words, punctuation excluded."""
        return sum(1 for t in self.tokens if not t.is_punct)

    @property
    def text(self) -> str:
        return detokenize((t.surface for t in self.tokens), capitalize=True)

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(t.lower for t in self.tokens)


class WordGraph:
    def __init__(self):
        self.nodes: list[Node] = [Node(START, _START_KEY, None), Node(END, _END_KEY, None)]
        self.edges: dict[tuple[int, int], Edge] = {}
        self.succ: dict[int, dict[int, Edge]] = {START: {}, END: {}}
        self.pred: dict[int, dict[int, Edge]] = {START: {}, END: {}}
        self.sentences: list[tuple[Token, ...]] = []
        # per sentence: node ids START, t_0 .. t_{n-1}, END
        self.walks: list[tuple[int, ...]] = []
        self._by_key: dict[NodeKey, list[int]] = {}

    def __len__(self) -> int:
        return len(self.nodes)

    def _new_node(self, tok: Token) -> int:
        nid = len(self.nodes)
        key = node_key(tok)
        self.nodes.append(Node(nid, key, tok))
        self.succ[nid] = {}
        self.pred[nid] = {}
        self._by_key.setdefault(key, []).append(nid)
        return nid

    def candidates(self, tok: Token, sid: int) -> list[int]:
        """Existing nodes with the same (word, POS) that host nothing from sentence ``sid``."""
        return [n for n in self._by_key.get(node_key(tok), ()) if sid not in self.nodes[n].positions]

    def _overlap(self, mapping: list[int | None], j: int, cand: int, window: int) -> int:
        n = len(mapping)
        preds, succs = self.pred[cand], self.succ[cand]
        hits = 0
        for off in range(1, window + 1):
            left = j - off
            m = START if left == -1 else (mapping[left] if left >= 0 else None)
            if m is not None and m in preds:
                hits += 1
            right = j + off
            m = END if right == n else (mapping[right] if right < n else None)
            if m is not None and m in succs:
                hits += 1
        return hits

    def _best(self, mapping, j, cands) -> int:
        return max(cands, key=lambda c: (self._overlap(mapping, j, c, 2), self.nodes[c].freq, -c))

    def _place(self, nid: int, sid: int, j: int, tok: Token) -> None:
        node = self.nodes[nid]
        # a sentence-initial capital is not the word's usual surface
        if j > 0 and node.positions and all(p == 1 for p in node.positions.values()):
            node.token = tok
        node.positions[sid] = j + 1

    def add_sentence(self, tokens: Sequence[Token]) -> None:
        sid = len(self.sentences)
        tokens = tuple(tokens)
        n = len(tokens)
        mapping: list[int | None] = [None] * n
        content = [not t.is_stopword and not t.is_punct for t in tokens]
        keys = [node_key(t) for t in tokens]

        # 1. content words with no candidate, or exactly one and no repeat in the sentence
        for j, tok in enumerate(tokens):
            if not content[j] or keys.count(keys[j]) > 1:
                continue
            cands = self.candidates(tok, sid)
            if not cands:
                mapping[j] = self._new_node(tok)
            elif len(cands) == 1:
                mapping[j] = cands[0]
            else:
                continue
            self._place(mapping[j], sid, j, tok)

        # 2. ambiguous or repeated content words, resolved by directed context
        for j, tok in enumerate(tokens):
            if not content[j] or mapping[j] is not None:
                continue
            cands = self.candidates(tok, sid)
            mapping[j] = self._best(mapping, j, cands) if cands else self._new_node(tok)
            self._place(mapping[j], sid, j, tok)

        # 3. stopwords and punctuation: reuse a node only with an adjacent context match
        for j, tok in enumerate(tokens):
            if content[j]:
                continue
            cands = [c for c in self.candidates(tok, sid) if self._overlap(mapping, j, c, 1) > 0]
            mapping[j] = self._best(mapping, j, cands) if cands else self._new_node(tok)
            self._place(mapping[j], sid, j, tok)

        self.nodes[START].positions[sid] = 0
        self.nodes[END].positions[sid] = n + 1
        walk = (START, *mapping, END)
        for u, v in zip(walk, walk[1:]):
            e = self.edges.get((u, v))
            if e is None:
                e = self.edges[(u, v)] = Edge(u, v)
                self.succ[u][v] = e
                self.pred[v][u] = e
            e.count += 1
        self.sentences.append(tokens)
        self.walks.append(walk)

    def compute_weights(self) -> None:
        for e in self.edges.values():
            e.weight = edge_weight(e, self)

    def adjacency(self) -> dict[int, dict[int, float]]:
        return {u: {v: e.weight for v, e in out.items()} for u, out in self.succ.items()}

    def path(self, nodes: Sequence[int]) -> Path:
        cost = path_cost(self.adjacency(), nodes)
        return Path(tuple(nodes), tuple(self.nodes[n].token for n in nodes[1:-1]), cost)

    def to_dot(self, name: str = "wordgraph") -> str:
        lines = [f"digraph {name} {{"]
        for node in self.nodes:
            label = node.label.replace('"', '\\"')
            lines.append(f'  n{node.id} [label="{label}" freq={node.freq}];')
        for (u, v), e in sorted(self.edges.items()):
            lines.append(f'  n{u} -> n{v} [count={e.count} weight="{e.weight:.6g}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def node_key(tok: Token) -> NodeKey:
    return (tok.lower, tok.pos)


def build_graph(sentences: Cluster | Iterable[Sequence[Token]]) -> WordGraph:
    """Build the word graph of a cluster (seed first) or of plain token lists."""
    if isinstance(sentences, Cluster):
        sentences = [s.tokens for s in sentences.members]
    g = WordGraph()
    for toks in sentences:
        g.add_sentence(toks)
    if not g.sentences:
        raise ValueError("cannot build a word graph from zero sentences")
    g.compute_weights()
    return g


def edge_weight(e: Edge, graph: WordGraph) -> float:
    """Collocation cost of an edge; lower means a stronger association.

    ``(freq(u) + freq(v)) / sum_s 1/diff(s, u, v)`` divided by
    ``freq(u) * freq(v)``, where diff is how far v follows u in sentence s
    (sentences with v not after u contribute nothing).
    """
    u, v = graph.nodes[e.source], graph.nodes[e.target]
    inv = 0.0
    for sid, pu in u.positions.items():
        pv = v.positions.get(sid)
        if pv is not None and pv > pu:
            inv += 1.0 / (pv - pu)
    w = (u.freq + v.freq) / inv
    return w / (u.freq * v.freq)


# ---------------------------------------------------------------------------
# k shortest loopless paths

def path_cost(adj: Mapping[int, Mapping[int, float]], nodes: Sequence[int]) -> float:
    cost = 0.0
    for u, v in zip(nodes, nodes[1:]):
        cost += adj[u][v]
    return cost


def _spur_search(adj, src, dst, banned_nodes, banned_edges):
    """Cheapest src->dst path, ties broken by lexicographic node sequence."""
    best = {src: (0.0, (src,))}
    heap = [(0.0, (src,))]
    done = set()
    while heap:
        cost, path = heapq.heappop(heap)
        u = path[-1]
        if u in done:
            continue
        done.add(u)
        if u == dst:
            return path
        for v, w in adj.get(u, {}).items():
            if v in done or v in banned_nodes or (u, v) in banned_edges:
                continue
            label = (cost + w, path + (v,))
            if v not in best or label < best[v]:
                best[v] = label
                heapq.heappush(heap, label)
    return None


def yen_k_shortest(adj: Mapping[int, Mapping[int, float]], source: int, target: int,
                   k: int) -> list[tuple[float, tuple[int, ...]]]:
    """Yen's algorithm for the k cheapest loopless source->target paths.

    Paths come out ordered by (cost, node sequence).  Costs are summed left to
    right along each path.
    """
    if k < 1:
        return []
    first = _spur_search(adj, source, target, frozenset(), frozenset())
    if first is None:
        return []
    accepted = [(path_cost(adj, first), first)]
    seen = {first}
    pool: list[tuple[float, tuple[int, ...]]] = []
    while len(accepted) < k:
        last = accepted[-1][1]
        for i in range(len(last) - 1):
            root = last[:i + 1]
            banned_edges = {p[i:i + 2] for _, p in accepted if p[:i + 1] == root}
            spur = _spur_search(adj, last[i], target, set(root[:-1]), banned_edges)
            if spur is None:
                continue
            cand = root[:-1] + spur
            if cand not in seen:
                seen.add(cand)
                heapq.heappush(pool, (path_cost(adj, cand), cand))
        if not pool:
            break
        accepted.append(heapq.heappop(pool))
    return accepted


def k_shortest_paths(graph: WordGraph, cfg: PathGenConfig = PathGenConfig(),
                     k: int | None = None) -> list[Path]:
    """The ``k`` (default ``cfg.k_max``) cheapest START->END paths of the graph."""
    k = cfg.k_max if k is None else k
    return [Path(nodes, tuple(graph.nodes[n].token for n in nodes[1:-1]), cost)
            for cost, nodes in yen_k_shortest(graph.adjacency(), START, END, k)]


def filter_paths(paths: Sequence[Path], cluster: Cluster | Sequence[Sequence[Token]],
                 cfg: PathGenConfig = PathGenConfig(),
                 idf: Mapping[str, float] | None = None) -> list[Path]:
    """Drop short paths and near-copies of input sentences, then cap at ``k_max``.

    A path survives if it has at least ``min_path_len`` words and its cosine to
    every cluster sentence stays below ``dedupe_threshold``.  Surplus paths are
    thinned to a uniform random subset (seeded), keeping their original order.
    """
    if isinstance(cluster, Cluster):
        sentences = [s.tokens for s in cluster.members]
    else:
        sentences = list(cluster)
    originals = {tuple(t.lower for t in s) for s in sentences}
    member_vecs = [vectorize(s, idf) for s in sentences]

    kept = []
    for p in paths:
        if p.token_count < cfg.min_path_len or p.words in originals:
            continue
        vec = vectorize(p.tokens, idf)
        if any(cosine(vec, mv) >= cfg.dedupe_threshold for mv in member_vecs):
            continue
        kept.append(p)
    if len(kept) > cfg.k_max:
        rng = random.Random(cfg.rng_seed)
        idx = sorted(rng.sample(range(len(kept)), cfg.k_max))
        kept = [kept[i] for i in idx]
    return kept


def generate_candidates(cluster: Cluster, cfg: PathGenConfig = PathGenConfig(),
                        idf: Mapping[str, float] | None = None
                        ) -> tuple[WordGraph, list[Path], list[Path]]:
    """Graph, raw shortest paths (up to raw_factor * k_max) and the filtered survivors."""
    graph = build_graph(cluster)
    raw = k_shortest_paths(graph, cfg, k=cfg.raw_factor * cfg.k_max)
    return graph, raw, filter_paths(raw, cluster, cfg, idf)
