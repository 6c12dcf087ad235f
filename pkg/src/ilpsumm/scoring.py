"""Candidate path scores: TextRank informativeness and trigram linguistic quality."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .clustering import Cluster
from .importance import PowerIterationConfig
from .lm import TrigramModel, trigram_logprob
from .textcore import Token
from .wordgraph import Path


@dataclass(frozen=True)
class TextRankScores:
    scores: Mapping[str, float]
    converged: bool = True
    iterations: int = 0

    def __getitem__(self, word: str) -> float:
        return self.scores[word]

    def get(self, word: str, default: float = 0.0) -> float:
        return self.scores.get(word, default)


@dataclass(frozen=True)
class ScoredPath:
    path: Path
    informativeness: float
    lq: float

    @property
    def T(self) -> int:
        return self.path.token_count

    @property
    def utility(self) -> float:
        """Objective coefficient: informativeness * quality / length."""
        return self.informativeness * self.lq / self.T


def _content(tok: Token) -> bool:
    return not tok.is_stopword and not tok.is_punct


def cooccurrence_graph(sentences: Iterable[Sequence[Token]]) -> tuple[list[str], np.ndarray]:
    """Content words and their symmetric adjacent co-occurrence counts.

    Two words are linked each time they stand side by side in a sentence; a
    stopword or punctuation mark between them breaks the link.
    """
    words: dict[str, int] = {}
    pairs = []
    for toks in sentences:
        for tok in toks:
            if _content(tok):
                words.setdefault(tok.lower, len(words))
        for a, b in zip(toks, toks[1:]):
            if _content(a) and _content(b) and a.lower != b.lower:
                pairs.append((words[a.lower], words[b.lower]))
    vocab = sorted(words)
    remap = {words[w]: i for i, w in enumerate(vocab)}
    w = np.zeros((len(vocab), len(vocab)))
    for i, j in pairs:
        w[remap[i], remap[j]] += 1
        w[remap[j], remap[i]] += 1
    return vocab, w


def textrank_matrix(weights: np.ndarray, cfg: PowerIterationConfig = PowerIterationConfig()
                    ) -> tuple[np.ndarray, bool, int]:
    """Iterate ``S_i = (1 - d) + d * sum_j w_ji / W_j * S_j`` from all-ones.

    ``W_j`` is the total edge weight of node j.  Stops once the largest change
    falls below the tolerance.
    """
    w = np.asarray(weights, dtype=float)
    n = w.shape[0]
    out = w.sum(axis=1)
    m = np.zeros_like(w)
    nz = out > 0
    # m[i, j] = w_ji / W_j
    m[:, nz] = w.T[:, nz] / out[nz]
    d = cfg.damping
    s = np.ones(n)
    for it in range(1, cfg.max_iters + 1):
        nxt = (1 - d) + d * (m @ s)
        delta = np.max(np.abs(nxt - s)) if n else 0.0
        s = nxt
        if delta < cfg.tolerance:
            return s, True, it
    return s, False, cfg.max_iters


def textrank_words(cluster: Cluster | Iterable[Sequence[Token]],
                   cfg: PowerIterationConfig = PowerIterationConfig()) -> TextRankScores:
    if isinstance(cluster, Cluster):
        cluster = [s.tokens for s in cluster.members]
    vocab, w = cooccurrence_graph(cluster)
    if not vocab:
        return TextRankScores({}, True, 0)
    s, converged, iters = textrank_matrix(w, cfg)
    return TextRankScores(dict(zip(vocab, map(float, s))), converged, iters)


def informativeness(path: Path | Sequence[Token], scores: TextRankScores | Mapping[str, float]) -> float:
    """Sum of word scores over the content words of a path, once per occurrence."""
    tokens = path.tokens if isinstance(path, Path) else path
    return sum(scores.get(t.lower, 0.0) for t in tokens if _content(t))


def log_likelihood(words: Sequence[str], model: TrigramModel) -> float:
    """Mean log2 trigram probability over positions 3..q (no boundary padding)."""
    if len(words) < 3:
        raise ValueError(f"need at least 3 words for a trigram score, got {len(words)}")
    total = sum(trigram_logprob(model, words[t - 2], words[t - 1], words[t])
                for t in range(2, len(words)))
    return total / (len(words) - 2)


def lq_from_ll(ll: float) -> float:
    return 1.0 / (1.0 - ll)


def linguistic_quality(path: Path | Sequence[str], model: TrigramModel) -> float:
    if isinstance(path, Path):
        words = [t.lower for t in path.tokens if not t.is_punct]
    else:
        words = list(path)
    return lq_from_ll(log_likelihood(words, model))


def score_paths(paths: Sequence[Path], textrank: TextRankScores,
                model: TrigramModel) -> list[ScoredPath]:
    return [ScoredPath(p, informativeness(p, textrank), linguistic_quality(p, model)) for p in paths]
