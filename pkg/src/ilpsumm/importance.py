"""Pick the most important document of a set (the one every cluster is seeded from)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .textcore import DocumentSet, cosine, idf_modified_cosine

LEXRANK = "lexrank"
COSSIM = "cossim"
DOCSETSIM = "docsetsim"
METHODS = (LEXRANK, COSSIM, DOCSETSIM)


@dataclass(frozen=True)
class PowerIterationConfig:
    damping: float = 0.85
    tolerance: float = 1e-8
    max_iters: int = 200

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ValueError(f"damping must lie in (0, 1), got {self.damping}")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


@dataclass(frozen=True)
class ImportanceScores:
    method: str
    scores: Mapping[str, float]
    chosen: str
    converged: bool = True
    iterations: int = 0


def _argmax(scores: Mapping[str, float]) -> str:
    # ties go to the lexicographically smallest doc_id
    return min(scores, key=lambda k: (-scores[k], k))


def lexrank_matrix(weights: np.ndarray, cfg: PowerIterationConfig = PowerIterationConfig()
                   ) -> tuple[np.ndarray, bool, int]:
    """Power iteration of the document-graph LexRank recurrence.

    ``weights`` is a symmetric non-negative similarity matrix; its diagonal is
    ignored.  Column v of the transition matrix is w(., v) normalized by the
    total weight incident to v; a node with no incident weight spreads its mass
    uniformly.  Each step computes ``p = d/N + (1 - d) * M @ p``.

    Returns (scores, converged, iterations).
    """
    w = np.array(weights, dtype=float)
    n = w.shape[0]
    np.fill_diagonal(w, 0.0)
    col = w.sum(axis=0)
    m = np.empty_like(w)
    dangling = col == 0
    m[:, ~dangling] = w[:, ~dangling] / col[~dangling]
    m[:, dangling] = 1.0 / n

    d = cfg.damping
    p = np.full(n, 1.0 / n)
    for it in range(1, cfg.max_iters + 1):
        nxt = d / n + (1 - d) * (m @ p)
        delta = np.abs(nxt - p).sum()
        p = nxt
        if delta < cfg.tolerance:
            return p, True, it
    return p, False, cfg.max_iters


def lexrank_documents(docset: DocumentSet,
                      cfg: PowerIterationConfig = PowerIterationConfig()) -> ImportanceScores:
    docs = docset.documents
    n = len(docs)
    w = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            w[i, j] = w[j, i] = idf_modified_cosine(docs[i].tf, docs[j].tf, docset.idf)
    p, converged, iters = lexrank_matrix(w, cfg)
    scores = {d.doc_id: float(s) for d, s in zip(docs, p)}
    return ImportanceScores(LEXRANK, scores, _argmax(scores), converged, iters)


def avg_pairwise_cossim(docset: DocumentSet) -> ImportanceScores:
    docs = docset.documents
    n = len(docs)
    scores = {}
    for i, di in enumerate(docs):
        total = sum(cosine(di.vector, dj.vector) for j, dj in enumerate(docs) if j != i)
        scores[di.doc_id] = total / (n - 1)
    return ImportanceScores(COSSIM, scores, _argmax(scores))


def docset_similarity(docset: DocumentSet) -> ImportanceScores:
    """Cosine of each document to the concatenation of all of them (itself included)."""
    scores = {d.doc_id: cosine(d.vector, docset.concatenated_vector) for d in docset.documents}
    return ImportanceScores(DOCSETSIM, scores, _argmax(scores))


def rank_documents(docset: DocumentSet, method: str = DOCSETSIM,
                   cfg: PowerIterationConfig = PowerIterationConfig()) -> ImportanceScores:
    if len(docset) < 2:
        raise ValueError("document importance needs at least 2 documents")
    if method == LEXRANK:
        return lexrank_documents(docset, cfg)
    if method == COSSIM:
        return avg_pairwise_cossim(docset)
    if method == DOCSETSIM:
        return docset_similarity(docset)
    raise ValueError(f"unknown importance method {method!r}; expected one of {METHODS}")
