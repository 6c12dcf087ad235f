"""Sentence clusters seeded from the most important document, and their ordering."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from .textcore import DocumentSet, Sentence, cosine

MAJORITY = "mo"
AVG_POSITION = "apo"
ORDERINGS = (MAJORITY, AVG_POSITION)


@dataclass(frozen=True)
class Cluster:
    cluster_id: int
    seed: Sentence
    members: tuple[Sentence, ...]
    order_rank: int | None = None

    def __len__(self) -> int:
        return len(self.members)

    def doc_ids(self) -> set[str]:
        return {s.doc_id for s in self.members}

    def earliest_in(self, doc_id: str) -> int | None:
        idx = [s.index_in_doc for s in self.members if s.doc_id == doc_id]
        return min(idx) if idx else None


@dataclass(frozen=True)
class ClusterSet:
    clusters: tuple[Cluster, ...]
    ordering: str

    def __iter__(self):
        return iter(self.clusters)

    def __len__(self) -> int:
        return len(self.clusters)


def build_clusters(docset: DocumentSet, d_imp: str, threshold: float = 0.5) -> list[Cluster]:
    """Seed one cluster per sentence of ``d_imp`` and align every other sentence.

    A sentence joins the seed it is most similar to, provided that similarity
    is strictly above ``threshold``; ties go to the earlier seed.  Members other
    than the seed are kept in (doc_id, index) order so the result does not
    depend on the order documents were supplied in.
    """
    seeds = docset[d_imp].sentences
    assigned: list[list[Sentence]] = [[] for _ in seeds]
    for doc in docset.documents:
        if doc.doc_id == d_imp:
            continue
        for sent in doc.sentences:
            best, best_sim = -1, threshold
            for j, seed in enumerate(seeds):
                sim = cosine(sent.vector, seed.vector)
                if sim > best_sim:
                    best, best_sim = j, sim
            if best >= 0:
                assigned[best].append(sent)
    clusters = []
    for j, seed in enumerate(seeds):
        others = sorted(assigned[j], key=lambda s: s.key)
        clusters.append(Cluster(j, seed, (seed, *others)))
    return clusters


def min_support(n_docs: int) -> int:
    return math.ceil(n_docs / 2)


def retain_clusters(clusters: Sequence[Cluster], n_docs: int) -> list[Cluster]:
    """Keep clusters holding at least ceil(n_docs / 2) sentences."""
    need = min_support(n_docs)
    return [c for c in clusters if len(c.members) >= need]


def _finalize(ordered: Sequence[Cluster], ordering: str) -> ClusterSet:
    return ClusterSet(tuple(replace(c, order_rank=r) for r, c in enumerate(ordered)), ordering)


def precedence_counts(a: Cluster, b: Cluster) -> tuple[int, int]:
    """Over documents feeding both clusters, how often each one comes first.

    A document's representative in a cluster is its earliest sentence there.
    """
    a_first = b_first = 0
    for doc_id in sorted(a.doc_ids() & b.doc_ids()):
        pa, pb = a.earliest_in(doc_id), b.earliest_in(doc_id)
        if pa < pb:
            a_first += 1
        elif pb < pa:
            b_first += 1
    return a_first, b_first


def order_majority(clusters: Sequence[Cluster]) -> ClusterSet:
    """Majority ordering aggregated into a total order by Copeland score."""
    score = {c.cluster_id: 0 for c in clusters}
    for i, a in enumerate(clusters):
        for b in clusters[i + 1:]:
            na, nb = precedence_counts(a, b)
            if na > nb:
                score[a.cluster_id] += 1
                score[b.cluster_id] -= 1
            elif nb > na:
                score[b.cluster_id] += 1
                score[a.cluster_id] -= 1
    ordered = sorted(clusters, key=lambda c: (-score[c.cluster_id], c.cluster_id))
    return _finalize(ordered, MAJORITY)


def average_position(cluster: Cluster, doc_sizes: Mapping[str, int]) -> float:
    pos = [(s.index_in_doc + 1) / doc_sizes[s.doc_id] for s in cluster.members]
    return sum(pos) / len(pos)


def order_avg_position(clusters: Sequence[Cluster], doc_sizes: Mapping[str, int]) -> ClusterSet:
    """Ascending mean of 1-based position / document length; ties by seed index."""
    ordered = sorted(clusters, key=lambda c: (average_position(c, doc_sizes), c.cluster_id))
    return _finalize(ordered, AVG_POSITION)


def order_clusters(clusters: Sequence[Cluster], ordering: str,
                   doc_sizes: Mapping[str, int] | None = None) -> ClusterSet:
    if ordering == MAJORITY:
        return order_majority(clusters)
    if ordering == AVG_POSITION:
        if doc_sizes is None:
            raise ValueError("average position ordering needs document sizes")
        return order_avg_position(clusters, doc_sizes)
    raise ValueError(f"unknown ordering {ordering!r}; expected one of {ORDERINGS}")
