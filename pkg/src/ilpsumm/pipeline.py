"""End-to-end summarization: document importance, clustering, fusion, scoring, selection."""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Sequence

from .clustering import ORDERINGS, Cluster, ClusterSet, build_clusters, order_clusters, retain_clusters
from .corpus import load_corpus, sentence_words
from .errors import NoCandidatesError, NoClustersError, TooFewDocumentsError
from .ilpselect import Summary, assemble_summary, build_problem, dump_json, solve_exact
from .importance import METHODS, PowerIterationConfig, rank_documents
from .lm import TrigramModel, parse_arpa, train_counts, train_from_sentences
from .rouge import Truncation
from .scoring import ScoredPath, score_paths, textrank_words
from .textcore import DocumentSet, build_document_set, load_stopwords
from .wordgraph import PathGenConfig, WordGraph, generate_candidates


@dataclass
class PipelineConfig:
    input_dir: str | None = None
    output: str | None = None
    report: str | None = None
    importance: str = "docsetsim"
    ordering: str = "mo"
    align_threshold: float = 0.5
    damping: float = 0.85
    k_paths: int = 200
    min_path_len: int = 8
    dedupe_threshold: float = 0.8
    seed: int = 0
    lm: str | None = None
    train_lm: str | None = None
    lm_k: float = 0.1
    redundancy_threshold: float = 0.5
    bb_node_budget: int = 10_000_000
    dump_ilp: str | None = None
    stopwords: str | None = None
    rouge: str = "2,L,SU4"
    truncate: str = "bytes:665"
    workers: int = 1

    def validate(self) -> None:
        if self.importance not in METHODS:
            raise ValueError(f"importance must be one of {METHODS}, got {self.importance!r}")
        if self.ordering not in ORDERINGS:
            raise ValueError(f"ordering must be one of {ORDERINGS}, got {self.ordering!r}")
        for name in ("align_threshold", "redundancy_threshold"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if not 0.0 < self.damping < 1.0:
            raise ValueError("damping must lie in (0, 1)")
        if self.bb_node_budget < 1 or self.workers < 1 or self.lm_k <= 0:
            raise ValueError("bb_node_budget and workers must be >= 1, lm_k > 0")
        if self.lm and self.train_lm:
            raise ValueError("give either lm or train_lm, not both")
        Truncation.parse(self.truncate)
        self.path_config()  # range checks for the path settings

    def path_config(self, cluster_id: int = 0) -> PathGenConfig:
        # every cluster draws from its own seeded stream
        return PathGenConfig(k_max=self.k_paths, min_path_len=self.min_path_len,
                             dedupe_threshold=self.dedupe_threshold,
                             rng_seed=self.seed * 1_000_003 + cluster_id)

    def power_config(self) -> PowerIterationConfig:
        return PowerIterationConfig(damping=self.damping)

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


@dataclass
class RunReport:
    importance: dict
    clusters: dict
    paths: list[dict]
    ilp: dict
    selected: list[dict]
    timings: dict = field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> dict:
        out = asdict(self)
        if not timings:
            out.pop("timings")
        return out

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"


@dataclass
class ClusterResult:
    cluster: Cluster
    graph: WordGraph
    raw: int
    scored: list[ScoredPath]


def load_model(cfg: PipelineConfig, docs: dict | None = None) -> TrigramModel:
    """The configured LM: an ARPA file, one trained on a corpus, or one trained on the input."""
    if cfg.lm:
        return parse_arpa(cfg.lm)
    if cfg.train_lm:
        return train_counts([cfg.train_lm], k=cfg.lm_k)
    if docs is None:
        raise ValueError("no language model configured and no documents to train on")
    return train_from_sentences(sentence_words(docs), k=cfg.lm_k)


def select_clusters(docset: DocumentSet, cfg: PipelineConfig):
    imp = rank_documents(docset, cfg.importance, cfg.power_config())
    found = build_clusters(docset, imp.chosen, cfg.align_threshold)
    kept = retain_clusters(found, len(docset))
    if not kept:
        raise NoClustersError(f"no cluster has members from at least half of the "
                              f"{len(docset)} documents ({len(found)} clusters built)")
    ordered = order_clusters(kept, cfg.ordering, docset.sentence_counts())
    return imp, found, ordered


def process_cluster(cluster: Cluster, docset: DocumentSet, model: TrigramModel,
                    cfg: PipelineConfig) -> ClusterResult:
    graph, raw, kept = generate_candidates(cluster, cfg.path_config(cluster.cluster_id), docset.idf)
    scored = score_paths(kept, textrank_words(cluster, cfg.power_config()), model)
    return ClusterResult(cluster, graph, len(raw), scored)


def summarize(docset: DocumentSet, model: TrigramModel,
              cfg: PipelineConfig = PipelineConfig()) -> tuple[Summary, RunReport]:
    cfg.validate()
    timings: dict[str, float] = {}
    clock = time.perf_counter()

    def lap(stage):
        nonlocal clock
        now = time.perf_counter()
        timings[stage] = round(now - clock, 6)
        clock = now

    imp, found, ordered = select_clusters(docset, cfg)
    lap("clustering")

    def work(c):
        return process_cluster(c, docset, model, cfg)

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(work, ordered))
    else:
        results = [work(c) for c in ordered]
    lap("paths")
    if not any(r.scored for r in results):
        raise NoCandidatesError(f"none of the {len(results)} clusters yielded a candidate path "
                                f"of at least {cfg.min_path_len} words")

    problem = build_problem([r.scored for r in results], cfg.redundancy_threshold, docset.idf)
    solution = solve_exact(problem, cfg.bb_node_budget)
    if cfg.dump_ilp:
        Path(cfg.dump_ilp).write_text(dump_json(problem, solution) + "\n", encoding="utf-8")
    summary = assemble_summary(solution, ordered, problem)
    lap("selection")

    selected = []
    for (cid, i), sentence in zip(summary.trace, summary.sentences):
        j = next(j for j, r in enumerate(results) if r.cluster.cluster_id == cid)
        sp = problem.groups[j][i]
        selected.append({"cluster_id": cid, "path_index": i, "text": sentence,
                         "I": sp.informativeness, "LQ": sp.lq, "T": sp.T, "utility": sp.utility})
    report = RunReport(
        importance={"method": imp.method, "chosen": imp.chosen, "scores": dict(imp.scores),
                    "converged": imp.converged},
        clusters={"before_retention": len(found), "after_retention": len(ordered),
                  "ordering": ordered.ordering, "order": [c.cluster_id for c in ordered]},
        paths=[{"cluster_id": r.cluster.cluster_id, "members": len(r.cluster.members),
                "graph_nodes": len(r.graph), "raw": r.raw, "filtered": len(r.scored)}
               for r in results],
        ilp={"objective": solution.objective, "optimal": solution.optimal,
             "nodes_explored": solution.nodes_explored,
             "variables": sum(len(g) for g in problem.utilities),
             "conflicts": len(problem.conflicts)},
        selected=selected,
        timings=timings,
    )
    return summary, report


def load_inputs(cfg: PipelineConfig) -> tuple[DocumentSet, dict]:
    if not cfg.input_dir:
        raise ValueError("no input directory given")
    sw = load_stopwords(cfg.stopwords) if cfg.stopwords else None
    docs = load_corpus(cfg.input_dir, sw)
    try:
        return build_document_set(docs), docs
    except ValueError as exc:
        raise TooFewDocumentsError(str(exc)) from None


def run_pipeline(cfg: PipelineConfig) -> tuple[Summary, RunReport]:
    """Read ``cfg.input_dir``, summarize, and write the summary/report files if configured."""
    cfg.validate()
    start = time.perf_counter()
    docset, docs = load_inputs(cfg)
    model = load_model(cfg, docs)
    load_time = time.perf_counter() - start
    summary, report = summarize(docset, model, cfg)
    report.timings = {"load": round(load_time, 6), **report.timings}
    if cfg.output:
        Path(cfg.output).write_text(summary.text, encoding="utf-8")
    if cfg.report:
        Path(cfg.report).write_text(report.to_json(), encoding="utf-8")
    return summary, report


def config_from_mapping(values: dict[str, Any], base: PipelineConfig | None = None) -> PipelineConfig:
    """Copy of ``base`` with string or typed overrides; keys may use dashes."""
    base = base or PipelineConfig()
    types = {f.name: f.type for f in fields(PipelineConfig)}
    out = asdict(base)
    for key, value in values.items():
        name = key.strip().replace("-", "_")
        if name not in types:
            raise ValueError(f"unknown setting {key!r}")
        out[name] = _coerce(name, types[name], value)
    return PipelineConfig(**out)


def _coerce(name: str, type_name: str, value: Any) -> Any:
    if not isinstance(value, str):
        return value
    value = value.strip()
    try:
        if type_name == "int":
            return int(value)
        if type_name == "float":
            return float(value)
    except ValueError:
        raise ValueError(f"bad value {value!r} for {name}") from None
    if "None" in type_name and value.lower() in ("", "none"):
        return None
    return value


def cluster_graphs(cfg: PipelineConfig) -> tuple[ClusterSet, Sequence[WordGraph]]:
    """Ordered clusters and their word graphs, for inspection."""
    from .wordgraph import build_graph

    docset, _ = load_inputs(cfg)
    _, _, ordered = select_clusters(docset, cfg)
    return ordered, [build_graph(c) for c in ordered]
