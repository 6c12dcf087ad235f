"""Command line entry point.

Subcommands: ``summarize``, ``evaluate``, ``train-lm`` and ``dump-graph``.

Pipeline settings come from, in increasing priority: built-in defaults, a
``key = value`` config file (``--config``; keys are the long flag names with
or without the leading dashes), ``ILPSUMM_*`` environment variables (e.g.
``ILPSUMM_K_PATHS=100``) and finally explicit flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import load_references
from .errors import InputError, PipelineError
from .lm import train_counts, write_arpa
from .pipeline import PipelineConfig, cluster_graphs, config_from_mapping, run_pipeline
from .rouge import RougeConfig, Truncation, evaluate_text

ENV_PREFIX = "ILPSUMM_"


def read_config_file(path: str | Path) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        out[key.strip().lstrip("-")] = value.strip()
    return out


def env_overrides(environ: Mapping[str, str]) -> dict[str, str]:
    names = set(PipelineConfig.field_names())
    out = {}
    for key, value in environ.items():
        if key.startswith(ENV_PREFIX):
            name = key[len(ENV_PREFIX):].lower()
            if name in names:
                out[name] = value
    return out


def resolve_config(args: argparse.Namespace, environ: Mapping[str, str] | None = None) -> PipelineConfig:
    environ = os.environ if environ is None else environ
    cfg = PipelineConfig()
    if getattr(args, "config", None):
        cfg = config_from_mapping(read_config_file(args.config), cfg)
    cfg = config_from_mapping(env_overrides(environ), cfg)
    flags = {k: v for k, v in vars(args).items()
             if k in PipelineConfig.field_names() and v is not None}
    return config_from_mapping(flags, cfg)


def _pipeline_flags(p: argparse.ArgumentParser) -> None:
    # defaults stay None so that unset flags do not mask config/env values
    g = p.add_argument_group("pipeline settings")
    g.add_argument("--config", help="key = value settings file")
    g.add_argument("--importance", choices=["lexrank", "cossim", "docsetsim"])
    g.add_argument("--ordering", choices=["mo", "apo"])
    g.add_argument("--align-threshold", type=float)
    g.add_argument("--damping", type=float)
    g.add_argument("--k-paths", type=int)
    g.add_argument("--min-path-len", type=int)
    g.add_argument("--dedupe-threshold", type=float)
    g.add_argument("--seed", type=int)
    g.add_argument("--lm", help="ARPA language model file")
    g.add_argument("--train-lm", help="directory of text to train the trigram model on")
    g.add_argument("--lm-k", type=float, help="add-k constant for --train-lm and the fallback model")
    g.add_argument("--redundancy-threshold", type=float)
    g.add_argument("--bb-node-budget", type=int)
    g.add_argument("--dump-ilp", help="write the selection problem and solution as JSON")
    g.add_argument("--stopwords", help="stopword list, one word per line")
    g.add_argument("--workers", type=int, help="threads for per-cluster work")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ilpsumm", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="summarize a directory of documents")
    p.add_argument("input_dir")
    p.add_argument("-o", "--output", help="summary file (default: stdout)")
    p.add_argument("--report", help="JSON diagnostics file")
    _pipeline_flags(p)

    p = sub.add_parser("evaluate", help="ROUGE scores of a summary against references")
    p.add_argument("summary")
    p.add_argument("references", help="directory of reference summaries")
    p.add_argument("--rouge", action="append", choices=["2", "L", "SU4"],
                   help="variant to report (repeatable; default all)")
    p.add_argument("--truncate", default="bytes:665", help="bytes:N, words:N or none")
    p.add_argument("--no-stem", action="store_true")
    p.add_argument("--remove-stopwords", action="store_true")
    p.add_argument("--aggregate", choices=["pooled", "average"], default="pooled")
    p.add_argument("--json", dest="json_out", help="also write the scores here")

    p = sub.add_parser("train-lm", help="train an ARPA trigram model")
    p.add_argument("corpus", nargs="+", help="text files or directories")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--k", type=float, default=0.1)
    p.add_argument("--unk-threshold", type=int, default=1)

    p = sub.add_parser("dump-graph", help="print a cluster's word graph in DOT")
    p.add_argument("input_dir")
    p.add_argument("--cluster", type=int, default=0, help="position in the cluster order")
    p.add_argument("-o", "--output")
    _pipeline_flags(p)
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_summarize(args) -> int:
    cfg = resolve_config(args)
    out, cfg.output = cfg.output, None
    summary, _ = run_pipeline(cfg)
    _emit(summary.text, out)
    return 0


def cmd_evaluate(args) -> int:
    summary = Path(args.summary)
    if not summary.is_file():
        raise InputError(f"summary file {summary} does not exist")
    refs = load_references(args.references)
    cfg = RougeConfig(truncation=Truncation.parse(args.truncate), stemming=not args.no_stem,
                      remove_stopwords=args.remove_stopwords,
                      variants=tuple(args.rouge or ("2", "L", "SU4")), aggregate=args.aggregate)
    scores = evaluate_text(summary.read_text("utf-8"), refs, cfg)
    table = {name: {"recall": s.recall, "precision": s.precision, "f1": s.f1}
             for name, s in scores.items()}
    for name, row in table.items():
        print(f"{name:<10} R={row['recall']:.5f} P={row['precision']:.5f} F={row['f1']:.5f}")
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(table, indent=2) + "\n", encoding="utf-8")
    return 0


def cmd_train_lm(args) -> int:
    model = train_counts(args.corpus, k=args.k, unk_threshold=args.unk_threshold)
    write_arpa(model, args.output)
    counts = ", ".join(f"{n}-grams: {c}" for n, c in model.counts().items())
    print(f"wrote {args.output} ({counts})", file=sys.stderr)
    return 0


def cmd_dump_graph(args) -> int:
    cfg = resolve_config(args)
    clusters, graphs = cluster_graphs(cfg)
    if not 0 <= args.cluster < len(graphs):
        raise InputError(f"cluster {args.cluster} out of range (0..{len(graphs) - 1})")
    cid = clusters.clusters[args.cluster].cluster_id
    _emit(graphs[args.cluster].to_dot(f"cluster_{cid}"), args.output)
    return 0


COMMANDS = {"summarize": cmd_summarize, "evaluate": cmd_evaluate,
            "train-lm": cmd_train_lm, "dump-graph": cmd_dump_graph}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except PipelineError as exc:
        print(f"ilpsumm: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"ilpsumm: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
