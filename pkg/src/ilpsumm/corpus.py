"""Reading document sets and reference summaries from disk.

A document set is a directory.  Plain files hold one document of raw UTF-8
text each (doc_id = file stem).  ``*.jsonl`` files hold pre-tokenized,
pre-tagged sentences, one JSON record per line::

    {"doc_id": "APW1", "index": 0, "tokens": "Storms_NOUN hit_VERB ._PUNCT"}

``tokens`` may also be a list of ``surface_TAG`` strings.  Such records skip
segmentation and tagging.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

from .errors import InputError, TooFewDocumentsError
from .textcore import (DocumentSet, Token, build_document_set, parse_tagged, pos_tag,
                       segment_sentences, tokenize)


def _visible_files(directory: Path) -> list[Path]:
    return sorted(f for f in directory.iterdir() if f.is_file() and not f.name.startswith("."))


def read_tagged_records(path: Path, stopwords=None) -> dict[str, dict[int, list[Token]]]:
    out: dict[str, dict[int, list[Token]]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                doc_id, index, toks = str(rec["doc_id"]), int(rec["index"]), rec["tokens"]
            except (ValueError, KeyError, TypeError) as exc:
                raise InputError(f"{path}:{lineno}: bad record ({exc})") from None
            if isinstance(toks, str):
                toks = toks.split()
            sents = out.setdefault(doc_id, {})
            if index in sents:
                raise InputError(f"{path}:{lineno}: duplicate sentence {doc_id}#{index}")
            try:
                sents[index] = parse_tagged(toks, stopwords)
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: {exc}") from None
    return out


def load_corpus(directory: str | Path, stopwords=None) -> dict[str, list[list[Token]]]:
    """doc_id -> tagged sentences, for every document found in ``directory``."""
    directory = Path(directory)
    if not directory.is_dir():
        raise InputError(f"input directory {directory} does not exist")
    docs: dict[str, list[list[Token]]] = {}
    for f in _visible_files(directory):
        if f.suffix == ".jsonl":
            for doc_id, sents in read_tagged_records(f, stopwords).items():
                if doc_id in docs:
                    raise InputError(f"document {doc_id!r} defined twice")
                docs[doc_id] = [sents[i] for i in sorted(sents) if sents[i]]
        else:
            if f.stem in docs:
                raise InputError(f"document {f.stem!r} defined twice")
            text = f.read_text("utf-8")
            sents = [pos_tag(tokenize(s, stopwords)) for s in segment_sentences(text)]
            docs[f.stem] = [s for s in sents if s]
    docs = {k: v for k, v in docs.items() if v}
    if len(docs) < 2:
        raise TooFewDocumentsError(f"need ≥ 2 documents, found {len(docs)} in {directory}")
    return docs


def load_document_set(directory: str | Path, stopwords=None) -> DocumentSet:
    return build_document_set(load_corpus(directory, stopwords))


def load_references(directory: str | Path) -> list[str]:
    directory = Path(directory)
    if not directory.is_dir():
        raise InputError(f"reference directory {directory} does not exist")
    refs = [f.read_text("utf-8") for f in _visible_files(directory)]
    if not refs:
        raise InputError(f"no reference summaries in {directory}")
    return refs


def sentence_words(docs: Sequence[Sequence[Token]] | dict) -> list[list[str]]:
    """Lower-cased non-punctuation words of every sentence (LM training input)."""
    groups = docs.values() if isinstance(docs, dict) else [docs]
    return [[t.lower for t in s if not t.is_punct] for g in groups for s in g]
