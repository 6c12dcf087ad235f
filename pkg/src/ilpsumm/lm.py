"""Backoff n-gram language models in ARPA format, plus a small count-based trainer."""

from __future__ import annotations

import io
import math
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence, TextIO

UNK = "<unk>"
LOG2_OF_10 = math.log2(10.0)

NgramTable = Mapping[tuple[str, ...], tuple[float, float]]


class ArpaError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class TrigramModel:
    """ARPA-style backoff model.

    ``ngrams[n]`` maps an n-gram tuple to ``(log10 prob, log10 backoff)``.
    """

    ngrams: Mapping[int, NgramTable]
    unk: str = UNK

    @property
    def order(self) -> int:
        return max(self.ngrams)

    @property
    def vocab(self) -> frozenset[str]:
        return frozenset(w for (w,) in self.ngrams.get(1, {}))

    def counts(self) -> dict[int, int]:
        return {n: len(t) for n, t in sorted(self.ngrams.items())}

    def map_word(self, word: str) -> str:
        return word if (word,) in self.ngrams[1] else self.unk

    def _oov_log10(self) -> float:
        return min(lp for lp, _ in self.ngrams[1].values())

    def log10_prob(self, history: Sequence[str], word: str) -> float:
        """log10 P(word | history) with standard backoff; history is truncated to order-1."""
        history = tuple(self.map_word(w) for w in history)[-(self.order - 1):] if self.order > 1 else ()
        return self._backoff(history, self.map_word(word))

    def _backoff(self, history: tuple[str, ...], word: str) -> float:
        gram = history + (word,)
        table = self.ngrams.get(len(gram), {})
        if gram in table:
            return table[gram][0]
        if not history:
            # no unknown-word entry in the model
            return self._oov_log10()
        bo = self.ngrams.get(len(history), {}).get(history, (0.0, 0.0))[1]
        return bo + self._backoff(history[1:], word)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrigramModel):
            return NotImplemented
        return self.unk == other.unk and {n: dict(t) for n, t in self.ngrams.items()} == \
            {n: dict(t) for n, t in other.ngrams.items()}


def trigram_logprob(model: TrigramModel, w2: str, w1: str, w: str) -> float:
    """log2 P(w | w2 w1), i.e. the trigram probability with the older word first."""
    return model.log10_prob((w2, w1), w) * LOG2_OF_10


# ---------------------------------------------------------------------------
# ARPA reading and writing

_NGRAM_COUNT_RE = re.compile(r"^ngram\s+(\d+)\s*=\s*(\d+)$")
_SECTION_RE = re.compile(r"^\\(\d+)-grams:$")


def _lines(source) -> Iterable[str]:
    if isinstance(source, (str, Path)) and not (isinstance(source, str) and "\n" in source):
        with open(source, encoding="utf-8") as fh:
            yield from fh
    elif isinstance(source, str):
        yield from io.StringIO(source)
    else:
        yield from source


def parse_arpa(source: str | Path | TextIO, unk: str = UNK) -> TrigramModel:
    """Read an ARPA file (path, file object or the text itself)."""
    declared: dict[int, int] = {}
    tables: dict[int, dict[tuple[str, ...], tuple[float, float]]] = {}
    state = "preamble"
    order = 0
    lineno = 0

    def close_section(at: int):
        if order and len(tables[order]) != declared[order]:
            raise ArpaError(f"{order}-gram section declares {declared[order]} entries "
                            f"but holds {len(tables[order])}", at)

    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if state == "preamble":
            if line == "\\data\\":
                state = "header"
            continue
        if not line:
            continue
        if line == "\\end\\":
            close_section(lineno)
            state = "end"
            break
        m = _SECTION_RE.match(line)
        if m:
            if state == "header" and not declared:
                raise ArpaError("no ngram counts in \\data\\ header", lineno)
            close_section(lineno)
            order = int(m.group(1))
            if order not in declared:
                raise ArpaError(f"section \\{order}-grams: was not declared", lineno)
            if order in tables:
                raise ArpaError(f"duplicate \\{order}-grams: section", lineno)
            tables[order] = {}
            state = "body"
            continue
        if state == "header":
            m = _NGRAM_COUNT_RE.match(line)
            if not m:
                raise ArpaError(f"malformed header line {line!r}", lineno)
            declared[int(m.group(1))] = int(m.group(2))
            continue
        fields = line.split()
        if len(fields) not in (order + 1, order + 2):
            raise ArpaError(f"expected {order} words plus log-probability and optional "
                            f"backoff, got {len(fields)} fields", lineno)
        try:
            lp = float(fields[0])
            bo = float(fields[order + 1]) if len(fields) == order + 2 else 0.0
        except ValueError:
            raise ArpaError(f"non-numeric field in {line!r}", lineno) from None
        tables[order][tuple(fields[1:order + 1])] = (lp, bo)

    if state == "preamble":
        raise ArpaError("missing \\data\\ header", lineno or None)
    if state != "end":
        raise ArpaError("missing \\end\\ marker", lineno)
    missing = sorted(set(declared) - set(tables))
    if missing:
        raise ArpaError(f"declared orders {missing} have no section", lineno)
    if 1 not in tables:
        raise ArpaError("model has no unigram section", lineno)
    return TrigramModel(tables, unk)


def to_arpa(model: TrigramModel) -> str:
    """Serialize with full float precision, so parsing it back is exact."""
    out = ["\\data\\"]
    for n, count in model.counts().items():
        out.append(f"ngram {n}={count}")
    for n in sorted(model.ngrams):
        out.append("")
        out.append(f"\\{n}-grams:")
        for gram, (lp, bo) in model.ngrams[n].items():
            line = f"{lp!r}\t{' '.join(gram)}"
            if bo != 0.0:
                line += f"\t{bo!r}"
            out.append(line)
    out.append("")
    out.append("\\end\\")
    return "\n".join(out) + "\n"


def write_arpa(model: TrigramModel, path: str | Path) -> None:
    Path(path).write_text(to_arpa(model), encoding="utf-8")


# ---------------------------------------------------------------------------
# training

def train_from_sentences(sentences: Iterable[Sequence[str]], k: float = 0.1,
                         unk_threshold: int = 1) -> TrigramModel:
    """Interpolated add-k trigram model over already tokenized sentences.

    Words seen ``unk_threshold`` times or fewer become ``<unk>``.  With V the
    vocabulary size (``<unk>`` included)::

        P1(w)       = (c(w) + k) / (N + kV)
        P2(w | u)   = (c(u w) + kV P1(w)) / (c(u .) + kV)
        P3(w | u v) = (c(u v w) + kV P2(w | v)) / (c(u v .) + kV)

    Unseen continuations equal ``kV / (c(hist .) + kV)`` times the lower order,
    which is exactly the ARPA backoff weight, so the file form is lossless and
    every conditional distribution sums to one over the vocabulary.
    """
    sentences = [list(s) for s in sentences if len(s)]
    if not sentences:
        raise ValueError("cannot train a language model on an empty corpus")
    if k <= 0:
        raise ValueError("k must be positive")
    raw = Counter(w for s in sentences for w in s)
    vocab = {w for w, c in raw.items() if c > unk_threshold} | {UNK}
    sentences = [[w if w in vocab else UNK for w in s] for s in sentences]

    c1, c2, c3 = Counter(), Counter(), Counter()
    for s in sentences:
        c1.update(s)
        c2.update(zip(s, s[1:]))
        c3.update(zip(s, s[1:], s[2:]))
    h2, h3 = Counter(), Counter()
    for (u, _), c in c2.items():
        h2[u] += c
    for (u, v, _), c in c3.items():
        h3[(u, v)] += c

    n_tok = sum(c1.values())
    kv = k * len(vocab)

    def p1(w):
        return (c1[w] + k) / (n_tok + kv)

    def p2(u, w):
        return (c2[(u, w)] + kv * p1(w)) / (h2[u] + kv)

    def p3(u, v, w):
        return (c3[(u, v, w)] + kv * p2(v, w)) / (h3[(u, v)] + kv)

    uni = {(w,): (math.log10(p1(w)), math.log10(kv / (h2[w] + kv))) for w in sorted(vocab)}
    bi = {g: (math.log10(p2(*g)), math.log10(kv / (h3[g] + kv))) for g in sorted(c2)}
    tri = {g: (math.log10(p3(*g)), 0.0) for g in sorted(c3)}
    return TrigramModel({1: uni, 2: bi, 3: tri})


def corpus_sentences(paths: Iterable[str | Path]) -> list[list[str]]:
    """Lower-cased word sequences (punctuation dropped) from text files or directories."""
    from .textcore import segment_sentences, tokenize

    files: list[Path] = []
    for p in map(Path, paths):
        files.extend(sorted(f for f in p.rglob("*") if f.is_file()) if p.is_dir() else [p])
    out = []
    for f in files:
        for sent in segment_sentences(f.read_text("utf-8")):
            words = [t.lower for t in tokenize(sent) if not t.is_punct]
            if words:
                out.append(words)
    return out


def train_counts(corpus_files: Iterable[str | Path], k: float = 0.1,
                 unk_threshold: int = 1) -> TrigramModel:
    return train_from_sentences(corpus_sentences(corpus_files), k=k, unk_threshold=unk_threshold)
