"""ROUGE-2, ROUGE-L and ROUGE-SU4 with 665-byte / 250-word truncation.

Multi-reference scores pool counts over references by default: recall is
total matches over total reference units.  ``aggregate="average"`` averages
per-reference scores instead.  No jackknifing.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .textcore import default_stopwords, stem

NONE, BYTES, WORDS = "none", "bytes", "words"
VARIANTS = ("2", "L", "SU4")


@dataclass(frozen=True)
class Truncation:
    mode: str = NONE
    limit: int = 0

    def __post_init__(self):
        if self.mode not in (NONE, BYTES, WORDS):
            raise ValueError(f"unknown truncation mode {self.mode!r}")
        if self.mode != NONE and self.limit <= 0:
            raise ValueError("truncation limit must be positive")

    @classmethod
    def parse(cls, value: str) -> "Truncation":
        """``bytes:665``, ``words:250`` or ``none``."""
        if value == NONE:
            return cls()
        mode, _, limit = value.partition(":")
        return cls(mode, int(limit))

    def __str__(self) -> str:
        return NONE if self.mode == NONE else f"{self.mode}:{self.limit}"


TRUNCATE_DUC2004 = Truncation(BYTES, 665)
TRUNCATE_DUC2005 = Truncation(WORDS, 250)


@dataclass(frozen=True)
class RougeConfig:
    truncation: Truncation = TRUNCATE_DUC2004
    stemming: bool = True
    remove_stopwords: bool = False
    variants: tuple[str, ...] = VARIANTS
    aggregate: str = "pooled"
    skip_distance: int = 4


@dataclass(frozen=True)
class RougeScore:
    variant: str
    recall: float
    precision: float
    f1: float = field(init=False)

    def __post_init__(self):
        r, p = self.recall, self.precision
        object.__setattr__(self, "f1", 0.0 if r + p == 0 else 2 * r * p / (r + p))


def truncate(text: str, trunc: Truncation) -> str:
    """Keep whole whitespace tokens: the first N words, or as many as fit in N UTF-8 bytes.

    Line breaks between kept tokens survive (they delimit sentences for
    ROUGE-L); every separator counts as one byte.
    """
    if trunc.mode == NONE:
        return text
    lines: list[list[str]] = []
    used = 0
    full = False
    for line in text.splitlines():
        kept: list[str] = []
        for w in line.split():
            if trunc.mode == WORDS:
                cost = 1
            else:
                cost = len(w.encode("utf-8")) + (1 if used else 0)
            if used + cost > trunc.limit:
                full = True
                break
            kept.append(w)
            used += cost
        if kept:
            lines.append(kept)
        if full:
            break
    return "\n".join(" ".join(ws) for ws in lines)


_NON_ALNUM = re.compile(r"[^a-z0-9]+")


def _tokens(text: str, cfg: RougeConfig) -> list[str]:
    toks = _NON_ALNUM.sub(" ", text.lower()).split()
    if cfg.remove_stopwords:
        sw = default_stopwords()
        toks = [t for t in toks if t not in sw]
    if cfg.stemming:
        toks = [stem(t) for t in toks]
    return toks


def _sentences(text: str, cfg: RougeConfig) -> list[list[str]]:
    out = [_tokens(line, cfg) for line in text.splitlines()]
    return [s for s in out if s]


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def skip_bigrams(tokens: Sequence[str], max_gap: int) -> Counter:
    """Ordered pairs with at most ``max_gap`` words between them."""
    out: Counter = Counter()
    for i in range(len(tokens)):
        for j in range(i + 1, min(len(tokens), i + max_gap + 2)):
            out[(tokens[i], tokens[j])] += 1
    return out


def su_units(tokens: Sequence[str], max_gap: int = 4) -> Counter:
    units = skip_bigrams(tokens, max_gap)
    units.update((t,) for t in tokens)
    return units


def _combine(variant: str, matches: list[float], ref_totals: list[float],
             cand_total: float, cfg: RougeConfig) -> RougeScore:
    if cfg.aggregate == "average":
        rs = [m / r if r else 0.0 for m, r in zip(matches, ref_totals)]
        ps = [m / cand_total if cand_total else 0.0 for m in matches]
        return RougeScore(variant, sum(rs) / len(rs), sum(ps) / len(ps))
    if cfg.aggregate != "pooled":
        raise ValueError(f"unknown aggregate {cfg.aggregate!r}")
    total_m, total_r = sum(matches), sum(ref_totals)
    recall = total_m / total_r if total_r else 0.0
    precision = total_m / (cand_total * len(matches)) if cand_total else 0.0
    return RougeScore(variant, recall, precision)


def _overlap(cand: Counter, ref: Counter) -> int:
    return sum(min(c, ref[g]) for g, c in cand.items() if g in ref)


def _prepare(candidate: str, references: Sequence[str], cfg: RougeConfig):
    if not references:
        raise ValueError("ROUGE needs at least one reference")
    return truncate(candidate, cfg.truncation), list(references)


def rouge_n(candidate: str, references: Sequence[str], n: int = 2,
            cfg: RougeConfig = RougeConfig()) -> RougeScore:
    cand, refs = _prepare(candidate, references, cfg)
    cgrams = ngrams(_tokens(cand, cfg), n)
    matches, totals = [], []
    for ref in refs:
        rgrams = ngrams(_tokens(ref, cfg), n)
        matches.append(_overlap(cgrams, rgrams))
        totals.append(sum(rgrams.values()))
    return _combine(str(n), matches, totals, sum(cgrams.values()), cfg)


def rouge_su4(candidate: str, references: Sequence[str],
              cfg: RougeConfig = RougeConfig()) -> RougeScore:
    cand, refs = _prepare(candidate, references, cfg)
    cunits = su_units(_tokens(cand, cfg), cfg.skip_distance)
    matches, totals = [], []
    for ref in refs:
        runits = su_units(_tokens(ref, cfg), cfg.skip_distance)
        matches.append(_overlap(cunits, runits))
        totals.append(sum(runits.values()))
    return _combine(f"SU{cfg.skip_distance}", matches, totals, sum(cunits.values()), cfg)


def lcs_positions(a: Sequence[str], b: Sequence[str]) -> set[int]:
    """Indices of ``a`` on one longest common subsequence with ``b``."""
    n, m = len(a), len(b)
    table = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            if a[i] == b[j]:
                table[i][j] = table[i + 1][j + 1] + 1
            else:
                table[i][j] = max(table[i + 1][j], table[i][j + 1])
    out, i, j = set(), 0, 0
    while i < n and j < m:
        if a[i] == b[j]:
            out.add(i)
            i += 1
            j += 1
        elif table[i + 1][j] >= table[i][j + 1]:
            i += 1
        else:
            j += 1
    return out


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    return len(lcs_positions(a, b))


def _union_lcs_hits(ref_sents: list[list[str]], cand_sents: list[list[str]]) -> int:
    """Summary-level LCS: union of per-sentence LCS hits, clipped by token counts."""
    cand_left = Counter(t for s in cand_sents for t in s)
    ref_left = Counter(t for s in ref_sents for t in s)
    hits = 0
    for r in ref_sents:
        union: set[int] = set()
        for c in cand_sents:
            union |= lcs_positions(r, c)
        for i in sorted(union):
            tok = r[i]
            if cand_left[tok] > 0 and ref_left[tok] > 0:
                hits += 1
                cand_left[tok] -= 1
                ref_left[tok] -= 1
    return hits


def rouge_l(candidate: str, references: Sequence[str],
            cfg: RougeConfig = RougeConfig()) -> RougeScore:
    cand, refs = _prepare(candidate, references, cfg)
    csents = _sentences(cand, cfg)
    cand_total = sum(len(s) for s in csents)
    matches, totals = [], []
    for ref in refs:
        rsents = _sentences(ref, cfg)
        matches.append(_union_lcs_hits(rsents, csents))
        totals.append(sum(len(s) for s in rsents))
    return _combine("L", matches, totals, cand_total, cfg)


def evaluate_text(candidate: str, references: Sequence[str],
                  cfg: RougeConfig = RougeConfig()) -> dict[str, RougeScore]:
    out = {}
    for v in cfg.variants:
        key = v.upper()
        if key == "2":
            out["ROUGE-2"] = rouge_n(candidate, references, 2, cfg)
        elif key == "L":
            out["ROUGE-L"] = rouge_l(candidate, references, cfg)
        elif key.startswith("SU"):
            gap = int(key[2:] or cfg.skip_distance)
            sub = RougeConfig(cfg.truncation, cfg.stemming, cfg.remove_stopwords,
                              cfg.variants, cfg.aggregate, gap)
            out[f"ROUGE-SU{gap}"] = rouge_su4(candidate, references, sub)
        elif key.isdigit():
            out[f"ROUGE-{key}"] = rouge_n(candidate, references, int(key), cfg)
        else:
            raise ValueError(f"unknown ROUGE variant {v!r}")
    return out
