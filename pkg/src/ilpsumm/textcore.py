"""Text substrate: segmentation, tokenization, tagging, stemming and TF-IDF.

Everything downstream (clustering, word graphs, scoring, ROUGE) consumes the
types defined here.  All of them are immutable once built.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from nltk.stem.porter import PorterStemmer

# Coarse tag set.
NOUN, VERB, ADJ, ADV, PRON, DET, ADP, CONJ, NUM, PUNCT, OTHER = (
    "NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "CONJ", "NUM", "PUNCT", "OTHER",
)
TAGS = frozenset({NOUN, VERB, ADJ, ADV, PRON, DET, ADP, CONJ, NUM, PUNCT, OTHER})

SparseVector = Mapping[str, float]


# ---------------------------------------------------------------------------
# stopwords

def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Read a stopword file (one lowercase word per line, ``#`` comments).

    With no path the bundled English list is used.
    """
    if path is None:
        text = resources.files("ilpsumm.data").joinpath("stopwords.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip().lower()
        if line:
            words.add(line)
    return frozenset(words)


@lru_cache(maxsize=None)
def default_stopwords() -> frozenset[str]:
    return load_stopwords()


# ---------------------------------------------------------------------------
# domain types

@dataclass(frozen=True)
class Token:
    surface: str
    lower: str
    pos: str | None
    is_stopword: bool

    @property
    def is_punct(self) -> bool:
        return self.pos == PUNCT

    def with_pos(self, pos: str) -> "Token":
        return Token(self.surface, self.lower, pos, self.is_stopword)


def make_token(surface: str, pos: str | None = None,
               stopwords: frozenset[str] | None = None) -> Token:
    if stopwords is None:
        stopwords = default_stopwords()
    lower = surface.casefold()
    if _is_punct_text(surface):
        pos = PUNCT
    return Token(surface, lower, pos, lower in stopwords)


@dataclass(frozen=True)
class Sentence:
    doc_id: str
    index_in_doc: int
    tokens: tuple[Token, ...]
    tf: Mapping[str, int] = field(compare=False)
    vector: SparseVector = field(compare=False)

    @property
    def key(self) -> tuple[str, int]:
        return (self.doc_id, self.index_in_doc)

    @property
    def text(self) -> str:
        return detokenize(t.surface for t in self.tokens)

    def __hash__(self) -> int:
        return hash((self.doc_id, self.index_in_doc, self.tokens))


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: tuple[Sentence, ...]
    tf: Mapping[str, int] = field(compare=False)
    vector: SparseVector = field(compare=False)

    def __hash__(self) -> int:
        return hash(self.doc_id)


@dataclass(frozen=True, eq=False)
class DocumentSet:
    documents: tuple[Document, ...]
    idf: Mapping[str, float]
    concatenated_tf: Mapping[str, int]
    concatenated_vector: SparseVector

    def __len__(self) -> int:
        return len(self.documents)

    def __getitem__(self, doc_id: str) -> Document:
        for doc in self.documents:
            if doc.doc_id == doc_id:
                return doc
        raise KeyError(doc_id)

    @property
    def doc_ids(self) -> list[str]:
        return [d.doc_id for d in self.documents]

    def sentence_counts(self) -> dict[str, int]:
        return {d.doc_id: len(d.sentences) for d in self.documents}

    def vectorize(self, tokens: Iterable[Token]) -> dict[str, float]:
        """TF-IDF vector of an arbitrary token sequence under this set's idf."""
        return vectorize(tokens, self.idf)


# ---------------------------------------------------------------------------
# segmentation and tokenization

# titles are kept together with their period when a name follows
TITLES = frozenset({
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "mt", "gen", "gov", "sen",
    "rep", "rev", "lt", "col", "sgt", "capt", "cmdr", "adm", "maj", "pres",
})
ABBREVIATIONS = TITLES | frozenset({
    "inc", "corp", "ltd", "co", "bros", "vs", "no", "jan", "feb", "mar", "apr",
    "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec", "ft", "fig",
})

_PARAGRAPH_RE = re.compile(r"\n[ \t\r\f\v]*\n\s*")
_TERMINATOR_RE = re.compile(r"[.!?]+[\"'’”)\]]*(?=\s|$)")
_WS_RE = re.compile(r"\s+")


def segment_sentences(raw_text: str) -> list[str]:
    """Split plain text into sentence strings.

    A boundary is a run of ``.``, ``!`` or ``?`` (plus closing quotes or
    brackets) followed by whitespace, or a blank line.  A period does not end
    a sentence after a single-letter initial, a known abbreviation or a dotted
    acronym, nor when the next word starts in lowercase.
    """
    sentences: list[str] = []
    for para in _PARAGRAPH_RE.split(raw_text):
        start = 0
        for m in _TERMINATOR_RE.finditer(para):
            if not _is_boundary(para, m):
                continue
            piece = _WS_RE.sub(" ", para[start:m.end()]).strip()
            if piece:
                sentences.append(piece)
            start = m.end()
        rest = _WS_RE.sub(" ", para[start:]).strip()
        if rest:
            sentences.append(rest)
    return sentences


def _is_boundary(text: str, m: re.Match) -> bool:
    nxt = text[m.end():].lstrip()
    if nxt and nxt[0].islower():
        return False
    if m.group().rstrip("\"'’”)]") != ".":
        return True
    word = re.search(r"(\S+)$", text[:m.start()])
    if word is None:
        return True
    prev = word.group(1).lstrip("\"'(“[")
    if len(prev) == 1 and prev.isalpha():
        return False
    if prev.lower() in ABBREVIATIONS:
        return False
    if re.fullmatch(r"(?:[A-Za-z]\.)+[A-Za-z]", prev):
        return False
    return True


_TOKEN_RE = re.compile(
    r"""
      (?:[A-Za-z]\.){2,}                 # dotted acronyms: U.S., a.m.
    | (?:(?-i:[A-Z])|\b(?:%s))\.(?=\s+\S)     # initials and titles before more text
    | \d+(?:[.,:/]\d+)+                  # 1,000  3.5  10:30
    | ['’](?:s|re|ve|ll|d|m|t)\b        # clitics split from their host
    | \w+(?:-\w+)*                       # words and hyphenated compounds
    | [^\w\s]                            # any other symbol on its own
    """ % "|".join(sorted(TITLES)),
    re.VERBOSE | re.IGNORECASE,
)


def _is_punct_text(s: str) -> bool:
    return not any(ch.isalnum() for ch in s)


def tokenize(sentence_text: str, stopwords: frozenset[str] | None = None) -> list[Token]:
    """Split a sentence into tokens; punctuation tokens come back tagged PUNCT."""
    if stopwords is None:
        stopwords = default_stopwords()
    return [make_token(m.group(), None, stopwords) for m in _TOKEN_RE.finditer(sentence_text)]


# ---------------------------------------------------------------------------
# POS tagging

def _lex(tag: str, words: str) -> dict[str, str]:
    return {w: tag for w in words.split()}


LEXICON: dict[str, str] = {
    **_lex(NOUN, "people government police officials president minister year years "
                 "time day week month news report city country state"),
    **_lex(ADJ, "new old good bad big large small great high low long short first "
                "last other such same own several few many much more most less least "
                "former late early major local national international"),
    **_lex(VERB, "is are was were be been being am has have had having do does did "
                 "done said says say will would can could shall should may might must "
                 "get got make made go went gone take took taken told tell came come "
                 "see saw seen gave give given 're 've 'll 'm 'd"),
    **_lex(ADV, "not n't 't very also too just only now then there here still already "
                "even never ever again soon often however later yesterday today "
                "tomorrow almost nearly about perhaps instead"),
    **_lex(NUM, "zero one two three four five six seven eight nine ten eleven twelve "
                "hundred thousand million billion dozen"),
    **_lex(ADP, "of in on at by for with from to into onto over under after before "
                "during through between against among across along around behind below "
                "beneath beside beyond near since until upon within without toward "
                "towards via despite per amid off out up down"),
    **_lex(CONJ, "and or but nor so yet because although though while whereas if "
                 "unless whether"),
    **_lex(PRON, "i me my mine myself you your yours yourself he him his himself she "
                 "her hers herself it its itself we us our ours ourselves they them "
                 "their theirs themselves who whom whose which what"),
    **_lex(DET, "the a an this that these those each every some any no all both "
                "either neither another"),
    **_lex(OTHER, "'s"),
}

# (suffix, tag, minimum word length), checked in order
SUFFIX_RULES: tuple[tuple[str, str, int], ...] = (
    ("ing", VERB, 5),
    ("ed", VERB, 4),
    ("ly", ADV, 4),
    ("ous", ADJ, 5),
    ("ful", ADJ, 5),
    ("ive", ADJ, 5),
    ("able", ADJ, 6),
    ("ible", ADJ, 6),
    ("less", ADJ, 6),
    ("ical", ADJ, 6),
    ("ish", ADJ, 5),
    ("al", ADJ, 5),
    ("ic", ADJ, 5),
)

_NUMBER_RE = re.compile(r"[\d.,:/]*\d[\d.,:/]*")


def tag_word(token: Token, sentence_initial: bool = False) -> str:
    if token.is_punct:
        return PUNCT
    if token.lower in LEXICON:
        return LEXICON[token.lower]
    if _NUMBER_RE.fullmatch(token.lower):
        return NUM
    if token.surface[:1].isupper() and not sentence_initial:
        return NOUN
    for suffix, tag, min_len in SUFFIX_RULES:
        if len(token.lower) >= min_len and token.lower.endswith(suffix):
            return tag
    return NOUN


def pos_tag(tokens: Sequence[Token]) -> list[Token]:
    """Fill in coarse POS tags with the lexicon + suffix-rule tagger.

    Tokens that already carry a tag (pre-tagged input) keep it.
    """
    out = []
    seen_word = False
    for tok in tokens:
        if tok.pos is None:
            tok = tok.with_pos(tag_word(tok, sentence_initial=not seen_word))
        if not tok.is_punct:
            seen_word = True
        out.append(tok)
    return out


PENN_TO_COARSE = {
    "NN": NOUN, "NNS": NOUN, "NNP": NOUN, "NNPS": NOUN,
    "VB": VERB, "VBD": VERB, "VBG": VERB, "VBN": VERB, "VBP": VERB, "VBZ": VERB, "MD": VERB,
    "JJ": ADJ, "JJR": ADJ, "JJS": ADJ,
    "RB": ADV, "RBR": ADV, "RBS": ADV, "WRB": ADV,
    "PRP": PRON, "PRP$": PRON, "WP": PRON, "WP$": PRON,
    "DT": DET, "PDT": DET, "WDT": DET,
    "IN": ADP, "TO": ADP, "RP": ADP,
    "CC": CONJ, "CD": NUM,
    ".": PUNCT, ",": PUNCT, ":": PUNCT, "``": PUNCT, "''": PUNCT,
    "-LRB-": PUNCT, "-RRB-": PUNCT, "#": PUNCT, "$": PUNCT,
}


def parse_tagged(pairs: Iterable[str], stopwords: frozenset[str] | None = None) -> list[Token]:
    """Build tokens from ``surface_TAG`` strings.

    Tags may be coarse tags or Penn Treebank tags; anything else maps to OTHER.
    """
    tokens = []
    for pair in pairs:
        surface, sep, tag = pair.rpartition("_")
        if not sep or not surface:
            raise ValueError(f"expected surface_TAG, got {pair!r}")
        tag = tag if tag in TAGS else PENN_TO_COARSE.get(tag, OTHER)
        # a symbol-only surface becomes PUNCT whatever tag it came with
        tokens.append(make_token(surface, tag, stopwords))
    return tokens


# ---------------------------------------------------------------------------
# stemming and vectors

_PORTER = PorterStemmer()


@lru_cache(maxsize=65536)
def stem(word: str) -> str:
    return _PORTER.stem(word)


def content_terms(tokens: Iterable[Token]) -> list[str]:
    """Stemmed, case-folded terms of the non-stopword, non-punctuation tokens."""
    return [stem(t.lower) for t in tokens if not t.is_stopword and not t.is_punct]


def term_counts(tokens: Iterable[Token]) -> Counter:
    return Counter(content_terms(tokens))


def tfidf(tf: Mapping[str, float], idf: Mapping[str, float] | None) -> dict[str, float]:
    if idf is None:
        return {w: float(c) for w, c in tf.items() if c}
    return {w: c * idf[w] for w, c in tf.items() if c and idf[w]}


def vectorize(tokens: Iterable[Token], idf: Mapping[str, float] | None = None) -> dict[str, float]:
    """TF-IDF vector of a token sequence; ``idf=None`` means uniform weights.

    Terms absent from ``idf`` get the largest idf in the table (an unseen term
    is as rare as the rarest seen one).
    """
    tf = term_counts(tokens)
    if idf is None:
        return tfidf(tf, None)
    top = max(idf.values(), default=1.0)
    return {w: c * idf.get(w, top) for w, c in tf.items()}


def _norm(v: SparseVector) -> float:
    return math.sqrt(sum(x * x for x in v.values()))


def cosine(a: SparseVector, b: SparseVector) -> float:
    """Cosine similarity of two non-negative sparse vectors, 0 for a zero vector."""
    # sorted shared terms make the sum, and so the result, exactly symmetric
    dot = sum(a[w] * b[w] for w in sorted(a.keys() & b.keys()))
    if dot == 0.0:
        return 0.0
    na, nb = _norm(a), _norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return min(1.0, max(0.0, dot / (na * nb)))


def idf_modified_cosine(tf_a: Mapping[str, float], tf_b: Mapping[str, float],
                        idf: Mapping[str, float] | None = None) -> float:
    """LexRank's similarity: sum tf_a*tf_b*idf^2 over the idf-weighted norms."""
    def weight(w):
        return 1.0 if idf is None else idf[w]

    num = sum(tf_a[w] * tf_b[w] * weight(w) ** 2 for w in sorted(tf_a.keys() & tf_b.keys()))
    if num == 0.0:
        return 0.0
    den_a = math.sqrt(sum((tf_a[w] * weight(w)) ** 2 for w in tf_a))
    den_b = math.sqrt(sum((tf_b[w] * weight(w)) ** 2 for w in tf_b))
    if den_a == 0.0 or den_b == 0.0:
        return 0.0
    return min(1.0, num / (den_a * den_b))


def smoothed_idf(doc_term_sets: Sequence[Iterable[str]]) -> dict[str, float]:
    """``log((1 + n) / (1 + df)) + 1``; stays positive for terms shared by every document."""
    n = len(doc_term_sets)
    df: Counter = Counter()
    for terms in doc_term_sets:
        df.update(set(terms))
    return {w: math.log((1 + n) / (1 + c)) + 1.0 for w, c in df.items()}


# ---------------------------------------------------------------------------
# document sets

def build_document_set(docs: Mapping[str, Sequence[Sequence[Token]]],
                       idf: Mapping[str, float] | None = None,
                       uniform_idf: bool = False) -> DocumentSet:
    """Assemble a DocumentSet from tagged token lists, one list per sentence.

    ``docs`` maps doc_id to its sentences.  The idf table is computed over the
    documents unless given; ``uniform_idf`` sets every weight to 1.
    """
    if len(docs) < 2:
        raise ValueError(f"a document set needs at least 2 documents, got {len(docs)}")
    doc_tfs = {}
    for doc_id, sents in docs.items():
        if not sents:
            raise ValueError(f"document {doc_id!r} has no sentences")
        total: Counter = Counter()
        for toks in sents:
            total.update(term_counts(toks))
        doc_tfs[doc_id] = total
    if uniform_idf:
        idf = {w: 1.0 for tf in doc_tfs.values() for w in tf}
    elif idf is None:
        idf = smoothed_idf([tf.keys() for tf in doc_tfs.values()])
    idf = dict(idf)

    documents = []
    for doc_id, sents in docs.items():
        sentences = []
        for i, toks in enumerate(sents):
            toks = tuple(toks)
            if any(t.pos is None for t in toks):
                toks = tuple(pos_tag(toks))
            tf = term_counts(toks)
            sentences.append(Sentence(doc_id, i, toks, dict(tf), tfidf(tf, idf)))
        tf = doc_tfs[doc_id]
        documents.append(Document(doc_id, tuple(sentences), dict(tf), tfidf(tf, idf)))

    concat: Counter = Counter()
    for tf in doc_tfs.values():
        concat.update(tf)
    return DocumentSet(tuple(documents), idf, dict(concat), tfidf(concat, idf))


def document_set_from_texts(texts: Mapping[str, str],
                            stopwords: frozenset[str] | None = None,
                            **kwargs) -> DocumentSet:
    """Segment, tokenize and tag raw texts, then build the set."""
    docs = {}
    for doc_id, text in texts.items():
        docs[doc_id] = [pos_tag(tokenize(s, stopwords)) for s in segment_sentences(text)]
        docs[doc_id] = [s for s in docs[doc_id] if s]
    return build_document_set(docs, **kwargs)


# ---------------------------------------------------------------------------
# detokenization

_ATTACH_LEFT = re.compile(r"^(?:[.,;:!?%)\]}”’]+|['’](?:s|re|ve|ll|d|m|t)|n't)$", re.I)
_ATTACH_RIGHT = frozenset({"(", "[", "{", "“", "$"})


def detokenize(surfaces: Iterable[str], capitalize: bool = False) -> str:
    """Join surfaces with spaces, gluing punctuation and clitics to the left.

    Opening brackets attach to the following token.  With ``capitalize`` the
    first word is upper-cased if it starts with a letter.
    """
    out = ""
    glue_next = False
    for s in surfaces:
        if not out or glue_next or _ATTACH_LEFT.match(s):
            out += s
        else:
            out += " " + s
        glue_next = s in _ATTACH_RIGHT
    if capitalize:
        # only the leading word; "31-year-old" stays as is
        stripped = out.lstrip("\"'(“[")
        i = len(out) - len(stripped)
        if stripped[:1].isalpha():
            out = out[:i] + out[i].upper() + out[i + 1:]
    return out
