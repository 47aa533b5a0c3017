"""Text normalization pipeline: HTML stripping, contraction expansion,
symbol removal, tokenization, and rule-based lemmatization."""

from __future__ import annotations

import html
import re
from dataclasses import dataclass, field

# Surface form -> expansion. Keys lowercase, expansions apostrophe-free.
DEFAULT_CONTRACTIONS: dict[str, str] = {
    "ain't": "am not",
    "aren't": "are not",
    "can't": "cannot",
    "could've": "could have",
    "couldn't": "could not",
    "didn't": "did not",
    "doesn't": "does not",
    "don't": "do not",
    "hadn't": "had not",
    "hasn't": "has not",
    "haven't": "have not",
    "he'd": "he would",
    "he'll": "he will",
    "he's": "he is",
    "here's": "here is",
    "how's": "how is",
    "i'd": "i would",
    "i'll": "i will",
    "i'm": "i am",
    "i've": "i have",
    "isn't": "is not",
    "it'd": "it would",
    "it'll": "it will",
    "it's": "it is",
    "let's": "let us",
    "mightn't": "might not",
    "might've": "might have",
    "mustn't": "must not",
    "must've": "must have",
    "needn't": "need not",
    "she'd": "she would",
    "she'll": "she will",
    "she's": "she is",
    "should've": "should have",
    "shouldn't": "should not",
    "that'll": "that will",
    "that's": "that is",
    "there'd": "there would",
    "there's": "there is",
    "they'd": "they would",
    "they'll": "they will",
    "they're": "they are",
    "they've": "they have",
    "wasn't": "was not",
    "we'd": "we would",
    "we'll": "we will",
    "we're": "we are",
    "we've": "we have",
    "weren't": "were not",
    "what'll": "what will",
    "what're": "what are",
    "what's": "what is",
    "what've": "what have",
    "where's": "where is",
    "who'd": "who would",
    "who'll": "who will",
    "who're": "who are",
    "who's": "who is",
    "who've": "who have",
    "won't": "will not",
    "would've": "would have",
    "wouldn't": "would not",
    "you'd": "you would",
    "you'll": "you will",
    "you're": "you are",
    "you've": "you have",
}

# Classic English stopword list (~170 terms), lowercase, apostrophe-free.
DEFAULT_STOPWORDS: frozenset[str] = frozenset(
    """a about above after again against all am an and any are as at be because
    been before being below between both but by cannot could did do does doing
    down during each few for from further had has have having he her here hers
    herself him himself his how i if in into is it its itself just me more most
    my myself no nor not now of off on once only or other our ours ourselves
    out over own same she should so some such than that the their theirs them
    themselves then there these they this those through to too under until up
    very was we were what when where which while who whom why will with would
    you your yours yourself yourselves""".split()
)

_TAG_RE = re.compile(r"<[^<>]*>")
_WORD_RE = re.compile(r"[a-z0-9]+")
_SENT_SPLIT_RE = re.compile(r"[.!?]+(?:\s+|$)")


@dataclass(frozen=True)
class TokenizedDoc:
    """A preprocessed document: lemmatized tokens plus sentence spans.

    Sentence spans are (start, end) token-index ranges, end exclusive;
    they are disjoint, ordered, and cover the token list.
    """

    doc_id: str
    tokens: tuple[str, ...]
    sentences: tuple[tuple[int, int], ...] = field(default=())


def strip_html(raw: str) -> str:
    """Remove HTML tags (each becomes a single space) and decode entities.

    A ``<`` with no matching ``>`` is kept as literal text.
    """
    text = _TAG_RE.sub(" ", raw)
    text = html.unescape(text).replace("\xa0", " ")
    return re.sub(r" {2,}", " ", text).strip()


def expand_contractions(t: str, table: dict[str, str] | None = None) -> str:
    """Replace whole-word contractions (case-insensitive) with expansions."""
    if table is None:
        table = DEFAULT_CONTRACTIONS
    if not table:
        return t
    pattern = re.compile(
        r"\b(" + "|".join(re.escape(k) for k in sorted(table, key=len, reverse=True)) + r")\b",
        re.IGNORECASE,
    )
    return pattern.sub(lambda m: table[m.group(1).lower()], t)


def split_sentences(t: str) -> list[str]:
    """Split raw text into sentences on ``.`` ``!`` ``?`` followed by
    whitespace or end of text."""
    parts = _SENT_SPLIT_RE.split(t)
    return [p for p in parts if p and not p.isspace()]


def normalize_text(t: str) -> str:
    """Lowercase, replace punctuation/symbols with spaces, collapse whitespace."""
    return " ".join(_WORD_RE.findall(t.lower()))


def tokenize(t: str) -> list[str]:
    """Split normalized text into terms (maximal runs of letters/digits)."""
    return t.split() if t else []


_IRREGULAR_LEMMAS = {
    "children": "child",
    "men": "man",
    "women": "woman",
    "people": "person",
    "feet": "foot",
    "teeth": "tooth",
    "mice": "mouse",
    "geese": "goose",
    "data": "data",
    "analyses": "analysis",
    "theses": "thesis",
    "criteria": "criterion",
    "went": "go",
    "taught": "teach",
    "built": "build",
    "wrote": "write",
    "written": "write",
    "made": "make",
    "took": "take",
    "taken": "take",
}

_UNDOUBLE = set("bdgmnprt")
_VOWELS = set("aeiou")


def _strip_participle(word: str, suffix_len: int) -> str:
    stem = word[:-suffix_len]
    if len(stem) < 3 or not any(c in _VOWELS for c in stem):
        return word
    if len(stem) >= 4 and stem[-1] == stem[-2] and stem[-1] in _UNDOUBLE:
        return stem[:-1]
    if stem[-1] not in _VOWELS and stem[-1] not in "wxy" and stem[-2] in _VOWELS and stem[-3] not in _VOWELS:
        return stem + "e"
    return stem


def _lemmatize_once(word: str) -> str:
    if word in _IRREGULAR_LEMMAS:
        return _IRREGULAR_LEMMAS[word]
    if word.endswith("ies") and len(word) >= 5:
        return word[:-3] + "y"
    if word.endswith(("sses", "ches", "shes", "xes", "zes")) and len(word) >= 5:
        return word[:-2]
    if word.endswith("es") and len(word) >= 4 and word[-3] not in _VOWELS:
        return word[:-1]
    if word.endswith("s") and len(word) >= 4 and not word.endswith(("ss", "us", "is")):
        return word[:-1]
    if word.endswith("ing") and len(word) >= 6:
        return _strip_participle(word, 3)
    if word.endswith("ied") and len(word) >= 5:
        return word[:-3] + "y"
    if word.endswith("eed") and len(word) >= 5:
        return word[:-1]
    if word.endswith("ed") and len(word) >= 5:
        return _strip_participle(word, 2)
    return word


def lemmatize(term: str) -> str:
    """Reduce a lowercase token to its base form via a fixed rule cascade.

    Iterates the cascade to a fixed point, so lemmatize is idempotent.
    """
    current = term
    while True:
        reduced = _lemmatize_once(current)
        if reduced == current:
            return current
        current = reduced


def preprocess(doc_id: str, raw: str, table: dict[str, str] | None = None) -> TokenizedDoc:
    """Full pipeline: strip HTML, expand contractions, split sentences,
    normalize, tokenize, and lemmatize each token."""
    cleaned = expand_contractions(strip_html(raw), table)
    tokens: list[str] = []
    sentences: list[tuple[int, int]] = []
    for sentence in split_sentences(cleaned):
        terms = [lemmatize(tok) for tok in tokenize(normalize_text(sentence))]
        if not terms:
            continue
        start = len(tokens)
        tokens.extend(terms)
        sentences.append((start, len(tokens)))
    return TokenizedDoc(doc_id=doc_id, tokens=tuple(tokens), sentences=tuple(sentences))


def load_contractions(path: str) -> dict[str, str]:
    """Load a contractions table from a TSV file (surface<TAB>expansion)."""
    table = dict(DEFAULT_CONTRACTIONS)
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or "\t" not in line:
                continue
            surface, expansion = line.split("\t", 1)
            table[surface.strip().lower()] = expansion.strip()
    return table


def load_stopwords(path: str) -> frozenset[str]:
    """Load a stopword list from a file, one term per line."""
    with open(path, encoding="utf-8") as fh:
        terms = {line.strip().lower() for line in fh if line.strip()}
    if not terms:
        raise ValueError(f"stopword file {path!r} is empty")
    return frozenset(terms)
