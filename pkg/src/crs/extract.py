"""Keyword and skill extraction: TF-IDF weighting, RAKE phrase scoring,
TextRank sentence ranking, and taxonomy-based skill matching."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .ingest import SkillTaxonomy
from .textpipe import DEFAULT_STOPWORDS, TokenizedDoc, lemmatize, normalize_text, tokenize

# Sparse term -> weight map; no zero entries stored.
WeightedTermVector = dict[str, float]


class EmptyDocumentError(ValueError):
    pass


class UnseenTermError(KeyError):
    """Term absent from the corpus statistics; callers drop the term."""


@dataclass(frozen=True)
class CorpusStats:
    """Document count and per-term document frequencies for a corpus."""

    n_docs: int
    doc_freq: dict[str, int]

    @staticmethod
    def from_docs(docs: list[TokenizedDoc]) -> "CorpusStats":
        if not docs:
            raise EmptyDocumentError("cannot build corpus stats from an empty corpus")
        doc_freq: Counter[str] = Counter()
        for doc in docs:
            doc_freq.update(set(doc.tokens))
        return CorpusStats(n_docs=len(docs), doc_freq=dict(doc_freq))


@dataclass(frozen=True)
class RakePhrase:
    tokens: tuple[str, ...]
    score: float


@dataclass(frozen=True)
class SkillSet:
    """Canonical skill ids with the surface spans that matched them."""

    skills: frozenset[str] = frozenset()
    evidence: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __or__(self, other: "SkillSet") -> "SkillSet":
        evidence = {k: v for k, v in self.evidence.items()}
        for skill_id, spans in other.evidence.items():
            merged = dict.fromkeys(evidence.get(skill_id, ()) + spans)
            evidence[skill_id] = tuple(merged)
        return SkillSet(skills=self.skills | other.skills, evidence=evidence)


def term_frequency(t: str, d: TokenizedDoc) -> float:
    """Occurrences of t in d divided by total tokens of d."""
    if not d.tokens:
        raise EmptyDocumentError(f"document {d.doc_id!r} has no tokens")
    return d.tokens.count(t) / len(d.tokens)


def inverse_document_frequency(t: str, stats: CorpusStats) -> float:
    """Natural log of N over the number of documents containing t."""
    df = stats.doc_freq.get(t)
    if df is None:
        raise UnseenTermError(t)
    return math.log(stats.n_docs / df)


def tfidf_vector(
    d: TokenizedDoc,
    stats: CorpusStats,
    stops: frozenset[str] = DEFAULT_STOPWORDS,
) -> WeightedTermVector:
    """TF-IDF weight per distinct non-stopword term of d.

    Terms unseen in the corpus stats and zero weights are dropped.
    """
    if not d.tokens:
        raise EmptyDocumentError(f"document {d.doc_id!r} has no tokens")
    counts = Counter(d.tokens)
    total = len(d.tokens)
    vector: WeightedTermVector = {}
    for term, count in counts.items():
        if term in stops:
            continue
        df = stats.doc_freq.get(term)
        if df is None:
            continue
        weight = (count / total) * math.log(stats.n_docs / df)
        if weight != 0.0:
            vector[term] = weight
    return vector


def _rake_candidates(
    d: TokenizedDoc, stops: frozenset[str], max_phrase_len: int
) -> list[tuple[str, ...]]:
    candidates: list[tuple[str, ...]] = []
    sentences = d.sentences if d.sentences else ((0, len(d.tokens)),)
    for start, end in sentences:
        run: list[str] = []
        for token in d.tokens[start:end]:
            if token in stops:
                if run:
                    candidates.append(tuple(run[:max_phrase_len]))
                    run = []
            else:
                run.append(token)
        if run:
            candidates.append(tuple(run[:max_phrase_len]))
    return candidates


def rake_extract(
    d: TokenizedDoc,
    stops: frozenset[str] = DEFAULT_STOPWORDS,
    max_phrase_len: int = 4,
) -> list[RakePhrase]:
    """RAKE keyword phrases, scored by summed member degree/frequency ratios,
    sorted by score descending."""
    candidates = _rake_candidates(d, stops, max_phrase_len)
    if not candidates:
        return []
    degree: Counter[str] = Counter()
    freq: Counter[str] = Counter()
    for phrase in candidates:
        for word in phrase:
            degree[word] += len(phrase)
            freq[word] += 1
    word_score = {w: degree[w] / freq[w] for w in freq}
    seen: dict[tuple[str, ...], float] = {}
    for phrase in candidates:
        if phrase not in seen:
            seen[phrase] = sum(word_score[w] for w in phrase)
    phrases = [RakePhrase(tokens=toks, score=score) for toks, score in seen.items()]
    phrases.sort(key=lambda p: (-p.score, p.tokens))
    return phrases


def _sentence_terms(d: TokenizedDoc) -> list[tuple[set[str], int]]:
    return [(set(d.tokens[s:e]), e - s) for s, e in d.sentences]


def textrank_sentences(
    d: TokenizedDoc,
    damping: float = 0.85,
    eps: float = 1e-6,
    max_iter: int = 100,
) -> list[tuple[int, float]]:
    """Rank sentences by damped power iteration over a term-overlap graph.

    Edge weight between sentences i and j is the shared distinct-term count
    divided by ln(1+len_i) + ln(1+len_j); zero-weight edges are omitted.
    """
    if not d.sentences:
        raise EmptyDocumentError(f"document {d.doc_id!r} has no sentences")
    sents = _sentence_terms(d)
    n = len(sents)
    weights = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            shared = len(sents[i][0] & sents[j][0])
            if shared:
                w = shared / (math.log(1 + sents[i][1]) + math.log(1 + sents[j][1]))
                weights[i][j] = weights[j][i] = w
    out_sum = [sum(row) for row in weights]
    scores = [1.0] * n
    for _ in range(max_iter):
        new_scores = []
        for i in range(n):
            rank = sum(
                weights[j][i] / out_sum[j] * scores[j]
                for j in range(n)
                if weights[j][i] > 0.0
            )
            new_scores.append((1.0 - damping) + damping * rank)
        delta = max(abs(a - b) for a, b in zip(new_scores, scores))
        scores = new_scores
        if delta < eps:
            break
    ranked = [(i, scores[i]) for i in range(n)]
    ranked.sort(key=lambda item: (-item[1], item[0]))
    return ranked


def _taxonomy_token_index(tax: SkillTaxonomy) -> dict[tuple[str, ...], str]:
    """Map lemmatized surface-token tuples to skill ids.

    Surfaces go through the same normalization as documents so matches
    line up token-for-token.
    """
    index: dict[tuple[str, ...], str] = {}
    for surface, skill_id in tax.surfaces().items():
        tokens = tuple(lemmatize(tok) for tok in tokenize(normalize_text(surface)))
        if tokens and tokens not in index:
            index[tokens] = skill_id
    return index


def extract_skills(d: TokenizedDoc, tax: SkillTaxonomy) -> SkillSet:
    """Greedy longest-match scan of the token stream against taxonomy
    names and aliases."""
    index = _taxonomy_token_index(tax)
    if not index or not d.tokens:
        return SkillSet()
    max_len = max(len(k) for k in index)
    skills: set[str] = set()
    evidence: dict[str, list[str]] = {}
    i = 0
    n = len(d.tokens)
    while i < n:
        matched = False
        for length in range(min(max_len, n - i), 0, -1):
            span = tuple(d.tokens[i : i + length])
            skill_id = index.get(span)
            if skill_id is not None:
                skills.add(skill_id)
                evidence.setdefault(skill_id, [])
                surface = " ".join(span)
                if surface not in evidence[skill_id]:
                    evidence[skill_id].append(surface)
                i += length
                matched = True
                break
        if not matched:
            i += 1
    return SkillSet(
        skills=frozenset(skills),
        evidence={k: tuple(v) for k, v in evidence.items()},
    )
