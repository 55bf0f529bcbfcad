"""ROUGE-2 and ROUGE-SU4 against a single model summary.

Counting is clipped: a unit matches at most ``min(candidate count,
reference count)`` times.  ROUGE-SU counts unigrams plus ordered skip
pairs ``(t_i, t_j)`` with ``i < j <= i + skip_distance``; pairs never cross
a sentence boundary when the input is given as a list of sentences.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from nltk.stem.porter import PorterStemmer

from .corpus import DEFAULT_STOPWORDS, split_sentences
from .errors import EmptyInput

ROUGE2, ROUGE_SU4 = "rouge2", "rouge_su4"

_SPLIT = re.compile(r"[\W_]+")
_stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


@lru_cache(maxsize=65536)
def _stem(token: str) -> str:
    return _stemmer.stem(token)


def normalize_tokens(text: str, stem: bool = True, stopwords=None) -> list:
    tokens = [t for t in _SPLIT.split(text.lower()) if t]
    if stopwords:
        tokens = [t for t in tokens if t not in stopwords]
    if stem:
        tokens = [_stem(t) for t in tokens]
    return tokens


def normalize_sentences(text: str, stem: bool = True, stopwords=None) -> list:
    """Tokenize sentence by sentence; lines and sentence punctuation both split."""
    out = []
    for line in text.splitlines():
        for sent in split_sentences(line):
            toks = normalize_tokens(sent, stem, stopwords)
            if toks:
                out.append(toks)
    return out


@dataclass(frozen=True)
class RougeScore:
    metric: str
    recall: float
    precision: float
    f1: float
    match_count: int
    candidate_count: int
    reference_count: int

    @property
    def empty_reference(self) -> bool:
        return self.reference_count == 0

    def get(self, aggregate: str) -> float:
        return {"recall": self.recall, "precision": self.precision, "f1": self.f1}[aggregate]


def _score(metric, cand: Counter, ref: Counter) -> RougeScore:
    matches = sum(min(c, ref[u]) for u, c in cand.items() if u in ref)
    n_cand = sum(cand.values())
    n_ref = sum(ref.values())
    recall = matches / n_ref if n_ref else 0.0
    precision = matches / n_cand if n_cand else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return RougeScore(metric, recall, precision, f1, matches, n_cand, n_ref)


def _as_sentences(tokens) -> list:
    tokens = list(tokens)
    if tokens and isinstance(tokens[0], str):
        return [tokens]
    return [list(s) for s in tokens]


def ngram_counts(tokens, n: int) -> Counter:
    flat = [t for s in _as_sentences(tokens) for t in s]
    return Counter(tuple(flat[i:i + n]) for i in range(len(flat) - n + 1))


def skip_bigram_counts(tokens, skip_distance: int = 4, unigrams: bool = True) -> Counter:
    counts = Counter()
    for sent in _as_sentences(tokens):
        for i, a in enumerate(sent):
            if unigrams:
                counts[(a,)] += 1
            for b in sent[i + 1:i + 1 + skip_distance]:
                counts[(a, b)] += 1
    return counts


def rouge_n(candidate, reference, n: int = 2) -> RougeScore:
    """Clipped n-gram overlap; sentence lists are concatenated first."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _score(f"rouge{n}", ngram_counts(candidate, n), ngram_counts(reference, n))


def rouge_su(candidate, reference, skip_distance: int = 4) -> RougeScore:
    if skip_distance < 1:
        raise ValueError("skip_distance must be >= 1")
    metric = ROUGE_SU4 if skip_distance == 4 else f"rouge_su{skip_distance}"
    return _score(metric, skip_bigram_counts(candidate, skip_distance),
                  skip_bigram_counts(reference, skip_distance))


def score_summary(candidate: str, reference: str, stem: bool = True,
                  remove_stopwords: bool = False) -> tuple:
    """Return ``(ROUGE-2, ROUGE-SU4)`` for a system summary against a model summary."""
    if not candidate.strip() or not reference.strip():
        raise EmptyInput("candidate and reference must both be non-empty")
    stop = DEFAULT_STOPWORDS if remove_stopwords else None
    cand = normalize_sentences(candidate, stem, stop)
    ref = normalize_sentences(reference, stem, stop)
    return rouge_n(cand, ref, 2), rouge_su(cand, ref, 4)
