"""Helmholtz-principle meaningfulness of concepts.

For a concept seen ``m`` times in a paragraph and ``k`` times in the whole
document, the number of false alarms is

    NFA = C(k, m) / N**(m - 1),    N = floor(L / B)

where ``L`` and ``B`` are the concept occurrence totals of the document and
of the paragraph.  Meaning is ``-(1/m) * log10(NFA)``; a concept's document
meaning is its maximum over paragraphs, and the concepts whose document
meaning is strictly greater than epsilon are the meaningful set.

Everything is evaluated in base-10 log space so large documents never
overflow.
"""
from __future__ import annotations

import logging
import math
from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from numbers import Integral

from .corpus import Document
from .errors import DomainError, EmptyConceptSpace

logger = logging.getLogger(__name__)

_LN10 = math.log(10.0)
# below this many factors a compensated log-sum is used instead of lgamma
_DIRECT_SUM_LIMIT = 512


def _check_count(name, value):
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value}")


def log_binomial(k: int, m: int) -> float:
    """log10 of the binomial coefficient C(k, m), computed without factorials."""
    _check_count("k", k)
    _check_count("m", m)
    if m > k:
        raise DomainError(f"m={m} exceeds k={k}")
    j = min(m, k - m)
    if j == 0:
        return 0.0
    if j <= _DIRECT_SUM_LIMIT:
        # C(k, j) = prod_{i=1..j} (k - j + i) / i
        return math.fsum(math.log10(k - j + i) - math.log10(i) for i in range(1, j + 1))
    return (math.lgamma(k + 1) - math.lgamma(m + 1) - math.lgamma(k - m + 1)) / _LN10


def nfa_log10(k: int, m: int, N: int) -> float:
    """log10 of the number of false alarms for ``m`` of ``k`` occurrences in one paragraph."""
    _check_count("N", N)
    _check_count("m", m)
    if m < 1:
        raise DomainError("m must be at least 1")
    if N < 1:
        raise DomainError("N must be at least 1")
    return log_binomial(k, m) - (m - 1) * math.log10(N)


def meaning_in_paragraph(k: int, m: int, N: int) -> float:
    value = -nfa_log10(k, m, N) / m
    return value + 0.0  # normalise -0.0


@dataclass(frozen=True)
class ParagraphMeaning:
    paragraph: int
    m: int
    nfa_log10: float
    meaning: float


@dataclass(frozen=True)
class MeaningEntry:
    concept_id: str
    k: int
    per_paragraph: tuple
    document_meaning: float
    label: str = ""


def _rank_key(entry: MeaningEntry):
    return (-entry.document_meaning, entry.concept_id)


@dataclass(frozen=True)
class MeaningTable:
    entries: dict
    epsilon: float
    meaningful: tuple
    empty_concept_space: bool = False
    total_concepts: int = field(default=0, compare=False)

    def meaningful_set(self, epsilon=None) -> frozenset:
        if epsilon is None:
            return frozenset(self.meaningful)
        return frozenset(c for c, e in self.entries.items() if e.document_meaning > epsilon)

    def with_epsilon(self, epsilon: float) -> "MeaningTable":
        """Re-threshold without recomputing any NFA value."""
        return replace(self, epsilon=epsilon, meaningful=_threshold(self.entries, epsilon))

    def ranked(self) -> list:
        return sorted(self.entries.values(), key=_rank_key)

    def to_json(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "concepts": [
                {
                    "id": e.concept_id,
                    "label": e.label,
                    "k": e.k,
                    "document_meaning": e.document_meaning,
                    "per_paragraph": [
                        {"paragraph": p.paragraph, "m": p.m,
                         "nfa_log10": p.nfa_log10, "meaning": p.meaning}
                        for p in e.per_paragraph
                    ],
                }
                for e in self.ranked()
            ],
            "meaningful": list(self.meaningful),
        }


def _threshold(entries, epsilon) -> tuple:
    if not math.isfinite(epsilon):
        raise DomainError(f"epsilon must be finite, got {epsilon}")
    return tuple(e.concept_id for e in sorted(entries.values(), key=_rank_key)
                 if e.document_meaning > epsilon)


def _concept_entry(concept_id, k, paragraph_counts, N_by_paragraph, label) -> MeaningEntry:
    per_paragraph = []
    for j in sorted(paragraph_counts):
        m = paragraph_counts[j]
        nfa = nfa_log10(k, m, N_by_paragraph[j])
        per_paragraph.append(ParagraphMeaning(j, m, nfa, -nfa / m + 0.0))
    return MeaningEntry(concept_id, k, tuple(per_paragraph),
                        max(p.meaning for p in per_paragraph), label)


def build_meaning_table(doc: Document, epsilon: float, *, jobs: int = 1,
                        strict: bool = False) -> MeaningTable:
    """Score every concept of ``doc`` and threshold at ``epsilon``.

    A document without any concept yields an empty table with
    ``empty_concept_space`` set, or raises :class:`EmptyConceptSpace` when
    ``strict`` is true.  ``jobs > 1`` evaluates concepts on a thread pool;
    the result is identical to the sequential one.
    """
    L = doc.total_concepts
    if L == 0:
        if strict:
            raise EmptyConceptSpace(f"document {doc.id!r} has no concepts")
        logger.warning("document %r has no concepts; meaning table is empty", doc.id)
        _threshold({}, epsilon)
        return MeaningTable({}, epsilon, (), empty_concept_space=True, total_concepts=0)

    k_counts = Counter()
    by_paragraph = defaultdict(Counter)
    N_by_paragraph = {}
    for p in doc.paragraphs:
        B = doc.paragraph_concepts(p.index)
        if B == 0:
            continue
        N_by_paragraph[p.index] = max(1, L // B)
        for i in p.sentence_indices:
            for cid in doc.sentences[i].concept_ids:
                k_counts[cid] += 1
                by_paragraph[cid][p.index] += 1

    labels = {cid: c.label for cid, c in doc.concepts().items()}
    ids = sorted(k_counts)
    args = [(cid, k_counts[cid], by_paragraph[cid], N_by_paragraph, labels.get(cid, ""))
            for cid in ids]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            computed = list(pool.map(lambda a: _concept_entry(*a), args))
    else:
        computed = [_concept_entry(*a) for a in args]

    entries = {e.concept_id: e for e in computed}
    return MeaningTable(entries, epsilon, _threshold(entries, epsilon), total_concepts=L)
