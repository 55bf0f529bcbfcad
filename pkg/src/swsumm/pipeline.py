"""End-to-end summarization of one document."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import (DEFAULT_GENERIC_TYPES, DEFAULT_STOPWORDS, Document, filter_generic_types,
                     load_annotated, load_plain_text, surrogate_annotate)
from .graph import SentenceGraph, Summary, build_graph, degree_ranking, select_summary
from .meaning import MeaningTable, build_meaning_table

logger = logging.getLogger(__name__)


@dataclass
class RunConfig:
    # defaults are the operating point used for all reported experiments
    epsilon: float = 0.3
    compression_rate: float = 0.3
    generic_types: list = field(default_factory=lambda: sorted(DEFAULT_GENERIC_TYPES))
    surrogate: bool = False
    stem: bool = True
    remove_stopwords: bool = False
    aggregate: str = "recall"
    jobs: int = 1


@dataclass(frozen=True)
class SummaryRun:
    document: Document
    table: MeaningTable
    graph: SentenceGraph
    summary: Summary

    @property
    def text(self) -> str:
        return self.summary.text(self.document)


def read_document(path, surrogate: bool = False, generic_types=DEFAULT_GENERIC_TYPES,
                  stopwords=DEFAULT_STOPWORDS) -> Document:
    """Load ``.json`` as annotated, anything else as plain text, then filter."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        doc = load_annotated(text, default_id=path.stem)
    else:
        doc = load_plain_text(text, doc_id=path.stem)
    if surrogate:
        doc = surrogate_annotate(doc, stopwords)
    elif doc.total_concepts == 0:
        logger.warning("%s carries no concepts; use --surrogate for plain text", path)
    return filter_generic_types(doc, generic_types)


def summarize_table(doc: Document, table: MeaningTable, rate: float) -> SummaryRun:
    graph = build_graph(doc, table.meaningful)
    summary = select_summary(degree_ranking(graph), doc.n, rate)
    return SummaryRun(doc, table, graph, summary)


def summarize(doc: Document, epsilon: float = 0.3, rate: float = 0.3, jobs: int = 1) -> SummaryRun:
    return summarize_table(doc, build_meaning_table(doc, epsilon, jobs=jobs), rate)
