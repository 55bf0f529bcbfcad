"""Document model and ingestion.

A document is an ordered list of paragraphs, each a contiguous run of
sentences, and every sentence carries a *set* of concepts.  Concepts come
either from an annotated JSON file (e.g. converted MetaMap output, where ids
are UMLS CUIs) or from :func:`surrogate_annotate`, which turns content words
into pseudo-concepts so the pipeline can run on raw text.

All occurrence counts used downstream are sentence-level: a concept occurs
at most once per sentence.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from .errors import DuplicateSentenceIndex, EmptyDocument, SchemaError

# Semantic types too broad to signal a topic; removed before scoring.
DEFAULT_GENERIC_TYPES = frozenset({
    "Temporal Concept",
    "Spatial Concept",
    "Qualitative Concept",
    "Quantitative Concept",
    "Language",
    "Mental Process",
    "Intellectual Product",
    "Idea or Concept",
    "Functional Concept",
})

DEFAULT_STOPWORDS = frozenset("""
a about above after again against all also am an and any are as at be because
been before being below between both but by can could did do does doing down
during each few for from further had has have having he her here hers herself
him himself his how however i if in into is it its itself just may me might
more most must my myself no nor not now of off on once only or other our ours
ourselves out over own same she should so some such than that the their theirs
them themselves then there these they this those through thus to too under
until up upon very was we were what when where which while who whom why will
with within without would you your yours yourself yourselves
""".split())


@dataclass(frozen=True)
class Concept:
    # identity is the id alone; label and semantic type are descriptive
    id: str
    label: str = field(default="", compare=False)
    semantic_type: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValueError("concept id must be a non-empty string")


@dataclass(frozen=True)
class Sentence:
    index: int
    text: str
    concepts: frozenset = frozenset()

    @property
    def concept_ids(self) -> frozenset:
        return frozenset(c.id for c in self.concepts)


@dataclass(frozen=True)
class Paragraph:
    index: int
    sentence_indices: range

    def __len__(self):
        return len(self.sentence_indices)


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple
    paragraphs: tuple

    def __post_init__(self):
        if not self.sentences or not self.paragraphs:
            raise EmptyDocument(f"document {self.id!r} has no sentences")
        for i, s in enumerate(self.sentences):
            if s.index != i:
                raise SchemaError(f"sentence at position {i} has index {s.index}")
        expected = 0
        for j, p in enumerate(self.paragraphs):
            r = p.sentence_indices
            if p.index != j or r.step != 1 or r.start != expected or len(r) == 0:
                raise SchemaError(f"paragraph {j} does not continue the sentence partition")
            expected = r.stop
        if expected != len(self.sentences):
            raise SchemaError("paragraphs do not cover every sentence")

    @property
    def n(self) -> int:
        return len(self.sentences)

    @property
    def total_concepts(self) -> int:
        """Concept occurrences in the whole document (one per sentence)."""
        return sum(len(s.concepts) for s in self.sentences)

    def paragraph_concepts(self, j: int) -> int:
        return sum(len(self.sentences[i].concepts) for i in self.paragraphs[j].sentence_indices)

    def paragraph_of(self, sentence_index: int) -> int:
        for p in self.paragraphs:
            if sentence_index in p.sentence_indices:
                return p.index
        raise IndexError(sentence_index)

    def concepts(self) -> dict:
        """Map concept id -> a representative Concept (first occurrence)."""
        out = {}
        for s in self.sentences:
            for c in sorted(s.concepts, key=lambda c: c.id):
                out.setdefault(c.id, c)
        return out

    def with_sentence_concepts(self, concept_sets: Iterable) -> "Document":
        sentences = tuple(replace(s, concepts=frozenset(cs))
                          for s, cs in zip(self.sentences, concept_sets, strict=True))
        return replace(self, sentences=sentences)


def build_document(doc_id: str, paragraphs: list) -> Document:
    """Assemble a Document from ``[[(text, concepts), ...], ...]``."""
    sentences, paras = [], []
    for j, para in enumerate(paragraphs):
        start = len(sentences)
        for text, concepts in para:
            sentences.append(Sentence(len(sentences), text, frozenset(concepts)))
        paras.append(Paragraph(j, range(start, len(sentences))))
    if not sentences:
        raise EmptyDocument(f"document {doc_id!r} has no sentences")
    return Document(doc_id, tuple(sentences), tuple(paras))


_PARAGRAPH_BREAK = re.compile(r"\n[ \t]*(?:\n[ \t]*)+")
_SENTENCE_BREAK = re.compile(r"(?<=[.?!])\s+(?=[A-Z])")


def split_sentences(paragraph: str) -> list:
    """Split on ``.?!`` followed by whitespace and an uppercase letter.

    Abbreviations such as "e.g. The" split wrongly; that is accepted.
    """
    flat = " ".join(paragraph.split())
    if not flat:
        return []
    return [s for s in _SENTENCE_BREAK.split(flat) if s]


def load_plain_text(text: str, doc_id: str = "doc") -> Document:
    if not text or not text.strip():
        raise EmptyDocument("input text is empty")
    paragraphs = []
    for block in _PARAGRAPH_BREAK.split(text.strip()):
        sents = split_sentences(block)
        if sents:
            paragraphs.append([(s, ()) for s in sents])
    if not paragraphs:
        raise EmptyDocument("no sentence survived segmentation")
    return build_document(doc_id, paragraphs)


def _require(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise SchemaError(f"{where}: field {key!r} has wrong type {type(value).__name__}")
    return value


def _parse_concept(raw, where) -> Concept:
    cid = _require(raw, "id", str, where)
    if not cid:
        raise SchemaError(f"{where}: empty concept id")
    label = raw.get("label") or ""
    semtype = raw.get("semantic_type", raw.get("semtype"))
    if semtype is not None and not isinstance(semtype, str):
        raise SchemaError(f"{where}: semantic_type must be a string")
    return Concept(cid, str(label), semtype)


def parse_annotated(data: dict, default_id: str = "doc") -> Document:
    """Build a Document from an already-decoded annotated JSON object."""
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    doc_id = data.get("id", default_id)
    if not isinstance(doc_id, str):
        raise SchemaError("document id must be a string")
    raw_paragraphs = _require(data, "paragraphs", list, "document")

    paragraphs = []
    seen_indices = set()
    position = 0
    for j, raw_p in enumerate(raw_paragraphs):
        raw_sentences = _require(raw_p, "sentences", list, f"paragraph {j}")
        if not raw_sentences:
            raise SchemaError(f"paragraph {j} has no sentences")
        para = []
        for raw_s in raw_sentences:
            where = f"sentence {position}"
            text = _require(raw_s, "text", str, where)
            # explicit indices are optional; when present they must match the order
            if "index" in raw_s:
                idx = raw_s["index"]
                if idx in seen_indices:
                    raise DuplicateSentenceIndex(f"sentence index {idx} appears twice")
                seen_indices.add(idx)
                if idx != position:
                    raise SchemaError(f"{where}: explicit index {idx} is out of order")
            raw_concepts = raw_s.get("concepts", [])
            if not isinstance(raw_concepts, list):
                raise SchemaError(f"{where}: concepts must be a list")
            concepts = {}
            for c in (_parse_concept(rc, where) for rc in raw_concepts):
                concepts.setdefault(c.id, c)
            para.append((text, concepts.values()))
            position += 1
        paragraphs.append(para)
    if position == 0:
        raise SchemaError("document has no sentences")
    return build_document(doc_id, paragraphs)


def load_annotated(text: str, default_id: str = "doc") -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return parse_annotated(data, default_id)


def dump_annotated(doc: Document) -> str:
    """Serialize to the annotated-document JSON format (inverse of load_annotated)."""
    paragraphs = []
    for p in doc.paragraphs:
        sentences = []
        for i in p.sentence_indices:
            s = doc.sentences[i]
            concepts = []
            for c in sorted(s.concepts, key=lambda c: c.id):
                entry = {"id": c.id}
                if c.label:
                    entry["label"] = c.label
                if c.semantic_type is not None:
                    entry["semantic_type"] = c.semantic_type
                concepts.append(entry)
            sentences.append({"text": s.text, "concepts": concepts})
        paragraphs.append({"sentences": sentences})
    return json.dumps({"id": doc.id, "paragraphs": paragraphs}, indent=1, ensure_ascii=False)


def filter_generic_types(doc: Document, generic_types=DEFAULT_GENERIC_TYPES) -> Document:
    generic_types = frozenset(generic_types)
    if not generic_types:
        return doc
    return doc.with_sentence_concepts(
        [c for c in s.concepts if c.semantic_type not in generic_types]
        for s in doc.sentences
    )


_WORD = re.compile(r"[^\W\d_]+")


def surrogate_annotate(doc: Document, stopwords=DEFAULT_STOPWORDS) -> Document:
    """Use each distinct content word (>= 3 letters, not a stopword) as a concept."""
    stopwords = frozenset(w.lower() for w in stopwords)
    return doc.with_sentence_concepts(
        (Concept(tok) for tok in {t for t in _WORD.findall(s.text.lower())
                                  if len(t) >= 3 and t not in stopwords})
        for s in doc.sentences
    )
