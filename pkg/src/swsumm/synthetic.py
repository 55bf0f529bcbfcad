"""Synthetic concept-annotated documents with a controllable graph regime.

Three tiers of concepts, chosen so that their meaningfulness is well
separated (with ``N = floor(L/B)`` close to the paragraph count):

* topic concepts: a run of consecutive sentences inside one paragraph.
  They are the most meaningful and give dense local clusters.
* shortcut concepts: three sentences of one paragraph plus one sentence of
  another paragraph.  Medium meaning; they add long-range edges.
* background concepts: two sentences of one paragraph plus one sentence
  elsewhere.  Low but positive meaning; many of them make the graph dense
  and random-looking once the threshold admits them.

Sweeping epsilon from above the topic meanings down to zero therefore
moves the sentence graph from a path (regular) through a clustered graph
with shortcuts (small world) to a dense random-like graph.
"""
from __future__ import annotations

import random

from .corpus import Concept, Document, build_document


def clustered_document(n_paragraphs: int = 10, paragraph_size: int = 10,
                       topic_span: int = 4, shortcuts_per_paragraph: int = 1,
                       n_background: int = 1000, seed: int = 0,
                       doc_id: str = "synthetic") -> Document:
    rng = random.Random(seed)
    n = n_paragraphs * paragraph_size
    concepts = [set() for _ in range(n)]

    def sentence(p, offset):
        return p * paragraph_size + offset

    for p in range(n_paragraphs):
        start = 0
        t = 0
        while start < paragraph_size:
            span = range(start, min(start + topic_span, paragraph_size))
            if len(span) >= 2:
                for off in span:
                    concepts[sentence(p, off)].add(f"topic_{p}_{t}")
            t += 1
            start += topic_span - 1  # windows overlap by one sentence

        for s in range(shortcuts_per_paragraph):
            cid = f"shortcut_{p}_{s}"
            for off in rng.sample(range(paragraph_size), 3):
                concepts[sentence(p, off)].add(cid)
            other = rng.choice([q for q in range(n_paragraphs) if q != p])
            concepts[sentence(other, rng.randrange(paragraph_size))].add(cid)

    for b in range(n_background):
        cid = f"bg_{b}"
        p = rng.randrange(n_paragraphs)
        for off in rng.sample(range(paragraph_size), 2):
            concepts[sentence(p, off)].add(cid)
        other = rng.choice([q for q in range(n_paragraphs) if q != p])
        concepts[sentence(other, rng.randrange(paragraph_size))].add(cid)

    paragraphs = []
    for p in range(n_paragraphs):
        para = []
        for off in range(paragraph_size):
            i = sentence(p, off)
            ids = sorted(concepts[i])
            text = f"Sentence {i} mentions " + ", ".join(ids[:3]) + "."
            para.append((text, [Concept(c, c.replace("_", " ")) for c in ids]))
        paragraphs.append(para)
    return build_document(doc_id, paragraphs)
