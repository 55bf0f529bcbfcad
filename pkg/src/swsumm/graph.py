"""Sentence graph, degree ranking and summary extraction.

Nodes are sentences.  Consecutive sentences are always joined (``local``
edges); any other pair sharing at least one meaningful concept is joined by
a ``distant`` edge.  A consecutive pair that also shares a meaningful
concept keeps a single edge tagged ``both``.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from itertools import combinations

from .corpus import Document
from .errors import DomainError

LOCAL, DISTANT, BOTH = "local", "distant", "both"


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    kind: str
    concepts: frozenset = frozenset()


class SentenceGraph:
    """Undirected simple graph on nodes ``0..n-1``.

    Edges are keyed by ``(u, v)`` with ``u < v``.  Instances are treated as
    immutable once built.
    """

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise DomainError("node count must be non-negative")
        self.n = n
        self._edges = {}
        adj = [set() for _ in range(n)]
        for e in edges:
            u, v = sorted((e.u, e.v))
            if u == v:
                raise DomainError(f"self-loop on node {u}")
            if not (0 <= u and v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
            if (u, v) in self._edges:
                raise DomainError(f"parallel edge ({u}, {v})")
            self._edges[(u, v)] = Edge(u, v, e.kind, frozenset(e.concepts))
            adj[u].add(v)
            adj[v].add(u)
        self.adjacency = tuple(frozenset(a) for a in adj)

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "SentenceGraph":
        """Plain graph from node pairs; kinds follow index distance."""
        seen = set()
        edges = []
        for u, v in pairs:
            key = (min(u, v), max(u, v))
            if key in seen:
                continue
            seen.add(key)
            edges.append(Edge(key[0], key[1], LOCAL if key[1] - key[0] == 1 else DISTANT))
        return cls(n, edges)

    def neighbors(self, i: int) -> list:
        return sorted(self.adjacency[i])

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def degrees(self) -> list:
        return [len(a) for a in self.adjacency]

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> list:
        return [self._edges[key] for key in sorted(self._edges)]

    def edge_set(self) -> frozenset:
        return frozenset(self._edges)

    def edge(self, u: int, v: int) -> Edge:
        return self._edges[(min(u, v), max(u, v))]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edges

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "edges": [{"u": e.u, "v": e.v, "kind": e.kind, "concepts": sorted(e.concepts)}
                      for e in self.edges()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SentenceGraph":
        return cls(int(data["n"]), [Edge(int(e["u"]), int(e["v"]), e.get("kind", DISTANT),
                                         frozenset(e.get("concepts", ())))
                                    for e in data["edges"]])

    def __eq__(self, other):
        if not isinstance(other, SentenceGraph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __repr__(self):
        return f"SentenceGraph(n={self.n}, edges={self.edge_count})"


def build_graph(doc: Document, meaningful) -> SentenceGraph:
    meaningful = frozenset(meaningful)
    n = doc.n
    shared = defaultdict(set)

    # inverted index: meaningful concept -> sentences containing it
    postings = defaultdict(list)
    for s in doc.sentences:
        for cid in s.concept_ids & meaningful:
            postings[cid].append(s.index)
    for cid, idx in postings.items():
        for u, v in combinations(idx, 2):
            shared[(u, v)].add(cid)

    edges = [Edge(i, i + 1, BOTH if (i, i + 1) in shared else LOCAL,
                  frozenset(shared.get((i, i + 1), ())))
             for i in range(n - 1)]
    edges += [Edge(u, v, DISTANT, frozenset(c))
              for (u, v), c in sorted(shared.items()) if v - u >= 2]
    return SentenceGraph(n, edges)


@dataclass(frozen=True)
class RankedSentence:
    rank: int
    sentence_index: int
    degree: int


def degree_ranking(g: SentenceGraph) -> list:
    """Rank nodes by descending degree; equal degrees keep document order."""
    order = sorted(range(g.n), key=lambda i: (-g.degree(i), i))
    return [RankedSentence(r, i, g.degree(i)) for r, i in enumerate(order, start=1)]


def summary_size(n: int, rate: float) -> int:
    # Decimal(str(rate)) keeps e.g. 85 * 0.3 at 25.5 instead of 25.4999...
    if not 0 < rate <= 1:
        raise DomainError(f"compression rate must be in (0, 1], got {rate}")
    exact = Decimal(str(rate)) * n
    size = int(exact.quantize(Decimal(1), rounding=ROUND_HALF_UP))
    return max(1, min(n, size))


@dataclass(frozen=True)
class Summary:
    selected: tuple
    ranked: tuple
    compression_rate: float

    def sentences(self, doc: Document) -> list:
        return [doc.sentences[i].text for i in self.selected]

    def text(self, doc: Document) -> str:
        return "\n".join(self.sentences(doc))


def select_summary(ranking, n: int, rate: float) -> Summary:
    if len(ranking) != n:
        raise DomainError(f"ranking covers {len(ranking)} sentences, expected {n}")
    size = summary_size(n, rate)
    chosen = sorted(r.sentence_index for r in ranking[:size])
    return Summary(tuple(chosen), tuple(ranking), rate)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: SentenceGraph, name: str = "") -> str:
    header = f"graph {_dot_quote(name)} {{" if name else "graph {"
    lines = [header]
    for i in range(g.n):
        lines.append(f"  S{i};")
    for e in g.edges():
        attrs = []
        if e.concepts:
            attrs.append(f"label={_dot_quote(','.join(sorted(e.concepts)))}")
        if e.kind == DISTANT:
            attrs.append("style=dashed")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  S{e.u} -- S{e.v}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json_text(g: SentenceGraph) -> str:
    return json.dumps(g.to_json(), indent=1)
