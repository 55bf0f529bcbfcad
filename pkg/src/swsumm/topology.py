"""Small-world diagnostics for sentence graphs.

Edge count, characteristic path length, mean clustering and transitivity,
compared with closed-form Erdos-Renyi expectations for a graph with the
same size and mean degree:

    C_rand = k / n,    L_rand = ln(n) / ln(k),    k = 2|E| / n

The small-world index is ``sigma = (C / C_rand) / (L / L_rand)``.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import DomainError
from .graph import SentenceGraph

REGULAR, SMALL_WORLD, RANDOM_LIKE = "regular", "small_world", "random_like"


def _bfs_distances(g: SentenceGraph, source: int) -> list:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def characteristic_path_length(g: SentenceGraph) -> float:
    """Mean shortest-path length over all unordered node pairs (BFS per node)."""
    if g.n < 2:
        raise DomainError("path length is undefined for fewer than 2 nodes")
    total = 0
    for s in range(g.n):
        dist = _bfs_distances(g, s)
        if min(dist) < 0:
            raise DomainError("graph is disconnected")
        total += sum(dist[s + 1:])
    return total / (g.n * (g.n - 1) // 2)


def _links_among_neighbors(g: SentenceGraph, i: int) -> int:
    nbrs = g.adjacency[i]
    return sum(len(nbrs & g.adjacency[u]) for u in nbrs) // 2


def local_clustering(g: SentenceGraph, i: int) -> Fraction:
    k = g.degree(i)
    if k < 2:
        return Fraction(0)
    return Fraction(2 * _links_among_neighbors(g, i), k * (k - 1))


def mean_clustering(g: SentenceGraph) -> float:
    if g.n == 0:
        return 0.0
    # exact rational sum: the result does not depend on summation order
    return float(sum((local_clustering(g, i) for i in range(g.n)), Fraction(0)) / g.n)


def transitivity(g: SentenceGraph) -> float:
    closed = sum(_links_among_neighbors(g, i) for i in range(g.n))  # = 3 * triangles
    triples = sum(k * (k - 1) // 2 for k in g.degrees())
    if triples == 0:
        return 0.0
    return closed / triples


@dataclass(frozen=True)
class TopologyReport:
    n: int
    edge_count: int
    char_path_length: float
    mean_clustering: float
    transitivity: float
    l_rand: float
    c_rand: float
    sigma: float
    regime: str

    @property
    def random_baseline(self) -> tuple:
        return (self.l_rand, self.c_rand)

    def to_json(self) -> dict:
        return asdict(self)

    CSV_FIELDS = ("n", "edge_count", "char_path_length", "mean_clustering",
                  "transitivity", "l_rand", "c_rand", "sigma", "regime")

    def csv_row(self) -> list:
        return [getattr(self, f) for f in self.CSV_FIELDS]


def classify(sigma: float, clustering: float, c_rand: float, edges: int, n: int) -> str:
    if sigma > 1 and clustering > c_rand:
        return SMALL_WORLD
    if sigma <= 1 and edges > 2 * n:
        return RANDOM_LIKE
    return REGULAR


def small_world_report(g: SentenceGraph) -> TopologyReport:
    n = g.n
    if n < 3:
        raise DomainError(f"small-world report needs at least 3 nodes, got {n}")
    m = g.edge_count
    L = characteristic_path_length(g)
    C = mean_clustering(g)
    T = transitivity(g)

    mean_degree = 2 * m / n
    c_rand = mean_degree / n
    # a connected graph on n >= 3 nodes always has mean degree > 1
    l_rand = math.log(n) / math.log(mean_degree)
    sigma = (C / c_rand) / (L / l_rand)
    return TopologyReport(n, m, L, C, T, l_rand, c_rand, sigma,
                          classify(sigma, C, c_rand, m, n))
