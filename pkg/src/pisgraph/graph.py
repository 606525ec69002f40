"""Small labeled simple graphs with bitset adjacency, and the PIS construction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from . import bitset
from .errors import GraphSizeError
from .lattice import IdealLattice
from .ring import FiniteRing

ISO_LIMIT = 10


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbour bitmask of ``v``.  Equality compares
    structure and labels.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.adj) != self.n or len(self.labels) != self.n:
            raise ValueError("adjacency/labels length does not match n")
        for v, nb in enumerate(self.adj):
            if nb >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for w in bitset.to_indices(nb):
                if w >= self.n or not self.adj[w] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {w})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels: Optional[Sequence[str]] = None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(n, tuple(adj), tuple(labels))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, labels: Optional[Sequence[str]] = None) -> "Graph":
        n = matrix.shape[0]
        return cls.from_edges(n, [(int(a), int(b)) for a, b in zip(*np.nonzero(np.triu(matrix, 1)))], labels)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return bitset.to_indices(self.adj[v])

    def degree(self, v: int) -> int:
        return bitset.size(self.adj[v])

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.neighbors(u) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.bool_)
        for u, v in self.edges():
            m[u, v] = m[v, u] = True
        return m

    def relabel(self, labels: Sequence[str]) -> "Graph":
        return Graph(self.n, self.adj, tuple(labels))


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    return Graph(G.n, tuple(full & ~nb & ~(1 << v) for v, nb in enumerate(G.adj)), G.labels)


def induced(G: Graph, subset: Iterable[int]) -> Graph:
    """Subgraph induced by ``subset`` (taken in increasing vertex order)."""
    verts = sorted(set(subset))
    for v in verts:
        if not 0 <= v < G.n:
            raise ValueError(f"vertex {v} not in graph")
    pos = {v: i for i, v in enumerate(verts)}
    edges = [(pos[u], pos[w]) for u in verts for w in G.neighbors(u) if w in pos and u < w]
    return Graph.from_edges(len(verts), edges, [G.labels[v] for v in verts])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, labels, offset = [], [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        labels.extend(g.labels)
        offset += g.n
    return Graph.from_edges(offset, edges, labels)


def line_graph(H: Graph) -> Graph:
    """L(H): one vertex per edge of H (in ``H.edges()`` order), adjacent when incident."""
    es = H.edges()
    out = []
    for i, j in itertools.combinations(range(len(es)), 2):
        if set(es[i]) & set(es[j]):
            out.append((i, j))
    labels = [f"{H.labels[u]}-{H.labels[v]}" for u, v in es]
    return Graph.from_edges(len(es), out, labels)


def make_named_graph(kind: str, *params) -> Graph:
    """Standard graphs: path(n), complete(n), star(k) = K_{1,k},
    completeBipartite(m, n), disjointCopies(m, G)."""
    def positive(*vals):
        for v in vals:
            if not isinstance(v, int) or v <= 0:
                raise ValueError(f"{kind}: parameters must be positive integers, got {params}")

    if kind == "path":
        (n,) = params
        positive(n)
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "complete":
        (n,) = params
        positive(n)
        return Graph.from_edges(n, itertools.combinations(range(n), 2))
    if kind == "star":
        (k,) = params
        positive(k)
        return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])
    if kind == "completeBipartite":
        m, n = params
        positive(m, n)
        return Graph.from_edges(m + n, [(i, m + j) for i in range(m) for j in range(n)])
    if kind == "disjointCopies":
        m, g = params
        positive(m)
        return disjoint_union(*([g] * m))
    raise ValueError(f"unknown graph kind {kind!r}")


def _refine_candidates(G1: Graph, G2: Graph) -> Optional[list[list[int]]]:
    d1, d2 = G1.degrees(), G2.degrees()
    if sorted(d1) != sorted(d2):
        return None
    # neighbour degree multisets are a cheap invariant
    s1 = [(d1[v], tuple(sorted(d1[w] for w in G1.neighbors(v)))) for v in range(G1.n)]
    s2 = [(d2[v], tuple(sorted(d2[w] for w in G2.neighbors(v)))) for v in range(G2.n)]
    if sorted(s1) != sorted(s2):
        return None
    return [[w for w in range(G2.n) if s2[w] == s1[v]] for v in range(G1.n)]


def find_isomorphism(G1: Graph, G2: Graph, limit: Optional[int] = ISO_LIMIT) -> Optional[list[int]]:
    """A bijection ``phi`` with u~v in G1 iff phi[u]~phi[v] in G2, or None."""
    if limit is not None and max(G1.n, G2.n) > limit:
        raise GraphSizeError(f"isomorphism test limited to {limit} vertices")
    if G1.n != G2.n or G1.edge_count != G2.edge_count:
        return None
    cands = _refine_candidates(G1, G2)
    if cands is None:
        return None
    order = sorted(range(G1.n), key=lambda v: (len(cands[v]), -G1.degree(v)))
    phi = [-1] * G1.n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == len(order):
            return True
        v = order[k]
        for w in cands[v]:
            if used >> w & 1:
                continue
            ok = True
            for u in order[:k]:
                if G1.has_edge(u, v) != G2.has_edge(phi[u], w):
                    ok = False
                    break
            if ok:
                phi[v] = w
                used |= 1 << w
                if extend(k + 1):
                    return True
                used &= ~(1 << w)
                phi[v] = -1
        return False

    return phi if extend(0) else None


def is_isomorphic_small(G1: Graph, G2: Graph, limit: int = ISO_LIMIT) -> bool:
    return find_isomorphism(G1, G2, limit) is not None


def pair_code(G: Graph, order: Sequence[int]) -> int:
    """Bit t set when the t-th pair (a < b) of positions in ``order`` is an edge."""
    code, bit = 0, 0
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if G.has_edge(order[a], order[b]):
                code |= 1 << bit
            bit += 1
    return code


def canonical_code(G: Graph) -> int:
    """Largest pair code over all vertex orders (brute force, n <= 7)."""
    if G.n > 7:
        raise GraphSizeError("canonical_code is limited to 7 vertices")
    return max((pair_code(G, p) for p in itertools.permutations(range(G.n))), default=0)


# ---------------------------------------------------------------------------
# prime ideal sum graph
# ---------------------------------------------------------------------------


def pis_graph(R: FiniteRing, lattice: IdealLattice) -> Graph:
    """Prime ideal sum graph: vertex v is lattice ideal v + 1.

    Vertices are the nonzero proper ideals; I ~ J when I != J and I + J is
    prime.
    """
    verts = list(lattice.nontrivial_proper())
    prime = np.array(lattice.prime, dtype=np.bool_)
    idx = np.array(verts, dtype=np.int64)
    adj = prime[lattice.sum_table[np.ix_(idx, idx)]]
    np.fill_diagonal(adj, False)
    return Graph.from_matrix(adj, [lattice.label(i) for i in verts])


def to_dot(G: Graph, name: str = "G") -> str:
    lines = [f"graph {_dot_id(name)} {{"]
    for v in range(G.n):
        lines.append(f"  {v} [label={_dot_str(G.labels[v])}];")
    for u, v in G.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(G: Graph, path, name: str = "G") -> None:
    Path(path).write_text(to_dot(G, name), encoding="utf-8")


def adjacency_text(G: Graph) -> str:
    """First line n, then one space-separated neighbour list per vertex."""
    rows = [str(G.n)] + [" ".join(str(w) for w in G.neighbors(v)) for v in range(G.n)]
    return "\n".join(rows) + "\n"


def parse_adjacency_text(text: str) -> Graph:
    lines = text.splitlines()
    n = int(lines[0])
    edges = set()
    for v in range(n):
        row = lines[v + 1] if v + 1 < len(lines) else ""
        edges.update((min(v, int(w)), max(v, int(w))) for w in row.split())
    return Graph.from_edges(n, sorted(edges))


def _dot_str(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_id(s: str) -> str:
    return s if s.isidentifier() else _dot_str(s)
