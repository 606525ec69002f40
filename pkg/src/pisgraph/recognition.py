"""Line-graph recognition by two independent deciders.

* a scan for the nine minimal non-line graphs as induced subgraphs, and
* a backtracking search for a Krausz partition (edge partition into cliques,
  every vertex in at most two of them), from which a root graph is rebuilt.

``is_line_graph`` runs both and refuses to answer if they disagree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from . import _kernels, bitset
from .errors import GraphSizeError, LibraryError, RecognitionDisagreement
from .graph import (
    Graph,
    canonical_code,
    complement,
    find_isomorphism,
    induced,
    line_graph,
    make_named_graph,
    pair_code,
)

SCAN_LIMIT = 64

# Minimal non-line graphs.  Entry 0 is the claw; the rest are ordered by
# vertex count, then edge count.
_LIBRARY_EDGES: list[tuple[str, int, list[tuple[int, int]]]] = [
    ("claw", 4, [(0, 3), (1, 3), (2, 3)]),
    ("K_{2,3}+e", 5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 4)]),
    ("K_5-e", 5, [(0, 1), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]),
    ("6v7e", 6, [(0, 1), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (4, 5)]),
    ("6v8e", 6, [(0, 1), (0, 4), (0, 5), (1, 2), (1, 5), (2, 3), (2, 5), (3, 4)]),
    ("6v9e-a", 6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 5), (2, 3), (2, 5), (4, 5)]),
    ("6v9e-b", 6, [(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]),
    ("6v10e", 6, [(0, 1), (0, 4), (0, 5), (1, 2), (1, 5), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)]),
    ("6v11e", 6, [(0, 1), (0, 2), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5), (2, 5), (3, 4), (3, 5), (4, 5)]),
]


@dataclass(frozen=True, eq=False)
class ForbiddenLibrary:
    graphs: tuple[Graph, ...]
    names: tuple[str, ...]
    complements: tuple[Graph, ...]
    # tables[k][pair_code] -> library index or -1, for k-vertex subsets
    tables: dict[int, np.ndarray] = field(repr=False)

    def __len__(self) -> int:
        return len(self.graphs)


def _lookup_tables(graphs: tuple[Graph, ...]) -> dict[int, np.ndarray]:
    tables = {}
    for k in sorted({g.n for g in graphs}):
        table = np.full(1 << (k * (k - 1) // 2), -1, dtype=np.int64)
        for idx, g in enumerate(graphs):
            if g.n != k:
                continue
            for perm in itertools.permutations(range(k)):
                table[pair_code(g, perm)] = idx
        tables[k] = table
    return tables


def _validate_library(graphs: tuple[Graph, ...]) -> None:
    if not graphs[0].n == 4 or find_isomorphism(graphs[0], make_named_graph("star", 3)) is None:
        raise LibraryError("first library graph must be the claw")
    for i, g in enumerate(graphs):
        if not 4 <= g.n <= 6:
            raise LibraryError(f"library graph {i} has {g.n} vertices")
        if krausz_partition(g) is not None:
            raise LibraryError(f"library graph {i} admits a Krausz partition")
        for v in range(g.n):
            sub = induced(g, [u for u in range(g.n) if u != v])
            if krausz_partition(sub) is None:
                raise LibraryError(f"library graph {i} is not minimal (vertex {v})")
    for i, j in itertools.combinations(range(len(graphs)), 2):
        if find_isomorphism(graphs[i], graphs[j]) is not None:
            raise LibraryError(f"library graphs {i} and {j} are isomorphic")


@lru_cache(maxsize=None)
def forbidden_library() -> ForbiddenLibrary:
    """The nine minimal non-line graphs, self-checked with the Krausz search."""
    graphs = tuple(
        Graph.from_edges(n, edges, [f"{name}:{v}" for v in range(n)]) for name, n, edges in _LIBRARY_EDGES
    )
    _validate_library(graphs)
    return ForbiddenLibrary(
        graphs=graphs,
        names=tuple(name for name, _, _ in _LIBRARY_EDGES),
        complements=tuple(complement(g) for g in graphs),
        tables=_lookup_tables(graphs),
    )


def find_forbidden_induced(
    G: Graph, library: Optional[ForbiddenLibrary] = None, max_vertices: int = SCAN_LIMIT
) -> Optional[tuple[tuple[int, ...], int]]:
    """First vertex subset (size 4, then 5, then 6; lexicographic within a
    size) inducing a library graph, as ``(subset, library_index)``."""
    if G.n > max_vertices:
        raise GraphSizeError(f"forbidden-subgraph scan limited to {max_vertices} vertices")
    library = library or forbidden_library()
    adj = G.matrix()
    for k in sorted(library.tables):
        subset, idx = _kernels.first_induced(adj, k, library.tables[k])
        if idx >= 0:
            return tuple(int(v) for v in subset), idx
    return None


# ---------------------------------------------------------------------------
# Krausz partitions
# ---------------------------------------------------------------------------


def _is_clique(unc: list[int], part: int) -> bool:
    for w in bitset.to_indices(part):
        if (unc[w] | 1 << w) & part != part:
            return False
    return True


def krausz_partition(G: Graph) -> Optional[list[tuple[int, ...]]]:
    """Partition E(G) into cliques with every vertex in at most two, or None.

    Cliques have at least two vertices.  Isolated vertices lie in no clique.
    """
    n = G.n

    def solve(unc: list[int], cnt: list[int], cliques: list[int]) -> Optional[list[int]]:
        u = -1
        for v in range(n):
            if unc[v]:
                if cnt[v] == 1:
                    u = v
                    break
                if u < 0:
                    u = v
        if u < 0:
            return cliques
        nbrs = unc[u]
        if cnt[u] == 1:
            options = [(nbrs, 0)]
        else:
            low = nbrs & -nbrs
            free = nbrs & ~low & unc[low.bit_length() - 1]
            options = []
            sub = free
            while True:
                a = sub | low
                b = nbrs & ~a
                options.append((a, b))
                if sub == 0:
                    break
                sub = (sub - 1) & free
        for a, b in options:
            if not _is_clique(unc, a) or (b and not _is_clique(unc, b)):
                continue
            new_unc, new_cnt, new_cliques = list(unc), list(cnt), list(cliques)
            ok = True
            for part in (a, b):
                if not part:
                    continue
                clique = part | 1 << u
                for w in bitset.to_indices(clique):
                    if new_cnt[w] >= 2:
                        ok = False
                        break
                    new_cnt[w] += 1
                    new_unc[w] &= ~clique
                if not ok:
                    break
                new_cliques.append(clique)
            if not ok:
                continue
            if any(new_cnt[w] >= 2 and new_unc[w] for w in range(n)):
                continue
            found = solve(new_unc, new_cnt, new_cliques)
            if found is not None:
                return found
        return None

    result = solve(list(G.adj), [0] * n, [])
    if result is None:
        return None
    return sorted(tuple(bitset.to_indices(c)) for c in result)


def check_krausz(G: Graph, partition: list[tuple[int, ...]]) -> None:
    """Raise ValueError unless ``partition`` is a Krausz partition of G."""
    covered = set()
    count = [0] * G.n
    for clique in partition:
        if len(clique) < 2:
            raise ValueError(f"clique {clique} has fewer than 2 vertices")
        for v in clique:
            count[v] += 1
        for u, v in itertools.combinations(sorted(clique), 2):
            if not G.has_edge(u, v):
                raise ValueError(f"{clique} is not a clique")
            if (u, v) in covered:
                raise ValueError(f"edge {(u, v)} covered twice")
            covered.add((u, v))
    if covered != set(G.edges()):
        raise ValueError("partition does not cover every edge")
    if max(count, default=0) > 2:
        raise ValueError("a vertex lies in more than two cliques")


def root_graph_from_partition(G: Graph, partition: list[tuple[int, ...]]) -> Graph:
    """Root graph H with L(H) = G.

    H has a vertex per clique, plus fresh vertices for G-vertices lying in
    fewer than two cliques.  G-vertex v becomes the v-th edge of H, so the
    identity map realizes the isomorphism L(H) -> G when H's edges are taken
    in G-vertex order (see :func:`root_edge_map`).
    """
    check_krausz(G, partition)
    return _root_and_map(G, partition)[0]


def root_edge_map(G: Graph, partition: list[tuple[int, ...]]) -> list[tuple[int, int]]:
    """For each G-vertex, the H-edge it corresponds to."""
    return _root_and_map(G, partition)[1]


def _root_and_map(G: Graph, partition):
    labels = [f"C{i}" for i in range(len(partition))]
    member: list[list[int]] = [[] for _ in range(G.n)]
    for ci, clique in enumerate(partition):
        for v in clique:
            member[v].append(ci)
    edges = []
    for v in range(G.n):
        ends = list(member[v])
        extra = [] if len(ends) == 2 else [f"x{v}"] if len(ends) == 1 else [f"x{v}", f"y{v}"]
        for name in extra:
            ends.append(len(labels))
            labels.append(name)
        edges.append((ends[0], ends[1]))
    return Graph.from_edges(len(labels), edges, labels), edges


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ForbiddenWitness:
    subset: tuple[int, ...]
    index: int
    name: str
    degree_sequence: tuple[int, ...]
    canonical: int


@dataclass(frozen=True)
class RootWitness:
    root: Graph
    cliques: tuple[tuple[int, ...], ...]
    edge_map: tuple[tuple[int, int], ...]


Witness = Union[ForbiddenWitness, RootWitness]


@dataclass(frozen=True)
class LineVerdict:
    """Outcome of a recognizer.

    For complement recognition (``complemented``) the witnesses refer to the
    complement graph: the root satisfies L(root) = complement(G), and the
    forbidden subset induces the complement of the named library graph in G.
    """

    is_line: bool
    witness: Witness
    complemented: bool = False


def _forbidden_witness(G: Graph, subset: tuple[int, ...], index: int, library: ForbiddenLibrary) -> ForbiddenWitness:
    sub = induced(G, subset)
    return ForbiddenWitness(
        subset=subset,
        index=index,
        name=library.names[index],
        degree_sequence=tuple(sorted(sub.degrees(), reverse=True)),
        canonical=canonical_code(sub),
    )


def _root_witness(G: Graph, partition) -> RootWitness:
    root, edge_map = _root_and_map(G, partition)
    return RootWitness(root, tuple(partition), tuple(edge_map))


def is_line_graph(G: Graph) -> LineVerdict:
    """Decide whether G is a line graph, cross-checking both deciders."""
    if G.n == 0:
        return LineVerdict(True, RootWitness(Graph(0, (), ()), (), ()))
    library = forbidden_library()
    hit = find_forbidden_induced(G, library)
    partition = krausz_partition(G)
    if (hit is None) != (partition is not None):
        raise RecognitionDisagreement(
            f"forbidden scan found {hit!r} but Krausz search returned {partition!r}"
        )
    if hit is not None:
        return LineVerdict(False, _forbidden_witness(G, hit[0], hit[1], library))
    check_krausz(G, partition)
    return LineVerdict(True, _root_witness(G, partition))


def is_complement_line_graph(G: Graph) -> LineVerdict:
    """Decide whether G is the complement of a line graph."""
    verdict = is_line_graph(complement(G))
    return LineVerdict(verdict.is_line, verdict.witness, complemented=True)


def root_matches(G: Graph, witness: RootWitness) -> bool:
    """L(root) equals G under the recorded vertex-to-edge map."""
    if G.n == 0:
        return witness.root.edge_count == 0
    L = line_graph(witness.root)
    edges = witness.root.edges()
    pos = {e: i for i, e in enumerate(edges)}
    phi = [pos[tuple(sorted(e))] for e in witness.edge_map]
    if sorted(phi) != list(range(G.n)) or L.n != G.n:
        return False
    return all(G.has_edge(u, v) == L.has_edge(phi[u], phi[v]) for u in range(G.n) for v in range(u + 1, G.n))
