"""Shared builders for the test suite."""

from __future__ import annotations

import functools
import itertools
from pathlib import Path

import networkx as nx
import numpy as np

from pisgraph import bitset
from pisgraph.graph import Graph, pis_graph
from pisgraph.lattice import IdealLattice, enumerate_ideals
from pisgraph.ring import FiniteRing, build_ring
from pisgraph.ringspec import parse_ring_spec

DATA = Path(__file__).parent / "data"


@functools.lru_cache(maxsize=None)
def ring(text: str) -> FiniteRing:
    return build_ring(parse_ring_spec(text))


@functools.lru_cache(maxsize=None)
def lattice(text: str) -> IdealLattice:
    return enumerate_ideals(ring(text))


@functools.lru_cache(maxsize=None)
def pis(text: str) -> Graph:
    return pis_graph(ring(text), lattice(text))


def vertex(L: IdealLattice, members: int) -> int:
    """PIS vertex of the ideal with the given member mask."""
    i = L.index[members]
    assert 0 < i < L.top, "ideal is zero or the whole ring"
    return i - 1


def product_ideal(factor_orders: list[int], factor_masks: list[int]) -> int:
    """Member mask of I_1 x ... x I_k inside the product ring.

    Product elements are indexed in mixed radix with the first factor most
    significant, matching ``product_ring``.
    """
    comps = [bitset.to_indices(m) for m in factor_masks]
    out = 0
    for tup in itertools.product(*comps):
        out |= 1 << int(np.ravel_multi_index(tup, factor_orders))
    return out


def brute_force_ideals(R: FiniteRing) -> list[int]:
    """Every subset containing 0, closed under + and under R-multiples."""
    found = []
    others = [a for a in range(R.order) if a != R.zero]
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            members = set(combo) | {R.zero}
            if all(int(R.add[a, b]) in members for a in members for b in members) and all(
                int(R.mul[s, a]) in members for s in range(R.order) for a in members
            ):
                found.append(bitset.from_indices(members))
    return sorted(found)


def brute_force_pis_edges(R: FiniteRing, ideals: list[int]) -> set[frozenset[int]]:
    """PIS edges between member masks, via direct sums and the prime test."""

    def plus(I: int, J: int) -> int:
        return bitset.from_indices({int(R.add[a, b]) for a in bitset.to_indices(I) for b in bitset.to_indices(J)})

    def prime(P: int) -> bool:
        if P == (1 << R.order) - 1:
            return False
        return all(
            P >> int(R.mul[a, b]) & 1 == 0 or P >> a & 1 or P >> b & 1
            for a in range(R.order)
            for b in range(R.order)
        )

    full = (1 << R.order) - 1
    verts = [I for I in ideals if I not in (1 << R.zero, full)]
    return {frozenset((I, J)) for I, J in itertools.combinations(verts, 2) if prime(plus(I, J))}


def random_graphs(count: int, seed: int = 20240611) -> list[Graph]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(4, 10))
        p = float(rng.uniform(0.15, 0.9))
        upper = np.triu(rng.random((n, n)) < p, 1)
        out.append(Graph.from_matrix(upper | upper.T))
    return out


def graphs_with_few_edges(max_edges: int) -> list[Graph]:
    """All graphs without isolated vertices and at most ``max_edges`` edges, up to isomorphism."""
    levels = [[nx.Graph()]]
    for _ in range(max_edges):
        buckets: dict[str, list[nx.Graph]] = {}
        for g in levels[-1]:
            n = g.number_of_nodes()
            cands = [(u, v) for u, v in itertools.combinations(range(n), 2) if not g.has_edge(u, v)]
            cands += [(u, n) for u in range(n)] + [(n, n + 1)]
            for e in cands:
                h = g.copy()
                h.add_edge(*e)
                key = nx.weisfeiler_lehman_graph_hash(h)
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(h, o) for o in bucket):
                    bucket.append(h)
        levels.append([g for b in buckets.values() for g in b])
    out = []
    for level in levels[1:]:
        for g in level:
            out.append(Graph.from_edges(g.number_of_nodes(), g.edges()))
    return out
