"""Compare the numba and numpy kernels on representative inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]

The first numba call of each kernel is timed separately (compile or cache
load); the reported figures are the best of ``--repeat`` warm runs.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from pisgraph import _kernels as K
from pisgraph.graph import Graph, pis_graph
from pisgraph.lattice import enumerate_ideals
from pisgraph.recognition import forbidden_library
from pisgraph.ring import build_ring
from pisgraph.ringspec import parse_ring_spec


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _cases():
    big = build_ring(parse_ring_spec("prod(Z 8, GF 2, Z 3, Z 5)"))  # order 240
    small = build_ring(parse_ring_spec("mon 2 [x,y] / (x^2, y^2)"))  # order 16
    members = np.zeros(big.order, dtype=np.bool_)
    members[big.mul[2]] = True
    left = np.zeros(big.order, dtype=np.bool_)
    left[big.mul[3]] = True

    text = "mon 2 [x, y, z, w] / (x^2, y^2, z^2, w^2, xy, xz, xw, yz, yw, zw)"
    R = build_ring(parse_ring_spec(text))
    G = pis_graph(R, enumerate_ideals(R))
    # the first 40 vertices keep the graph under the scan cap; K30 has no
    # induced 5-vertex library graph, so its scan visits every subset
    adj = G.matrix()[:40, :40]
    clique = Graph.from_edges(30, [(i, j) for i in range(30) for j in range(i + 1, 30)]).matrix()
    lib = forbidden_library()

    return [
        ("assoc_violation", "n=240", (big.mul,)),
        ("distrib_violation", "n=240", (big.add, big.mul)),
        ("sumset", "n=240", (big.add, left, members)),
        ("prime_violation", "n=240", (big.mul, members)),
        ("closed_subsets", "n=16", (small.add, small.mul, small.zero)),
        ("first_induced", "k=6, PIS on 40 vertices", (adj, 6, lib.tables[6])),
        ("first_induced", "k=5, K30 full scan", (clique, 5, lib.tables[5])),
    ]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    if not K.HAVE_NUMBA:
        print("numba is not installed; only the numpy kernels are available")
    header = f"{'kernel':40s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'first numba call [ms]':>22s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for kernel, case, inputs in _cases():
        label = f"{kernel} ({case})"
        np_fn = getattr(K, f"np_{kernel}")
        t_np = _best(lambda: np_fn(*inputs), args.repeat)
        if K.HAVE_NUMBA:
            nb_fn = getattr(K, f"nb_{kernel}")
            t0 = time.perf_counter()
            first = nb_fn(*inputs)
            t_first = time.perf_counter() - t0
            t_nb = _best(lambda: nb_fn(*inputs), args.repeat)
            same = _same(first, np_fn(*inputs))
            speed = f"{t_np / t_nb:7.1f}x" if t_nb > 0 else "   inf"
            print(f"{label:40s} {t_np * 1e3:12.3f} {t_nb * 1e3:12.3f} {t_first * 1e3:22.1f} {speed:>8s}"
                  + ("" if same else "  RESULT MISMATCH"))
        else:
            print(f"{label:40s} {t_np * 1e3:12.3f} {'-':>12s} {'-':>22s} {'-':>8s}")
    print(f"\nactive backend: {K.backend()}")
    return 0


def _same(a, b) -> bool:
    if isinstance(a, tuple) and len(a) == 2 and (a[0] is None or isinstance(a[0], np.ndarray)):
        return a[1] == b[1] and (a[0] is None and b[0] is None or np.array_equal(a[0], b[0]))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return tuple(a) == tuple(b)


if __name__ == "__main__":
    raise SystemExit(main())
