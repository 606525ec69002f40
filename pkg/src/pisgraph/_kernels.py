"""Hot inner loops: ring-axiom scans, sumsets, primality, subset scans.

Every kernel has a numba version and a pure-numpy version with identical
results.  The numba path is used when numba imports cleanly and the
environment variable ``PISGRAPH_DISABLE_NUMBA`` is unset (or ``0``).
Both variants stay importable as ``nb_<name>`` / ``np_<name>`` so tests and
the benchmark can compare them directly.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("PISGRAPH_DISABLE_NUMBA", "0").lower() in (
    "",
    "0",
    "false",
    "no",
)

_CHUNK = 1 << 16

NO_HIT = (-1, -1, -1)


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def np_assoc_violation(table):
    """First (a, b, c) with (ab)c != a(bc), or (-1, -1, -1)."""
    n = table.shape[0]
    for a in range(n):
        lhs = table[table[a]]  # lhs[b, c] = (a*b)*c
        rhs = table[a][table]  # rhs[b, c] = a*(b*c)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            return a, int(bad[0, 0]), int(bad[0, 1])
    return NO_HIT


def np_distrib_violation(add, mul):
    """First (a, b, c) with a(b+c) != ab + ac, or (-1, -1, -1)."""
    n = add.shape[0]
    for a in range(n):
        row = mul[a]
        lhs = row[add]
        rhs = add[row[:, None], row[None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            return a, int(bad[0, 0]), int(bad[0, 1])
    return NO_HIT


def np_sumset(add, left, right):
    out = np.zeros(add.shape[0], dtype=np.bool_)
    li = np.flatnonzero(left)
    ri = np.flatnonzero(right)
    if li.size and ri.size:
        out[add[np.ix_(li, ri)].ravel()] = True
    return out


def np_prime_violation(mul, members):
    """First (a, b) with ab in the set but neither a nor b in it, or (-1, -1)."""
    outside = ~members
    bad = members[mul] & outside[:, None] & outside[None, :]
    hits = np.argwhere(bad)
    if hits.size:
        return int(hits[0, 0]), int(hits[0, 1])
    return -1, -1


def np_closed_subsets(add, mul, zero):
    """All subsets containing ``zero`` closed under + and absorbing under *.

    Subsets are returned as uint64 bitmasks in increasing numeric order.
    Intended for rings of order at most 20.
    """
    n = add.shape[0]
    others = np.array([i for i in range(n) if i != zero], dtype=np.int64)
    ii, jj = np.triu_indices(n)
    sums = add[ii, jj]
    rr, cc = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    prods = mul[rr.ravel(), cc.ravel()]
    absorb_src = cc.ravel()
    total = 1 << others.size
    found = []
    bit_weights = np.uint64(1) << np.arange(n, dtype=np.uint64)
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        sets = np.zeros((codes.size, n), dtype=np.bool_)
        sets[:, zero] = True
        sets[:, others] = ((codes[:, None] >> np.arange(others.size)) & 1).astype(np.bool_)
        ok = ~np.any(sets[:, ii] & sets[:, jj] & ~sets[:, sums], axis=1)
        ok &= ~np.any(sets[:, absorb_src] & ~sets[:, prods], axis=1)
        good = sets[ok]
        if good.size:
            found.append(good.astype(np.uint64) @ bit_weights)
    if not found:
        return np.zeros(0, dtype=np.uint64)
    return np.sort(np.concatenate(found))


def np_first_induced(adj, k, table):
    """Scan k-subsets of vertices in lexicographic order.

    ``table`` maps the pair-code of an induced k-vertex graph (bit t set when
    the t-th pair (a, b), a < b, in row-major order is an edge) to a library
    index or -1.  Returns (subset, index) for the first hit, or (None, -1).
    """
    n = adj.shape[0]
    if n < k:
        return None, -1
    pa, pb = np.triu_indices(k, 1)
    weights = np.int64(1) << np.arange(pa.size, dtype=np.int64)
    combos = itertools.combinations(range(n), k)
    while True:
        flat = np.fromiter(
            itertools.chain.from_iterable(itertools.islice(combos, _CHUNK)), dtype=np.int64
        )
        if flat.size == 0:
            return None, -1
        block = flat.reshape(-1, k)
        edges = adj[block[:, pa], block[:, pb]]
        codes = edges.astype(np.int64) @ weights
        hits = table[codes]
        pos = np.flatnonzero(hits >= 0)
        if pos.size:
            row = int(pos[0])
            return block[row].copy(), int(hits[row])


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_assoc(table):
        n = table.shape[0]
        for a in range(n):
            for b in range(n):
                ab = table[a, b]
                for c in range(n):
                    if table[ab, c] != table[a, table[b, c]]:
                        return a, b, c
        return -1, -1, -1

    @njit(cache=True)
    def _nb_distrib(add, mul):
        n = add.shape[0]
        for a in range(n):
            for b in range(n):
                ab = mul[a, b]
                for c in range(n):
                    if mul[a, add[b, c]] != add[ab, mul[a, c]]:
                        return a, b, c
        return -1, -1, -1

    @njit(cache=True)
    def _nb_sumset(add, left, right):
        n = add.shape[0]
        out = np.zeros(n, dtype=np.bool_)
        for i in range(n):
            if left[i]:
                for j in range(n):
                    if right[j]:
                        out[add[i, j]] = True
        return out

    @njit(cache=True)
    def _nb_prime(mul, members):
        n = mul.shape[0]
        for a in range(n):
            if members[a]:
                continue
            for b in range(n):
                if not members[b] and members[mul[a, b]]:
                    return a, b
        return -1, -1

    @njit(cache=True)
    def _nb_closed_subsets(add, mul, zero):
        n = add.shape[0]
        others = np.empty(n - 1, dtype=np.int64)
        t = 0
        for i in range(n):
            if i != zero:
                others[t] = i
                t += 1
        total = 1 << (n - 1)
        out = np.empty(total, dtype=np.uint64)
        count = 0
        member = np.zeros(n, dtype=np.bool_)
        for code in range(total):
            for i in range(n):
                member[i] = False
            member[zero] = True
            for t in range(n - 1):
                if (code >> t) & 1:
                    member[others[t]] = True
            ok = True
            for i in range(n):
                if not member[i]:
                    continue
                for j in range(i, n):
                    if member[j] and not member[add[i, j]]:
                        ok = False
                        break
                if not ok:
                    break
                for r in range(n):
                    if not member[mul[r, i]]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                mask = np.uint64(0)
                for i in range(n):
                    if member[i]:
                        mask |= np.uint64(1) << np.uint64(i)
                out[count] = mask
                count += 1
        return np.sort(out[:count])

    @njit(cache=True)
    def _nb_first_induced(adj, k, table):
        n = adj.shape[0]
        idx = np.empty(k, dtype=np.int64)
        if n < k:
            return idx, -1
        for i in range(k):
            idx[i] = i
        while True:
            code = 0
            bit = 0
            for a in range(k):
                for b in range(a + 1, k):
                    if adj[idx[a], idx[b]]:
                        code |= 1 << bit
                    bit += 1
            if table[code] >= 0:
                return idx, table[code]
            i = k - 1
            while i >= 0 and idx[i] == n - k + i:
                i -= 1
            if i < 0:
                return idx, -1
            idx[i] += 1
            for j in range(i + 1, k):
                idx[j] = idx[j - 1] + 1

    def nb_assoc_violation(table):
        return tuple(int(v) for v in _nb_assoc(table))

    def nb_distrib_violation(add, mul):
        return tuple(int(v) for v in _nb_distrib(add, mul))

    def nb_sumset(add, left, right):
        return _nb_sumset(add, left, right)

    def nb_prime_violation(mul, members):
        a, b = _nb_prime(mul, members)
        return int(a), int(b)

    def nb_closed_subsets(add, mul, zero):
        return _nb_closed_subsets(add, mul, np.int64(zero))

    def nb_first_induced(adj, k, table):
        idx, hit = _nb_first_induced(adj, np.int64(k), table)
        if hit < 0:
            return None, -1
        return idx.copy(), int(hit)


if USE_NUMBA:
    assoc_violation = nb_assoc_violation
    distrib_violation = nb_distrib_violation
    sumset = nb_sumset
    prime_violation = nb_prime_violation
    closed_subsets = nb_closed_subsets
    first_induced = nb_first_induced
else:
    assoc_violation = np_assoc_violation
    distrib_violation = np_distrib_violation
    sumset = np_sumset
    prime_violation = np_prime_violation
    closed_subsets = np_closed_subsets
    first_induced = np_first_induced


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
