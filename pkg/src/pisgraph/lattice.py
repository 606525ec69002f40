"""Ideals of a finite ring: enumeration, sums, products, primality, local data."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from . import _kernels, bitset
from .errors import IdealCapError
from .ring import FiniteRing

DEFAULT_IDEAL_CAP = 100_000


@dataclass(frozen=True)
class Ideal:
    """An ideal, identified by its member bitmask.

    ``generators`` is a hint for display only and does not take part in
    equality.
    """

    members: int
    generators: tuple[int, ...] = field(default=(), compare=False)

    @property
    def size(self) -> int:
        return bitset.size(self.members)

    def __contains__(self, element: int) -> bool:
        return bool(self.members >> element & 1)

    def __le__(self, other: "Ideal") -> bool:
        return bitset.is_subset(self.members, other.members)

    def __lt__(self, other: "Ideal") -> bool:
        return self.members != other.members and self <= other

    def elements(self) -> list[int]:
        return bitset.to_indices(self.members)

    def flags(self, order: int) -> np.ndarray:
        return bitset.to_flags(self.members, order)


def principal_ideal(R: FiniteRing, a: int) -> Ideal:
    """The ideal <a> = {r*a : r in R}."""
    flags = np.zeros(R.order, dtype=np.bool_)
    flags[R.mul[a]] = True
    return Ideal(bitset.from_flags(flags), (a,))


def zero_ideal(R: FiniteRing) -> Ideal:
    return Ideal(1 << R.zero, (R.zero,))


def unit_ideal(R: FiniteRing) -> Ideal:
    return Ideal((1 << R.order) - 1, (R.one,))


def _sum_flags(R: FiniteRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return _kernels.sumset(R.add, a, b)


def ideal_sum(R: FiniteRing, I: Ideal, J: Ideal) -> Ideal:
    flags = _sum_flags(R, I.flags(R.order), J.flags(R.order))
    return Ideal(bitset.from_flags(flags), I.generators + J.generators)


def additive_closure(R: FiniteRing, flags: np.ndarray) -> np.ndarray:
    """Smallest additive subgroup containing the marked elements."""
    cur = flags.copy()
    cur[R.zero] = True
    while True:
        nxt = _sum_flags(R, cur, cur)
        if np.array_equal(nxt, cur):
            return cur
        cur = nxt


def ideal_product(R: FiniteRing, I: Ideal, J: Ideal) -> Ideal:
    """Ideal generated by all products i*j: the additive closure of the product set."""
    li, lj = I.elements(), J.elements()
    flags = np.zeros(R.order, dtype=np.bool_)
    flags[R.mul[np.ix_(li, lj)].ravel()] = True
    return Ideal(bitset.from_flags(additive_closure(R, flags)))


def is_ideal(R: FiniteRing, members: int) -> bool:
    """Check the ideal axioms directly (used by tests and table sanity checks)."""
    flags = bitset.to_flags(members, R.order)
    if not flags[R.zero]:
        return False
    if not np.array_equal(_sum_flags(R, flags, flags), flags):
        return False
    idx = np.flatnonzero(flags)
    return bool(flags[R.mul[:, idx]].all())


def is_prime_ideal(R: FiniteRing, I: Ideal) -> bool:
    """True iff I is proper and ab in I forces a in I or b in I."""
    flags = I.flags(R.order)
    if flags.all():
        return False
    a, _ = _kernels.prime_violation(R.mul, flags)
    return a < 0


def _lex_key(ideal: Ideal) -> tuple:
    return (ideal.size, tuple(ideal.elements()))


@dataclass(frozen=True, eq=False)
class IdealLattice:
    """All ideals of a ring, sorted by (size, sorted member list).

    Index 0 is the zero ideal and the last index is the whole ring.
    ``principal_index[a]`` is the lattice index of <a>.
    """

    ring: FiniteRing
    ideals: tuple[Ideal, ...]
    prime: tuple[bool, ...]
    maximal: tuple[bool, ...]
    sum_table: np.ndarray
    principal_index: np.ndarray
    _products: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.ideals)

    @cached_property
    def index(self) -> dict[int, int]:
        return {I.members: i for i, I in enumerate(self.ideals)}

    @property
    def top(self) -> int:
        return len(self.ideals) - 1

    def nontrivial_proper(self) -> range:
        return range(1, len(self.ideals) - 1)

    def index_of(self, ideal: Ideal | int) -> int:
        key = ideal.members if isinstance(ideal, Ideal) else ideal
        return self.index[key]

    def principal(self, a: int) -> int:
        return int(self.principal_index[a])

    def generated(self, *elements: int) -> int:
        """Lattice index of the ideal generated by ``elements``."""
        out = 0
        for a in elements:
            out = int(self.sum_table[out, self.principal_index[a]])
        return out

    def product(self, i: int, j: int) -> int:
        key = (min(i, j), max(i, j))
        if key not in self._products:
            prod = ideal_product(self.ring, self.ideals[i], self.ideals[j])
            self._products[key] = self.index_of(prod)
        return self._products[key]

    def power(self, i: int, n: int) -> int:
        out = self.top
        for _ in range(n):
            out = self.product(out, i)
        return out

    def maximal_indices(self) -> list[int]:
        return [i for i, m in enumerate(self.maximal) if m]

    def prime_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.prime) if p]

    def label(self, i: int) -> str:
        if i == 0:
            return "0"
        if i == self.top:
            return "R"
        gens = self.ideals[i].generators
        return "<" + ", ".join(self.ring.labels[g] for g in gens) + ">"


def _generator_hint(R: FiniteRing, target: int, principal: list[tuple[int, int]]) -> tuple[int, ...]:
    """Greedy generator list for ``target`` from principal (mask, generator) pairs."""
    for mask, g in principal:
        if mask == target:
            return (g,)
    chosen: list[int] = []
    cur = 1 << R.zero
    cur_flags = bitset.to_flags(cur, R.order)
    for mask, g in sorted(principal, key=lambda t: (-bitset.size(t[0]), t[1])):
        if not bitset.is_subset(mask, target) or bitset.is_subset(mask, cur):
            continue
        chosen.append(g)
        cur_flags = _sum_flags(R, cur_flags, bitset.to_flags(mask, R.order))
        cur = bitset.from_flags(cur_flags)
        if cur == target:
            break
    return tuple(chosen)


def enumerate_ideals(R: FiniteRing, max_ideals: int = DEFAULT_IDEAL_CAP) -> IdealLattice:
    """Every ideal of R, by closing the principal ideals under pairwise sums."""
    n = R.order
    rows = np.zeros((n, n), dtype=np.bool_)
    rows[np.arange(n)[:, None], R.mul] = True

    flags_of: dict[int, np.ndarray] = {}
    principal: list[tuple[int, int]] = []
    elem_mask = []
    for a in range(n):
        mask = bitset.from_flags(rows[a])
        elem_mask.append(mask)
        if mask not in flags_of:
            flags_of[mask] = rows[a]
            principal.append((mask, a))

    found = list(flags_of)
    if len(found) > max_ideals:
        raise IdealCapError(f"{R.name}: more than {max_ideals} ideals")
    i = 0
    while i < len(found):
        fi = flags_of[found[i]]
        for j in range(i):
            s = _sum_flags(R, fi, flags_of[found[j]])
            key = bitset.from_flags(s)
            if key not in flags_of:
                flags_of[key] = s
                found.append(key)
                if len(found) > max_ideals:
                    raise IdealCapError(f"{R.name}: more than {max_ideals} ideals")
        i += 1

    ideals = sorted(
        (Ideal(m, _generator_hint(R, m, principal)) for m in found),
        key=_lex_key,
    )
    index = {I.members: k for k, I in enumerate(ideals)}
    k = len(ideals)
    sums = np.zeros((k, k), dtype=np.int32)
    for a in range(k):
        fa = flags_of[ideals[a].members]
        for b in range(a, k):
            s = bitset.from_flags(_sum_flags(R, fa, flags_of[ideals[b].members]))
            sums[a, b] = sums[b, a] = index[s]
    sums.setflags(write=False)

    prime = tuple(is_prime_ideal(R, I) for I in ideals)
    top = k - 1
    maximal = tuple(
        t != top and not any(ideals[t] < ideals[u] for u in range(k) if u != top)
        for t in range(k)
    )
    principal_index = np.array([index[m] for m in elem_mask], dtype=np.int64)
    principal_index.setflags(write=False)
    return IdealLattice(R, tuple(ideals), prime, maximal, sums, principal_index)


# ---------------------------------------------------------------------------
# local rings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalProfile:
    """Invariants of a local ring that the classification consumes.

    Every field except ``is_local`` is ``None`` for non-local rings.
    ``min_gen`` is 0 for fields.
    """

    is_local: bool
    maximal_ideal: Optional[int] = None
    residue_order: Optional[int] = None
    eta: Optional[int] = None
    min_gen: Optional[int] = None
    is_pir: Optional[bool] = None
    has_nil_pair: Optional[bool] = None
    has_nil_pair_xy_zero: Optional[bool] = None
    nil_pair: Optional[tuple[int, int]] = None

    @property
    def is_field(self) -> bool:
        return bool(self.is_local and self.eta == 1)


def nilpotency_index(lattice: IdealLattice, i: int, limit: int | None = None) -> int | None:
    """Least n >= 1 with I^n = 0, or None when I is not nilpotent."""
    limit = limit or lattice.ring.order + 1
    cur = i
    for n in range(1, limit + 1):
        if cur == 0:
            return n
        nxt = lattice.product(cur, i)
        if nxt == cur:
            return None
        cur = nxt
    return None


def minimal_generator_count(lattice: IdealLattice, target: int) -> int:
    """Least k such that some k elements generate the ideal at ``target``.

    Elements with the same principal ideal are interchangeable, so the
    search runs over distinct principal subideals.
    """
    if target == 0:
        return 0
    members = lattice.ideals[target].elements()
    cands = sorted({lattice.principal(a) for a in members} - {0})
    S = lattice.sum_table
    for k in range(1, len(cands) + 1):
        for combo in itertools.combinations(cands, k):
            acc = 0
            for c in combo:
                acc = S[acc, c]
            if acc == target:
                return k
    raise AssertionError("ideal not generated by its own elements")  # pragma: no cover


def local_profile(R: FiniteRing, lattice: IdealLattice) -> LocalProfile:
    maxes = lattice.maximal_indices()
    if len(maxes) != 1:
        return LocalProfile(is_local=False)
    m = maxes[0]
    M = lattice.ideals[m]
    eta = nilpotency_index(lattice, m)
    min_gen = minimal_generator_count(lattice, m)
    is_pir = len(set(lattice.principal_index.tolist())) == len(lattice)

    # generating pairs (x, y) of M with x^2 = y^2 = 0, x, y nonzero
    square_zero = np.array([x for x in M.elements() if x != R.zero and R.mul[x, x] == R.zero], dtype=np.int64)
    nil_pair = None
    has_pair = has_pair_xy = False
    if square_zero.size:
        pi = lattice.principal_index[square_zero]
        gen = lattice.sum_table[np.ix_(pi, pi)] == m
        xy_zero = R.mul[np.ix_(square_zero, square_zero)] == R.zero
        if gen.any():
            has_pair = True
            a, b = np.argwhere(gen)[0]
            nil_pair = (int(square_zero[a]), int(square_zero[b]))
        both = gen & xy_zero
        if both.any():
            has_pair_xy = True
            a, b = np.argwhere(both)[0]
            nil_pair = (int(square_zero[a]), int(square_zero[b]))
    return LocalProfile(
        is_local=True,
        maximal_ideal=m,
        residue_order=R.order // M.size,
        eta=eta,
        min_gen=min_gen,
        is_pir=is_pir,
        has_nil_pair=has_pair,
        has_nil_pair_xy_zero=has_pair_xy,
        nil_pair=nil_pair,
    )


# ---------------------------------------------------------------------------
# idempotent decomposition
# ---------------------------------------------------------------------------


def idempotents(R: FiniteRing) -> list[int]:
    return [e for e in range(R.order) if R.mul[e, e] == e]


def primitive_idempotents(R: FiniteRing) -> list[int]:
    """Nonzero idempotents e with no idempotent f outside {0, e} satisfying ef = f."""
    idem = idempotents(R)
    return [
        e
        for e in idem
        if e != R.zero and not any(f not in (R.zero, e) and R.mul[e, f] == f for f in idem)
    ]


def corner_ring(R: FiniteRing, e: int, name: str = "") -> FiniteRing:
    """The ring eR with unity e and the induced operations."""
    elems = np.unique(R.mul[e])
    pos = np.full(R.order, -1, dtype=np.int64)
    pos[elems] = np.arange(elems.size)
    add = pos[R.add[np.ix_(elems, elems)]].astype(np.int32)
    mul = pos[R.mul[np.ix_(elems, elems)]].astype(np.int32)
    labels = tuple(R.labels[a] for a in elems)
    return FiniteRing(
        int(elems.size), add, mul, int(pos[R.zero]), int(pos[e]), labels,
        name=name or f"{R.name} * [{R.labels[e]}]",
    )


def decompose_local(R: FiniteRing) -> list[FiniteRing]:
    """Split R into local factors e_i R along its primitive idempotents."""
    prims = primitive_idempotents(R)
    if len(prims) <= 1:
        return [R]
    total = R.zero
    for e in prims:
        total = int(R.add[total, e])
    assert total == R.one, "primitive idempotents do not sum to 1"
    return [corner_ring(R, e) for e in prims]
