"""Finite commutative rings with unity, stored as Cayley tables.

Elements are indices ``0..order-1``.  ``R.add[a, b]`` and ``R.mul[a, b]``
give the index of the sum and product.  Rings are built from a
:mod:`ringspec` AST or loaded from a table file, and are immutable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import _kernels, bitset
from .errors import AxiomError, OrderCapError, TableFormatError
from .ringspec import (
    GF,
    MonAlg,
    Monomial,
    Product,
    RingSpec,
    Table,
    Zmod,
    divides,
    flatten,
    format_monomial,
    format_ring_spec,
    validate,
)

DEFAULT_ORDER_CAP = 4096
AXIOM_CHECK_LIMIT = 256


@dataclass(frozen=True, eq=False)
class FiniteRing:
    order: int
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    labels: tuple[str, ...]
    provenance: Optional[RingSpec] = None
    name: str = ""
    neg: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        for t in (self.add, self.mul):
            t.setflags(write=False)
        neg = np.argmax(self.add == self.zero, axis=1)
        neg.setflags(write=False)
        object.__setattr__(self, "neg", neg)
        if not self.name:
            desc = format_ring_spec(self.provenance) if self.provenance is not None else f"ring of order {self.order}"
            object.__setattr__(self, "name", desc)

    def __repr__(self) -> str:
        return f"FiniteRing({self.name!r}, order={self.order})"

    def element(self, label: str) -> int:
        """Index of the element printed as ``label``."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def power(self, a: int, e: int) -> int:
        out = self.one
        for _ in range(e):
            out = int(self.mul[out, a])
        return out


def units(R: FiniteRing) -> int:
    """Units of R as an element bitmask."""
    return bitset.from_flags(np.any(R.mul == R.one, axis=1))


def is_unit(R: FiniteRing, a: int) -> bool:
    return bool(np.any(R.mul[a] == R.one))


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


def check_axioms(add: np.ndarray, mul: np.ndarray, zero: int, one: int) -> None:
    """Exhaustively verify the commutative-ring-with-unity axioms.

    Raises :class:`AxiomError` naming the first failing axiom and witnesses.
    """
    n = add.shape[0]
    if zero == one:
        raise AxiomError("one != zero", (zero, one))
    for name, t in (("additive commutativity", add), ("multiplicative commutativity", mul)):
        bad = np.argwhere(t != t.T)
        if bad.size:
            raise AxiomError(name, tuple(int(v) for v in bad[0]))
    bad = np.flatnonzero(add[:, zero] != np.arange(n))
    if bad.size:
        raise AxiomError("additive identity", (int(bad[0]),))
    bad = np.flatnonzero(mul[:, one] != np.arange(n))
    if bad.size:
        raise AxiomError("multiplicative identity", (int(bad[0]),))
    bad = np.flatnonzero(~np.any(add == zero, axis=1))
    if bad.size:
        raise AxiomError("additive inverse", (int(bad[0]),))
    for name, t in (("additive associativity", add), ("multiplicative associativity", mul)):
        hit = _kernels.assoc_violation(t)
        if hit[0] >= 0:
            raise AxiomError(name, hit)
    hit = _kernels.distrib_violation(add, mul)
    if hit[0] >= 0:
        raise AxiomError("distributivity", hit)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def _zmod_tables(n: int):
    r = np.arange(n, dtype=np.int64)
    add = (r[:, None] + r[None, :]) % n
    mul = (r[:, None] * r[None, :]) % n
    return add.astype(np.int32), mul.astype(np.int32), [str(i) for i in range(n)]


def _polymod(coeffs: list[int], modulus: list[int], p: int) -> list[int]:
    """Remainder of ``coeffs`` modulo a monic ``modulus`` (low degree first)."""
    c = list(coeffs)
    k = len(modulus) - 1
    for d in range(len(c) - 1, k - 1, -1):
        lead = c[d] % p
        if lead:
            for i in range(k + 1):
                c[d - k + i] = (c[d - k + i] - lead * modulus[i]) % p
    return [v % p for v in c[:k]] + [0] * max(0, k - len(c))


def _is_irreducible(poly: list[int], p: int) -> bool:
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not any(_polymod(poly, divisor, p)):
                return False
    return True


def gf_modulus(p: int, k: int) -> list[int]:
    """Smallest monic irreducible polynomial of degree k over F_p.

    Coefficients low degree first.  Candidates are ordered by their
    coefficient vectors read from degree k-1 down to degree 0.
    """
    for code in range(p**k):
        tail = [(code // p**i) % p for i in range(k)]
        poly = tail + [1]
        if k == 1 or _is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _gf_label(digits: list[int]) -> str:
    terms = []
    for i in range(len(digits) - 1, -1, -1):
        c = digits[i]
        if not c:
            continue
        coef = "" if (c == 1 and i > 0) else str(c)
        mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
        terms.append(coef + mono)
    return "+".join(terms) if terms else "0"


def _gf_tables(p: int, k: int):
    if k == 1:
        return _zmod_tables(p)
    q = p**k
    modulus = gf_modulus(p, k)
    codes = np.arange(q)
    digits = np.stack([(codes // p**i) % p for i in range(k)], axis=1)
    weights = p ** np.arange(k)
    # xpow[i][b] = digits of a^i * b
    xpow = [digits]
    for _ in range(1, k):
        prev = xpow[-1]
        shifted = np.zeros_like(prev)
        shifted[:, 1:] = prev[:, :-1]
        top = prev[:, -1]
        shifted = (shifted - top[:, None] * np.array(modulus[:k])[None, :]) % p
        xpow.append(shifted)
    stack = np.stack(xpow, axis=0)  # (k, q, k)
    prod_digits = np.einsum("ai,ibj->abj", digits, stack) % p
    mul = (prod_digits @ weights).astype(np.int32)
    add = (((digits[:, None, :] + digits[None, :, :]) % p) @ weights).astype(np.int32)
    labels = [_gf_label(list(d)) for d in digits]
    return add, mul, labels


def monomial_basis(variables: tuple[str, ...], killed: tuple[Monomial, ...]) -> list[Monomial]:
    """Monomials not divisible by any killed monomial, by degree then name order."""
    nv = len(variables)
    start = (0,) * nv
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(nv):
                cand = m[:i] + (m[i] + 1,) + m[i + 1 :]
                if cand in seen or any(divides(kill, cand) for kill in killed):
                    continue
                seen.add(cand)
                nxt.append(cand)
        frontier = nxt
    return sorted(seen, key=lambda m: (sum(m), tuple(-e for e in m)))


def _monalg_tables(spec: MonAlg, cap: int):
    from .ringspec import prime_power

    p, k = prime_power(spec.q)
    basis = monomial_basis(spec.variables, spec.killed)
    d = len(basis)
    order = spec.q**d
    if order > cap:
        raise OrderCapError(f"{format_ring_spec(spec)} has order {order} > cap {cap}")
    fadd, fmul, flabels = _gf_tables(p, k)
    q = spec.q
    codes = np.arange(order)
    digits = np.stack([(codes // q**i) % q for i in range(d)], axis=1)
    weights = (q ** np.arange(d)).astype(np.int64)
    position = {m: i for i, m in enumerate(basis)}

    add = np.zeros((order, order), dtype=np.int64)
    for i in range(d):
        add += fadd[digits[:, None, i], digits[None, :, i]].astype(np.int64) * weights[i]

    acc = [np.zeros((order, order), dtype=np.int32) for _ in range(d)]
    for i, mi in enumerate(basis):
        for j, mj in enumerate(basis):
            t = position.get(tuple(a + b for a, b in zip(mi, mj)))
            if t is None:
                continue
            term = fmul[digits[:, None, i], digits[None, :, j]]
            acc[t] = fadd[acc[t], term]
    mul = np.zeros((order, order), dtype=np.int64)
    for t in range(d):
        mul += acc[t].astype(np.int64) * weights[t]

    names = tuple(spec.variables)
    basis_names = [format_monomial(m, names) for m in basis]
    labels = []
    for row in digits:
        terms = []
        for c, bname in zip(row, basis_names):
            if not c:
                continue
            cl = flabels[c]
            if "+" in cl:
                cl = f"({cl})"
            if not bname:
                terms.append(cl)
            elif cl == "1":
                terms.append(bname)
            else:
                terms.append(f"{cl}{bname}")
        labels.append("+".join(terms) if terms else "0")
    return add.astype(np.int32), mul.astype(np.int32), labels


def _combine(ta: np.ndarray, tb: np.ndarray) -> np.ndarray:
    na, nb = ta.shape[0], tb.shape[0]
    out = ta[:, None, :, None].astype(np.int64) * nb + tb[None, :, None, :]
    return out.reshape(na * nb, na * nb).astype(np.int32)


def product_ring(factors: list[FiniteRing], provenance: Optional[RingSpec] = None) -> FiniteRing:
    """Componentwise direct product; the first factor is the most significant digit."""
    add, mul = factors[0].add, factors[0].mul
    order = factors[0].order
    zero, one = factors[0].zero, factors[0].one
    for f in factors[1:]:
        add, mul = _combine(add, f.add), _combine(mul, f.mul)
        zero = zero * f.order + f.zero
        one = one * f.order + f.one
        order *= f.order
    labels = tuple("(" + ", ".join(parts) + ")" for parts in itertools.product(*(f.labels for f in factors)))
    return FiniteRing(order, add, mul, zero, one, labels, provenance)


def _spec_order(spec: RingSpec) -> Optional[int]:
    if isinstance(spec, Zmod):
        return spec.n
    if isinstance(spec, GF):
        return spec.order
    if isinstance(spec, MonAlg):
        return spec.q ** len(monomial_basis(spec.variables, spec.killed))
    if isinstance(spec, Product):
        total = 1
        for f in spec.factors:
            o = _spec_order(f)
            if o is None:
                return None
            total *= o
        return total
    return None


def build_ring(spec: RingSpec, max_order: int = DEFAULT_ORDER_CAP, check: Optional[bool] = None) -> FiniteRing:
    """Construct the finite ring described by ``spec``.

    Axioms are verified exhaustively when the order is at most 256, unless
    ``check`` forces it one way or the other.
    """
    validate(spec)
    spec = flatten(spec)
    if isinstance(spec, MonAlg):
        spec = MonAlg(spec.q, tuple(spec.variables), tuple(sorted(set(spec.killed), key=lambda m: (sum(m), tuple(-e for e in m)))))
    if isinstance(spec, Table):
        return load_table_ring(spec.source, max_order=max_order)
    order = _spec_order(spec)
    if order is not None and order > max_order:
        raise OrderCapError(f"{format_ring_spec(spec)} has order {order} > cap {max_order}")
    if isinstance(spec, Zmod):
        add, mul, labels = _zmod_tables(spec.n)
        ring = FiniteRing(spec.n, add, mul, 0, 1, tuple(labels), spec)
    elif isinstance(spec, GF):
        add, mul, labels = _gf_tables(spec.p, spec.k)
        ring = FiniteRing(spec.order, add, mul, 0, 1, tuple(labels), spec)
    elif isinstance(spec, MonAlg):
        add, mul, labels = _monalg_tables(spec, max_order)
        ring = FiniteRing(add.shape[0], add, mul, 0, 1, tuple(labels), spec)
    else:
        parts = [build_ring(f, max_order=max_order, check=False) for f in spec.factors]
        ring = product_ring(parts, spec)
    if check if check is not None else ring.order <= AXIOM_CHECK_LIMIT:
        check_axioms(ring.add, ring.mul, ring.zero, ring.one)
    return ring


# ---------------------------------------------------------------------------
# table files
# ---------------------------------------------------------------------------


def _expect_header(line: str, key: str, lineno: int) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != key:
        raise TableFormatError(f"line {lineno}: expected '{key} <int>', got {line!r}")
    try:
        return int(parts[1])
    except ValueError:
        raise TableFormatError(f"line {lineno}: '{parts[1]}' is not an integer") from None


def parse_table_text(text: str, max_order: int = DEFAULT_ORDER_CAP):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 3:
        raise TableFormatError("table file needs 'order', 'zero' and 'one' header lines")
    n = _expect_header(lines[0], "order", 1)
    if n < 2:
        raise TableFormatError(f"order {n} must be at least 2")
    if n > max_order:
        raise OrderCapError(f"table order {n} > cap {max_order}")
    zero = _expect_header(lines[1], "zero", 2)
    one = _expect_header(lines[2], "one", 3)
    body = lines[3:]
    if len(body) != 2 * n:
        raise TableFormatError(f"expected {2 * n} table rows, found {len(body)}")
    rows = []
    for i, ln in enumerate(body, start=4):
        try:
            row = [int(v) for v in ln.split()]
        except ValueError:
            raise TableFormatError(f"row {i}: non-integer entry") from None
        if len(row) != n:
            raise TableFormatError(f"row {i}: expected {n} entries, found {len(row)}")
        rows.append(row)
    tables = np.array(rows, dtype=np.int64)
    if tables.min() < 0 or tables.max() >= n:
        raise TableFormatError("table entry out of range")
    for name, v in (("zero", zero), ("one", one)):
        if not 0 <= v < n:
            raise TableFormatError(f"{name} index {v} out of range")
    return n, zero, one, tables[:n].astype(np.int32), tables[n:].astype(np.int32)


def load_table_ring(source, max_order: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Load a ring from a table file and verify every axiom."""
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TableFormatError(f"cannot read table file {path}: {exc}") from exc
    n, zero, one, add, mul = parse_table_text(text, max_order=max_order)
    check_axioms(add, mul, zero, one)
    return FiniteRing(n, add, mul, zero, one, tuple(str(i) for i in range(n)), Table(str(source)))


def format_table(R: FiniteRing) -> str:
    """Serialize ``R`` in the table-file format."""
    out = [f"order {R.order}", f"zero {R.zero}", f"one {R.one}"]
    for t in (R.add, R.mul):
        out.extend(" ".join(str(int(v)) for v in row) for row in t)
    return "\n".join(out) + "\n"
