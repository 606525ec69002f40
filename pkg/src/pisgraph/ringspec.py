"""Ring-spec language: AST, parser and canonical formatter.

Grammar (whitespace-insensitive)::

    spec := "Z" INT
          | "GF" INT [INT]            # "GF q" (q a prime power) or "GF p k"
          | "mon" INT "[" var ("," var)* "]" "/" "(" mono ("," mono)* ")"
          | "prod" "(" spec ("," spec)* ")"
          | "table" PATH
    mono := var ["^" INT] (["*"] var ["^" INT])*

Variables are runs of letters.  Inside a monomial, juxtaposed names such as
``xy`` are split against the declared variable list (longest name first).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import SpecSemanticError, SpecSyntaxError

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class Zmod:
    n: int


@dataclass(frozen=True)
class GF:
    p: int
    k: int = 1

    @property
    def order(self) -> int:
        return self.p**self.k


@dataclass(frozen=True)
class MonAlg:
    q: int
    variables: tuple[str, ...]
    killed: tuple[Monomial, ...]


@dataclass(frozen=True)
class Product:
    factors: tuple["RingSpec", ...]


@dataclass(frozen=True)
class Table:
    source: str


RingSpec = Union[Zmod, GF, MonAlg, Product, Table]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q == p**k and p prime, else None."""
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def divides(m: Monomial, n: Monomial) -> bool:
    return all(a <= b for a, b in zip(m, n))


def validate(spec: RingSpec) -> None:
    """Raise :class:`SpecSemanticError` unless ``spec`` describes a ring we can build."""
    if isinstance(spec, Zmod):
        if spec.n < 2:
            raise SpecSemanticError(f"Z {spec.n}: modulus must be at least 2")
    elif isinstance(spec, GF):
        if not is_prime(spec.p):
            raise SpecSemanticError(f"GF: characteristic {spec.p} is not prime")
        if spec.k < 1:
            raise SpecSemanticError(f"GF: degree {spec.k} must be at least 1")
    elif isinstance(spec, MonAlg):
        if prime_power(spec.q) is None:
            raise SpecSemanticError(f"mon: coefficient field order {spec.q} is not a prime power")
        nvars = len(spec.variables)
        if not 1 <= nvars <= 4:
            raise SpecSemanticError(f"mon: expected 1..4 variables, got {nvars}")
        if len(set(spec.variables)) != nvars:
            raise SpecSemanticError("mon: repeated variable name")
        if not spec.killed:
            raise SpecSemanticError("mon: killed monomial set is empty")
        for mono in spec.killed:
            if len(mono) != nvars:
                raise SpecSemanticError("mon: monomial arity does not match variables")
            if sum(mono) == 0:
                raise SpecSemanticError("mon: the constant monomial cannot be killed")
        for i, name in enumerate(spec.variables):
            pure = any(m[i] > 0 and sum(m) == m[i] for m in spec.killed)
            if not pure:
                raise SpecSemanticError(f"mon: variable {name} is not nilpotent")
    elif isinstance(spec, Product):
        if len(spec.factors) < 2:
            raise SpecSemanticError("prod: needs at least 2 factors")
        for f in spec.factors:
            validate(f)
    elif isinstance(spec, Table):
        if not spec.source:
            raise SpecSemanticError("table: empty path")
    else:
        raise SpecSemanticError(f"unknown ring spec {spec!r}")


def flatten(spec: RingSpec) -> RingSpec:
    """Flatten nested products: prod(a, prod(b, c)) -> prod(a, b, c)."""
    if not isinstance(spec, Product):
        return spec
    out: list[RingSpec] = []
    for f in spec.factors:
        f = flatten(f)
        if isinstance(f, Product):
            out.extend(f.factors)
        else:
            out.append(f)
    return Product(tuple(out))


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> SpecSyntaxError:
        return SpecSyntaxError(message, self.pos if pos is None else pos, self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise self.error(f"expected '{ch}', found '{found}'")
        self.pos += 1

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def word(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if start == self.pos:
            found = self.peek() or "end of input"
            raise self.error(f"expected a name, found '{found}'")
        return self.text[start : self.pos]

    def spec(self) -> RingSpec:
        self.skip()
        start = self.pos
        # keywords may run straight into digits ("Z16", "GF4")
        for kw in ("prod", "table", "mon", "GF", "Z"):
            if self.text.startswith(kw, self.pos):
                self.pos += len(kw)
                break
        else:
            raise self.error("expected one of Z, GF, mon, prod, table")
        if kw == "Z":
            return Zmod(self.integer())
        if kw == "GF":
            first = self.integer()
            if self.peek().isdigit():
                return GF(first, self.integer())
            pk = prime_power(first)
            if pk is None:
                raise SpecSemanticError(f"GF {first}: order is not a prime power")
            return GF(*pk)
        if kw == "mon":
            return self.monalg()
        if kw == "prod":
            self.expect("(")
            factors = [self.spec()]
            while self.accept(","):
                factors.append(self.spec())
            self.expect(")")
            return Product(tuple(factors))
        # table PATH: raw text up to a delimiter
        self.skip()
        begin = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ",)":
            self.pos += 1
        path = self.text[begin : self.pos].strip()
        if not path:
            raise self.error("expected a table path", start)
        return Table(path)

    def monalg(self) -> MonAlg:
        q = self.integer()
        self.expect("[")
        names = [self.word()]
        while self.accept(","):
            names.append(self.word())
        self.expect("]")
        self.expect("/")
        self.expect("(")
        monos = [self.monomial(names)]
        while self.accept(","):
            monos.append(self.monomial(names))
        self.expect(")")
        killed = tuple(sorted(set(monos), key=_mono_key))
        return MonAlg(q, tuple(names), killed)

    def monomial(self, names: list[str]) -> Monomial:
        exps = [0] * len(names)
        by_length = sorted(range(len(names)), key=lambda i: -len(names[i]))
        seen = False
        while True:
            if self.peek().isalpha():
                start = self.pos
                run = self.word()
                last = None
                i = 0
                while i < len(run):
                    for j in by_length:
                        if run.startswith(names[j], i):
                            break
                    else:
                        raise self.error(f"unknown variable in '{run}'", start + i)
                    exps[j] += 1
                    last = j
                    i += len(names[j])
                if self.accept("^"):
                    exps[last] += self.integer() - 1
                seen = True
                self.accept("*")
            else:
                break
        if not seen:
            raise self.error("expected a monomial")
        return tuple(exps)


def parse_ring_spec(text: str) -> RingSpec:
    """Parse and validate a ring-spec string."""
    if not text or not text.strip():
        raise SpecSyntaxError("empty ring spec", 0, text or "")
    p = _Parser(text)
    spec = p.spec()
    if p.peek():
        raise p.error(f"unexpected trailing input '{p.peek()}'")
    validate(spec)
    return spec


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------


def _mono_key(m: Monomial) -> tuple:
    return (sum(m), tuple(-e for e in m))


def format_monomial(m: Monomial, names: tuple[str, ...]) -> str:
    parts = []
    for e, name in zip(m, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "".join(parts) if all(len(n) == 1 for n in names) else "*".join(parts)


def format_ring_spec(spec: RingSpec) -> str:
    """Canonical text for ``spec``; ``parse_ring_spec`` inverts it."""
    if isinstance(spec, Zmod):
        return f"Z {spec.n}"
    if isinstance(spec, GF):
        return f"GF {spec.p}" if spec.k == 1 else f"GF {spec.p} {spec.k}"
    if isinstance(spec, MonAlg):
        monos = ", ".join(format_monomial(m, spec.variables) for m in spec.killed)
        return f"mon {spec.q} [{', '.join(spec.variables)}] / ({monos})"
    if isinstance(spec, Product):
        return "prod(" + ", ".join(format_ring_spec(f) for f in spec.factors) + ")"
    if isinstance(spec, Table):
        return f"table {spec.source}"
    raise TypeError(f"not a ring spec: {spec!r}")
