"""Structural predictions of line / co-line membership, checked against recognition.

A ring is split into local factors along its idempotents, each factor is
profiled, and the prediction is read off the factor count and profiles:

line graph
    local: principal with eta(M) <= 4, or M generated by two elements with
    zero squares; two factors: both fields, or a field times a principal
    local ring with eta = 2; three factors: all fields; four or more: never.

complement of a line graph
    local: principal, or M generated by x, y with x^2 = y^2 = xy = 0;
    non-local: the same three classes as above.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Union

from .errors import PisGraphError
from .graph import Graph, pis_graph
from .lattice import IdealLattice, LocalProfile, decompose_local, enumerate_ideals, local_profile
from .recognition import LineVerdict, is_complement_line_graph, is_line_graph
from .ring import DEFAULT_ORDER_CAP, FiniteRing, build_ring
from .ringspec import RingSpec, format_ring_spec, parse_ring_spec

NEGATIVE = "NEGATIVE"

# positive rule tags
LOCAL_PIR_ETA4 = "local-pir-eta<=4"
LOCAL_NIL_PAIR = "local-square-zero-pair"
LOCAL_PIR = "local-pir"
LOCAL_NIL_PAIR_XY = "local-square-zero-pair-xy=0"
THREE_FIELDS = "three-fields"
TWO_FIELDS = "two-fields"
PIR_ETA2_TIMES_FIELD = "eta2-pir-times-field"


@dataclass(frozen=True)
class Rule:
    holds: bool
    tag: str
    detail: str = ""


@dataclass(frozen=True)
class Prediction:
    line: Rule
    coline: Rule
    factor_orders: tuple[int, ...]
    profiles: tuple[LocalProfile, ...]

    @property
    def predicts_line(self) -> bool:
        return self.line.holds

    @property
    def predicts_coline(self) -> bool:
        return self.coline.holds


def _negative(reason: str) -> Rule:
    return Rule(False, NEGATIVE, reason)


def _profiles(R: FiniteRing) -> tuple[list[FiniteRing], list[LocalProfile]]:
    factors = decompose_local(R)
    profiles = []
    for f in factors:
        p = local_profile(f, enumerate_ideals(f))
        assert p.is_local, f"factor {f.name} is not local"
        profiles.append(p)
    return factors, profiles


def _nonlocal_rule(profiles: list[LocalProfile]) -> Rule:
    n = len(profiles)
    fields = [p.is_field for p in profiles]
    if n >= 4:
        return _negative("n >= 4 local factors")
    if n == 3:
        if all(fields):
            return Rule(True, THREE_FIELDS)
        return _negative("n = 3 with a non-field factor")
    if all(fields):
        return Rule(True, TWO_FIELDS)
    if not any(fields):
        return _negative("n = 2 with both factors non-fields")
    other = profiles[fields.index(False)]
    if not other.is_pir:
        return _negative(f"non-field factor not principal (minGen = {other.min_gen})")
    if other.eta == 2:
        return Rule(True, PIR_ETA2_TIMES_FIELD)
    return _negative("eta(M1) >= 3")


def _line_rule(profiles: list[LocalProfile]) -> Rule:
    if len(profiles) > 1:
        return _nonlocal_rule(profiles)
    (p,) = profiles
    if p.is_pir:
        if p.eta <= 4:
            return Rule(True, LOCAL_PIR_ETA4)
        return _negative("eta(M) >= 5")
    if p.min_gen == 2 and p.has_nil_pair:
        return Rule(True, LOCAL_NIL_PAIR)
    if p.min_gen >= 3:
        return _negative("minGen >= 3")
    return _negative("minGen = 2 and no generating pair with x^2 = y^2 = 0")


def _coline_rule(profiles: list[LocalProfile]) -> Rule:
    if len(profiles) > 1:
        return _nonlocal_rule(profiles)
    (p,) = profiles
    if p.is_pir:
        return Rule(True, LOCAL_PIR)
    if p.min_gen == 2 and p.has_nil_pair_xy_zero:
        return Rule(True, LOCAL_NIL_PAIR_XY)
    if p.min_gen >= 3:
        return _negative("minGen >= 3")
    if p.has_nil_pair:
        return _negative("xy != 0 and not PIR")
    return _negative("minGen = 2 and no generating pair with x^2 = y^2 = xy = 0")


def classify_line(R: FiniteRing) -> Rule:
    return _line_rule(_profiles(R)[1])


def classify_coline(R: FiniteRing) -> Rule:
    return _coline_rule(_profiles(R)[1])


def classify(R: FiniteRing) -> Prediction:
    factors, profiles = _profiles(R)
    return Prediction(
        line=_line_rule(profiles),
        coline=_coline_rule(profiles),
        factor_orders=tuple(f.order for f in factors),
        profiles=tuple(profiles),
    )


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@dataclass
class Report:
    spec: str
    ring: Optional[str] = None
    order: Optional[int] = None
    factor_orders: tuple[int, ...] = ()
    ideal_total: Optional[int] = None
    nontrivial_proper: Optional[int] = None
    prime_count: Optional[int] = None
    pis: Optional[Graph] = None
    line: Optional[LineVerdict] = None
    coline: Optional[LineVerdict] = None
    prediction: Optional[Prediction] = None
    agreement_line: Optional[bool] = None
    agreement_coline: Optional[bool] = None
    timings: dict[str, float] = field(default_factory=dict)
    error: Optional[str] = None
    error_kind: Optional[str] = None

    @property
    def agrees(self) -> bool:
        return self.error is None and bool(self.agreement_line) and bool(self.agreement_coline)


class _Clock:
    def __init__(self, timings: dict[str, float]):
        self.timings = timings
        self.last = time.perf_counter()

    def lap(self, stage: str) -> None:
        now = time.perf_counter()
        self.timings[stage] = round((now - self.last) * 1000.0, 3)
        self.last = now


def verify(R: FiniteRing, spec: str = "", lattice: Optional[IdealLattice] = None, timings=None) -> Report:
    """Run both recognizers and both predictions on R and compare them."""
    report = Report(spec=spec or R.name, ring=R.name, order=R.order)
    if timings:
        report.timings.update(timings)
    clock = _Clock(report.timings)
    if lattice is None:
        lattice = enumerate_ideals(R)
        clock.lap("lattice")
    report.ideal_total = len(lattice)
    report.nontrivial_proper = len(lattice) - 2
    report.prime_count = sum(lattice.prime)
    report.pis = pis_graph(R, lattice)
    clock.lap("pis")
    report.line = is_line_graph(report.pis)
    clock.lap("line")
    report.coline = is_complement_line_graph(report.pis)
    clock.lap("coline")
    report.prediction = classify(R)
    report.factor_orders = report.prediction.factor_orders
    clock.lap("classify")
    report.agreement_line = report.prediction.predicts_line == report.line.is_line
    report.agreement_coline = report.prediction.predicts_coline == report.coline.is_line
    return report


def verify_spec(text: Union[str, RingSpec], max_order: int = DEFAULT_ORDER_CAP) -> Report:
    """Parse, build and verify; failures are captured in the report."""
    spec_text = text if isinstance(text, str) else format_ring_spec(text)
    timings: dict[str, float] = {}
    clock = _Clock(timings)
    try:
        spec = parse_ring_spec(text) if isinstance(text, str) else text
        clock.lap("parse")
    except PisGraphError as exc:
        return Report(spec=spec_text, error=str(exc), error_kind="parse", timings=timings)
    try:
        R = build_ring(spec, max_order=max_order)
        clock.lap("build")
    except PisGraphError as exc:
        return Report(spec=spec_text, error=str(exc), error_kind="build", timings=timings)
    try:
        return verify(R, spec_text, timings=timings)
    except PisGraphError as exc:
        return Report(spec=spec_text, ring=R.name, order=R.order, error=str(exc), error_kind="verify", timings=timings)


@dataclass(frozen=True)
class CensusSummary:
    total: int
    agreements: int
    disagreements: int
    errors: int
    seconds: float


def census(
    catalog: Iterable[Union[str, RingSpec]], parallel: int = 1, max_order: int = DEFAULT_ORDER_CAP
) -> tuple[list[Report], CensusSummary]:
    """Verify every catalog entry; reports come back in catalog order."""
    entries = list(catalog)
    start = time.perf_counter()
    if parallel > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            reports = list(pool.map(verify_spec, entries, [max_order] * len(entries)))
    else:
        reports = [verify_spec(e, max_order) for e in entries]
    errors = sum(r.error is not None for r in reports)
    agree = sum(r.agrees for r in reports)
    summary = CensusSummary(
        total=len(reports),
        agreements=agree,
        disagreements=len(reports) - agree - errors,
        errors=errors,
        seconds=round(time.perf_counter() - start, 3),
    )
    return reports, summary


def read_catalog(text: str) -> list[str]:
    """One ring spec per line; ``#`` starts a comment."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def load_catalog(path: Union[str, Path, None] = None) -> list[str]:
    if path is None:
        text = resources.files("pisgraph").joinpath("data/default_catalog.txt").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return read_catalog(text)
