from __future__ import annotations

import pytest

from helpers import DATA, lattice, pis, product_ideal, ring, vertex
from pisgraph.classifier import (
    LOCAL_NIL_PAIR,
    LOCAL_NIL_PAIR_XY,
    LOCAL_PIR,
    LOCAL_PIR_ETA4,
    NEGATIVE,
    PIR_ETA2_TIMES_FIELD,
    THREE_FIELDS,
    TWO_FIELDS,
    census,
    classify,
    classify_coline,
    classify_line,
    load_catalog,
    read_catalog,
    verify,
    verify_spec,
)
from pisgraph.graph import complement, induced, is_isomorphic_small, make_named_graph
from pisgraph.recognition import forbidden_library
from pisgraph.ring import load_table_ring

CLAW = make_named_graph("star", 3)
CO_CLAW = complement(CLAW)
CATALOG = load_catalog()


# -- rule examples -----------------------------------------------------------


@pytest.mark.parametrize(
    "text,holds,tag,detail",
    [
        ("Z 16", True, LOCAL_PIR_ETA4, ""),
        ("mon 2 [x,y] / (x^2, y^2)", True, LOCAL_NIL_PAIR, ""),
        ("prod(Z 4, GF 2)", True, PIR_ETA2_TIMES_FIELD, ""),
        ("prod(Z 8, GF 2)", False, NEGATIVE, "eta(M1) >= 3"),
        ("prod(Z 2, Z 2, Z 2, Z 2)", False, NEGATIVE, "n >= 4 local factors"),
        ("Z 32", False, NEGATIVE, "eta(M) >= 5"),
        ("mon 2 [x,y,z] / (x^2, y^2, z^2, xy, xz, yz)", False, NEGATIVE, "minGen >= 3"),
        ("prod(Z 2, Z 3, Z 5)", True, THREE_FIELDS, ""),
        ("prod(Z 2, Z 3)", True, TWO_FIELDS, ""),
    ],
)
def test_classify_line_examples(text, holds, tag, detail):
    rule = classify_line(ring(text))
    assert (rule.holds, rule.tag) == (holds, tag)
    if detail:
        assert rule.detail == detail


@pytest.mark.parametrize(
    "text,holds,tag,detail",
    [
        ("Z 64", True, LOCAL_PIR, ""),
        ("mon 2 [x,y] / (x^2, y^2, xy)", True, LOCAL_NIL_PAIR_XY, ""),
        ("mon 2 [x,y] / (x^2, y^2)", False, NEGATIVE, "xy != 0 and not PIR"),
        ("prod(Z 4, Z 4)", False, NEGATIVE, "n = 2 with both factors non-fields"),
    ],
)
def test_classify_coline_examples(text, holds, tag, detail):
    rule = classify_coline(ring(text))
    assert (rule.holds, rule.tag) == (holds, tag)
    if detail:
        assert rule.detail == detail


@pytest.mark.parametrize("text", CATALOG)
def test_non_local_rules_identical_on_both_sides(text):
    pred = classify(ring(text))
    assert pred.factor_orders
    if len(pred.factor_orders) > 1:
        assert pred.line == pred.coline


@pytest.mark.parametrize("text", CATALOG)
def test_every_verdict_has_one_tag(text):
    pred = classify(ring(text))
    for rule in (pred.line, pred.coline):
        assert rule.tag
        assert rule.holds == (rule.tag != NEGATIVE)
        if not rule.holds:
            assert rule.detail


def test_field_factor_either_side():
    assert classify_line(ring("prod(GF 2, Z 4)")).tag == PIR_ETA2_TIMES_FIELD
    assert classify_line(ring("prod(Z 4, GF 2)")).tag == PIR_ETA2_TIMES_FIELD


# -- verification ------------------------------------------------------------


def test_verify_examples():
    r = verify(ring("Z 16"))
    assert r.agreement_line and r.agreement_coline and r.agrees
    r = verify(ring("mon 2 [x,y] / (x^2, y^2)"))
    assert r.line.is_line and not r.coline.is_line and r.agrees
    r = verify(ring("mon 2 [x,y,z] / (x^2, y^2, z^2, xy, xz, yz)"))
    assert not r.line.is_line and not r.coline.is_line and r.agrees


def test_verify_report_counts():
    r = verify(ring("Z 16"))
    assert (r.order, r.ideal_total, r.nontrivial_proper, r.prime_count) == (16, 5, 3, 1)
    assert set(r.timings) == {"lattice", "pis", "line", "coline", "classify"}


@pytest.mark.parametrize(
    "name,line,coline",
    [("z4_x_sq", True, False), ("z4_x_sq_2x", True, True), ("z4_x_sq_eq_2", True, True)],
)
def test_table_rings_with_mixed_characteristic(name, line, coline):
    R = load_table_ring(DATA / f"{name}.tbl")
    r = verify(R)
    assert r.agrees
    assert (r.line.is_line, r.coline.is_line) == (line, coline)
    assert r.factor_orders == (R.order,)


def test_verify_spec_errors():
    r = verify_spec("Z 1")
    assert r.error_kind == "parse" and not r.agrees
    r = verify_spec("Z 5000")
    assert r.error_kind == "build"
    r = verify_spec("table /nonexistent/file.tbl")
    assert r.error_kind == "build"


def test_census_single():
    reports, summary = census(["Z 4"])
    assert len(reports) == 1 and reports[0].agrees
    assert (summary.total, summary.agreements, summary.disagreements, summary.errors) == (1, 1, 0, 0)


def test_census_isolates_errors():
    reports, summary = census(["Z 4", "Z 9000", "GF 3"])
    assert [r.error_kind for r in reports] == [None, "build", None]
    assert (summary.total, summary.agreements, summary.errors, summary.disagreements) == (3, 2, 1, 0)


def test_census_parallel_preserves_order():
    entries = ["Z 8", "prod(Z 2, Z 3)", "GF 4", "mon 2 [x] / (x^2)"]
    serial, _ = census(entries)
    parallel, _ = census(entries, parallel=2)
    assert [r.spec for r in parallel] == entries
    assert [(r.line.is_line, r.coline.is_line) for r in parallel] == [
        (r.line.is_line, r.coline.is_line) for r in serial
    ]


def test_read_catalog():
    assert read_catalog("# c\nZ 4  # four\n\n  GF 2\n") == ["Z 4", "GF 2"]


def test_default_catalog_covers_branches():
    tags = set()
    for text in CATALOG:
        pred = classify(ring(text))
        tags.add(pred.line.tag if pred.line.holds else pred.line.detail)
        tags.add(pred.coline.tag if pred.coline.holds else pred.coline.detail)
    for needed in (
        LOCAL_PIR_ETA4, LOCAL_NIL_PAIR, LOCAL_PIR, LOCAL_NIL_PAIR_XY, THREE_FIELDS, TWO_FIELDS,
        PIR_ETA2_TIMES_FIELD, "n >= 4 local factors", "eta(M1) >= 3", "minGen >= 3", "eta(M) >= 5",
        "xy != 0 and not PIR", "n = 3 with a non-field factor", "n = 2 with both factors non-fields",
    ):
        assert needed in tags, needed


# -- witness sets from the proofs --------------------------------------------


class Factor:
    """Named ideals of one local factor, as member masks."""

    def __init__(self, text: str):
        self.R, self.L = ring(text), lattice(text)
        (self.m,) = self.L.maximal_indices()

    @property
    def zero(self) -> int:
        return 1 << self.R.zero

    @property
    def full(self) -> int:
        return (1 << self.R.order) - 1

    @property
    def M(self) -> int:
        return self.L.ideals[self.m].members

    def M_pow(self, k: int) -> int:
        return self.L.ideals[self.L.power(self.m, k)].members

    def gen(self, *labels: str) -> int:
        return self.L.ideals[self.L.generated(*(self.R.element(s) for s in labels))].members


def _product_subgraph(factor_texts, rows):
    text = "prod(" + ", ".join(factor_texts) + ")"
    L, G = lattice(text), pis(text)
    orders = [ring(t).order for t in factor_texts]
    verts = [vertex(L, product_ideal(orders, row)) for row in rows]
    assert len(set(verts)) == len(verts)
    return induced(G, verts)


def test_witness_four_fields_claw():
    f = Factor("Z 2")
    M, R = f.M, f.full
    sub = _product_subgraph(["Z 2"] * 4, [[M, R, R, R], [M, M, R, R], [M, M, M, R], [M, M, R, M]])
    assert is_isomorphic_small(sub, CLAW)


def test_witness_four_fields_co_claw():
    f = Factor("Z 2")
    M, R = f.M, f.full
    sub = _product_subgraph(["Z 2"] * 4, [[M, M, R, R], [R, M, M, R], [M, R, M, R], [M, M, M, R]])
    assert is_isomorphic_small(sub, CO_CLAW)


def test_witness_three_factors_claw():
    a, b, c = Factor("Z 4"), Factor("Z 2"), Factor("Z 3")
    rows = [
        [a.M, b.full, c.full],
        [a.zero, b.full, c.zero],
        [a.M, b.zero, c.zero],
        [a.zero, b.zero, c.full],
    ]
    assert is_isomorphic_small(_product_subgraph(["Z 4", "Z 2", "Z 3"], rows), CLAW)


def test_witness_three_factors_co_claw():
    a, b, c = Factor("Z 4"), Factor("Z 2"), Factor("Z 3")
    rows = [
        [a.M, b.full, c.full],
        [a.M, b.zero, c.full],
        [a.zero, b.full, c.full],
        [a.full, b.full, c.zero],
    ]
    assert is_isomorphic_small(_product_subgraph(["Z 4", "Z 2", "Z 3"], rows), CO_CLAW)


def test_witness_two_non_fields_claw():
    a, b = Factor("Z 4"), Factor("Z 4")
    rows = [[a.full, b.M], [a.M, b.zero], [a.M, b.M], [a.zero, b.M]]
    assert is_isomorphic_small(_product_subgraph(["Z 4", "Z 4"], rows), CLAW)


def test_witness_two_non_fields_co_claw():
    a, b = Factor("Z 4"), Factor("Z 4")
    rows = [[a.M, b.full], [a.zero, b.full], [a.M, b.zero], [a.full, b.zero]]
    assert is_isomorphic_small(_product_subgraph(["Z 4", "Z 4"], rows), CO_CLAW)


NIL2 = "mon 2 [x, y] / (x^2, y^2, xy)"


def test_witness_two_generator_factor_claw():
    a, f = Factor(NIL2), Factor("GF 2")
    rows = [[a.M, f.full], [a.zero, f.full], [a.gen("x"), f.zero], [a.gen("y"), f.zero]]
    assert is_isomorphic_small(_product_subgraph([NIL2, "GF 2"], rows), CLAW)


def _is_complement_of_library_graph(sub):
    co = complement(sub)
    return any(is_isomorphic_small(co, g) for g in forbidden_library().graphs if g.n == sub.n)


def test_witness_two_generator_factor_five_vertices():
    a, f = Factor(NIL2), Factor("GF 2")
    rows = [
        [a.M, f.zero],
        [a.zero, f.full],
        [a.gen("x"), f.zero],
        [a.gen("y"), f.zero],
        [a.gen("x+y"), f.zero],
    ]
    sub = _product_subgraph([NIL2, "GF 2"], rows)
    assert _is_complement_of_library_graph(sub)


def test_witness_eta_three_times_field_claw():
    a, f = Factor("Z 8"), Factor("GF 2")
    rows = [[a.M, f.full], [a.M_pow(2), f.full], [a.zero, f.full], [a.M_pow(2), f.zero]]
    assert is_isomorphic_small(_product_subgraph(["Z 8", "GF 2"], rows), CLAW)


def test_witness_eta_three_times_field_six_vertices():
    a, f = Factor("Z 8"), Factor("GF 2")
    rows = [
        [a.M, f.zero],
        [a.M_pow(2), f.full],
        [a.M, f.full],
        [a.zero, f.full],
        [a.M_pow(2), f.zero],
        [a.full, f.zero],
    ]
    sub = _product_subgraph(["Z 8", "GF 2"], rows)
    assert _is_complement_of_library_graph(sub)


def _local_subgraph(text, masks):
    L, G = lattice(text), pis(text)
    verts = [vertex(L, m) for m in masks]
    assert len(set(verts)) == len(verts)
    return induced(G, verts)


def test_witness_powers_of_maximal_ideal_claw():
    f = Factor("Z 32")
    sub = _local_subgraph("Z 32", [f.M_pow(k) for k in (1, 2, 3, 4)])
    assert is_isomorphic_small(sub, CLAW)


THREE = "mon 2 [x, y, z] / (x^2, y^2, z^2, xy, xz, yz)"


def test_witness_three_generators_claw():
    f = Factor(THREE)
    sub = _local_subgraph(THREE, [f.M, f.gen("x"), f.gen("y"), f.gen("z")])
    assert is_isomorphic_small(sub, CLAW)


def test_witness_three_generators_co_claw():
    f = Factor(THREE)
    sub = _local_subgraph(THREE, [f.gen("x"), f.gen("x", "y"), f.gen("x", "z"), f.gen("y+z")])
    assert is_isomorphic_small(sub, CO_CLAW)


def test_witness_four_generators_co_claw():
    text = "mon 2 [x, y, z, w] / (x^2, y^2, z^2, w^2, xy, xz, xw, yz, yw, zw)"
    f = Factor(text)
    masks = [f.gen("w"), f.gen("y", "z", "w"), f.gen("x", "z", "w"), f.gen("x", "y", "w")]
    assert is_isomorphic_small(_local_subgraph(text, masks), CO_CLAW)


SQUARE = "mon 2 [x, y] / (x^3, xy, y^2)"


def test_witness_nonzero_square_co_claw():
    f = Factor(SQUARE)
    sub = _local_subgraph(SQUARE, [f.gen("x^2"), f.gen("x"), f.gen("y"), f.gen("x+y")])
    assert is_isomorphic_small(sub, CO_CLAW)


def test_witness_nonzero_square_line_set_repeats_a_vertex():
    # 1 + x is a unit, so <x^2 + x> = <x> and the set has only three ideals
    f = Factor(SQUARE)
    assert f.gen("x+x^2") == f.gen("x")
    assert not verify(ring(SQUARE)).line.is_line


def test_witness_xy_nonzero_co_claw():
    text = "mon 2 [x, y] / (x^2, y^2)"
    f = Factor(text)
    sub = _local_subgraph(text, [f.gen("xy"), f.gen("x"), f.gen("y"), f.gen("x+y")])
    assert is_isomorphic_small(sub, CO_CLAW)
