"""Command-line front end.

Exit codes: 0 success, 1 prediction/recognition disagreement (or census
entry errors), 2 spec parse error, 3 ring build error, 4 I/O error,
5 precondition failure (root-graph on a non-line graph).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import _kernels
from .classifier import Report, census, load_catalog, verify
from .errors import GraphSizeError, IdealCapError, PisGraphError, RecognitionDisagreement, RingBuildError, RingSpecError
from .graph import Graph, adjacency_text, complement, line_graph, pis_graph, to_dot
from .lattice import IdealLattice, decompose_local, enumerate_ideals, local_profile
from .recognition import ForbiddenWitness, LineVerdict, is_complement_line_graph, is_line_graph, root_matches
from .ring import FiniteRing, build_ring, units
from .ringspec import parse_ring_spec

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_PARSE = 2
EXIT_BUILD = 3
EXIT_IO = 4
EXIT_PRECONDITION = 5


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        self.code = code
        self.kind = kind
        super().__init__(message)


# ---------------------------------------------------------------------------
# JSON shaping
# ---------------------------------------------------------------------------


def _profile_json(p) -> dict:
    if not p.is_local:
        return {"isLocal": False}
    return {
        "isLocal": True,
        "residueOrder": p.residue_order,
        "eta": p.eta,
        "minGen": p.min_gen,
        "isPIR": p.is_pir,
        "hasNilPair": p.has_nil_pair,
        "hasNilPairXYZero": p.has_nil_pair_xy_zero,
    }


def verdict_json(verdict: Optional[LineVerdict], G: Optional[Graph]) -> Optional[dict]:
    if verdict is None:
        return None
    w = verdict.witness
    if isinstance(w, ForbiddenWitness):
        detail = {
            "subset": list(w.subset),
            "vertices": [G.labels[v] for v in w.subset] if G is not None else None,
            "library": w.name,
            "libraryIndex": w.index + 1,
            "inducesComplementOfLibraryGraph": verdict.complemented,
            "degreeSequence": list(w.degree_sequence),
            "canonicalCode": w.canonical,
        }
        kind = "forbidden"
    else:
        target = complement(G) if G is not None and verdict.complemented else G
        detail = {
            "rootVertices": w.root.n,
            "rootEdges": [list(e) for e in w.root.edges()],
            "cliques": [list(c) for c in w.cliques],
            "lineGraphOfRootMatches": root_matches(target, w) if target is not None else None,
            "ofComplement": verdict.complemented,
        }
        kind = "root"
    return {"verdict": verdict.is_line, "witnessKind": kind, "witnessDetail": detail}


def report_json(report: Report, timings: bool = True) -> dict:
    out: dict = {"schemaVersion": SCHEMA_VERSION}
    out["ring"] = {"spec": report.spec, "name": report.ring, "order": report.order, "factorOrders": list(report.factor_orders)}
    if report.error is not None:
        out["error"] = {"kind": report.error_kind, "message": report.error}
        if timings:
            out["timings"] = report.timings
        return out
    out["ideals"] = {
        "total": report.ideal_total,
        "nontrivialProper": report.nontrivial_proper,
        "primeCount": report.prime_count,
    }
    out["pis"] = {"vertices": report.pis.n, "edges": report.pis.edge_count}
    out["line"] = verdict_json(report.line, report.pis)
    out["coline"] = verdict_json(report.coline, report.pis)
    pred = report.prediction
    out["prediction"] = {
        "line": pred.predicts_line,
        "lineRule": pred.line.tag,
        "lineDetail": pred.line.detail,
        "coline": pred.predicts_coline,
        "coLineRule": pred.coline.tag,
        "coLineDetail": pred.coline.detail,
        "factorProfiles": [_profile_json(p) for p in pred.profiles],
    }
    out["agreement"] = {"line": report.agreement_line, "coline": report.agreement_coline}
    if timings:
        out["timings"] = report.timings
    return out


# ---------------------------------------------------------------------------
# pipeline helpers
# ---------------------------------------------------------------------------


def _build(spec_text: str, timings: dict) -> FiniteRing:
    t0 = time.perf_counter()
    try:
        spec = parse_ring_spec(spec_text)
    except RingSpecError as exc:
        raise CliError(EXIT_PARSE, "parse", str(exc)) from exc
    t1 = time.perf_counter()
    try:
        ring = build_ring(spec)
    except RingBuildError as exc:
        raise CliError(EXIT_BUILD, "build", str(exc)) from exc
    timings["parse"] = round((t1 - t0) * 1000, 3)
    timings["build"] = round((time.perf_counter() - t1) * 1000, 3)
    return ring


def _lattice(R: FiniteRing, timings: dict) -> IdealLattice:
    t0 = time.perf_counter()
    lat = enumerate_ideals(R)
    timings["lattice"] = round((time.perf_counter() - t0) * 1000, 3)
    return lat


def _ring_json(spec_text: str, R: FiniteRing, lat: IdealLattice) -> dict:
    factors = decompose_local(R)
    return {
        "ring": {
            "spec": spec_text,
            "name": R.name,
            "order": R.order,
            "factorOrders": [f.order for f in factors],
            "units": bin(units(R)).count("1"),
        },
        "ideals": {
            "total": len(lat),
            "nontrivialProper": len(lat) - 2,
            "primeCount": sum(lat.prime),
            "labels": [lat.label(i) for i in range(len(lat))],
        },
    }


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(EXIT_IO, "io", f"cannot write {path}: {exc}") from exc


def _emit(obj: dict, args) -> None:
    if not args.timings:
        obj.pop("timings", None)
    print(json.dumps(obj, indent=2, ensure_ascii=False))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_ring_info(args) -> int:
    timings: dict = {}
    R = _build(args.spec, timings)
    lat = _lattice(R, timings)
    out = {"schemaVersion": SCHEMA_VERSION, **_ring_json(args.spec, R, lat)}
    out["profiles"] = [_profile_json(local_profile(f, enumerate_ideals(f))) for f in decompose_local(R)]
    out["timings"] = timings
    _emit(out, args)
    return EXIT_OK


def cmd_pis(args) -> int:
    timings: dict = {}
    R = _build(args.spec, timings)
    lat = _lattice(R, timings)
    t0 = time.perf_counter()
    G = pis_graph(R, lat)
    timings["pis"] = round((time.perf_counter() - t0) * 1000, 3)
    out = {"schemaVersion": SCHEMA_VERSION, **_ring_json(args.spec, R, lat)}
    out["pis"] = {
        "vertices": G.n,
        "edges": G.edge_count,
        "labels": list(G.labels),
        "edgeList": [list(e) for e in G.edges()],
    }
    if args.dot:
        _write(args.dot, to_dot(G, "PIS"))
    if args.adjacency:
        _write(args.adjacency, adjacency_text(G))
    out["timings"] = timings
    _emit(out, args)
    return EXIT_OK


def cmd_recognize(args) -> int:
    timings: dict = {}
    R = _build(args.spec, timings)
    lat = _lattice(R, timings)
    G = pis_graph(R, lat)
    out = {"schemaVersion": SCHEMA_VERSION, **_ring_json(args.spec, R, lat)}
    out["pis"] = {"vertices": G.n, "edges": G.edge_count}
    if args.mode in ("line", "both"):
        t0 = time.perf_counter()
        out["line"] = verdict_json(is_line_graph(G), G)
        timings["line"] = round((time.perf_counter() - t0) * 1000, 3)
    if args.mode in ("coline", "both"):
        t0 = time.perf_counter()
        out["coline"] = verdict_json(is_complement_line_graph(G), G)
        timings["coline"] = round((time.perf_counter() - t0) * 1000, 3)
    out["timings"] = timings
    _emit(out, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    timings: dict = {}
    R = _build(args.spec, timings)
    report = verify(R, args.spec, timings=timings)
    _emit(report_json(report), args)
    return EXIT_OK if report.agrees else EXIT_DISAGREE


def cmd_census(args) -> int:
    try:
        catalog = load_catalog(args.catalog)
    except OSError as exc:
        raise CliError(EXIT_IO, "io", f"cannot read catalog: {exc}") from exc
    reports, summary = census(catalog, parallel=args.parallel)
    for r in reports:
        print(json.dumps(report_json(r, timings=args.timings), ensure_ascii=False))
    line = {
        "summary": {
            "total": summary.total,
            "agreements": summary.agreements,
            "disagreements": summary.disagreements,
            "errors": summary.errors,
        }
    }
    if args.timings:
        line["summary"]["seconds"] = summary.seconds
    line["summary"]["backend"] = _kernels.backend()
    print(json.dumps(line))
    return EXIT_OK if summary.disagreements == 0 and summary.errors == 0 else EXIT_DISAGREE


def cmd_root_graph(args) -> int:
    timings: dict = {}
    R = _build(args.spec, timings)
    lat = _lattice(R, timings)
    G = pis_graph(R, lat)
    verdict = is_line_graph(G)
    if not verdict.is_line:
        detail = verdict_json(verdict, G)
        print(json.dumps({"schemaVersion": SCHEMA_VERSION, "error": {"kind": "precondition",
              "message": "PIS graph is not a line graph"}, "line": detail}, indent=2, ensure_ascii=False))
        return EXIT_PRECONDITION
    root = verdict.witness.root
    dot = to_dot(root, "root")
    if args.dot:
        _write(args.dot, dot)
    L = line_graph(root)
    out = {
        "schemaVersion": SCHEMA_VERSION,
        "ring": {"spec": args.spec, "name": R.name, "order": R.order},
        "pis": {"vertices": G.n, "edges": G.edge_count},
        "root": {
            "vertices": root.n,
            "edges": root.edge_count,
            "edgeList": [list(e) for e in root.edges()],
            "lineGraphVertices": L.n,
            "lineGraphEdges": L.edge_count,
            "lineGraphMatchesPIS": root_matches(G, verdict.witness),
        },
    }
    if not args.dot:
        out["root"]["dot"] = dot
    _emit(out, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pisgraph", description="Prime ideal sum graphs of finite commutative rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, spec=True):
        p = sub.add_parser(name, help=help_text)
        if spec:
            p.add_argument("spec", help='ring spec, e.g. "Z 16" or "prod(Z 4, GF 2)"')
        p.add_argument("--no-timings", dest="timings", action="store_false", help="omit wall-clock timings")
        p.set_defaults(func=func)
        return p

    add("ring-info", cmd_ring_info, "ring, lattice and local profile summary")
    p = add("pis", cmd_pis, "prime ideal sum graph sizes")
    p.add_argument("--dot", metavar="PATH", help="write the PIS graph as DOT")
    p.add_argument("--adjacency", metavar="PATH", help="write an adjacency-list dump")
    p = add("recognize", cmd_recognize, "line / co-line recognition with witnesses")
    p.add_argument("--mode", choices=("line", "coline", "both"), default="both")
    add("verify", cmd_verify, "compare structural prediction with recognition")
    p = add("census", cmd_census, "verify every ring in a catalog", spec=False)
    p.add_argument("--catalog", metavar="PATH", help="catalog file (default: bundled catalog)")
    p.add_argument("--parallel", type=int, default=1, metavar="N")
    p = add("root-graph", cmd_root_graph, "reconstruct a root graph H with L(H) = PIS")
    p.add_argument("--dot", metavar="PATH", help="write the root graph as DOT")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(json.dumps({"error": {"kind": exc.kind, "message": str(exc)}}), file=sys.stderr)
        return exc.code
    except RecognitionDisagreement as exc:
        print(json.dumps({"error": {"kind": "disagreement", "message": str(exc)}}), file=sys.stderr)
        return EXIT_DISAGREE
    except (GraphSizeError, IdealCapError) as exc:
        print(json.dumps({"error": {"kind": "precondition", "message": str(exc)}}), file=sys.stderr)
        return EXIT_PRECONDITION
    except PisGraphError as exc:
        print(json.dumps({"error": {"kind": "internal", "message": str(exc)}}), file=sys.stderr)
        return EXIT_BUILD


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
