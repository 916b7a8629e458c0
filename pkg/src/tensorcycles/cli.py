"""Command-line front end.

Reads JSON instance files, dispatches the analyses, and emits
deterministic machine-readable reports.  Exit codes: 0 success, 2 input
error, 3 internal invariant violation (a theorem "failing" is a bug, never
a property of the input).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import __version__, exactla, gram, hypergraph, observe, ohg, verify
from .errors import InternalInconsistency, ParseError, TensorCyclesError
from .field import FieldSpec, Rationals, parse_field
from .hypergraph import (
    DirectedEdge,
    DirectedMultisetEdge,
    DirectedOrderedEdge,
    MultisetEdge,
    OrderedEdge,
    RawEdge,
    SymQuadEdge,
    TensorHypergraph,
)
from .ohg import OrientedHypergraph

DEFAULT_SEED = 42


# ---------------------------------------------------------------------------
# Instance files
# ---------------------------------------------------------------------------

@dataclass
class Instance:
    field: FieldSpec
    vertices: tuple
    edges: Optional[list]            # EdgeSpec list for tensor instances
    edge_ids: Optional[tuple]
    oriented: Optional[OrientedHypergraph]
    expected: dict

    @property
    def kind(self) -> str:
        return "oriented" if self.oriented is not None else "tensor"


def _parse_edge(entry: dict) -> tuple:
    try:
        tag = entry["tag"]
    except KeyError:
        raise ParseError("edge entry without a tag") from None
    try:
        if tag == "sym_quad":
            return entry.get("id"), SymQuadEdge(tuple(entry["members"]))
        if tag == "directed":
            return entry.get("id"), DirectedEdge(entry["source"], entry["target"])
        if tag == "multiset":
            return entry.get("id"), MultisetEdge(tuple(entry["members"]))
        if tag == "ordered":
            return entry.get("id"), OrderedEdge(tuple(entry["tuple"]))
        if tag == "directed_multiset":
            return entry.get("id"), DirectedMultisetEdge(
                tuple(entry["sources"]), tuple(entry["targets"])
            )
        if tag == "directed_ordered":
            return entry.get("id"), DirectedOrderedEdge(
                tuple(entry["sources"]), tuple(entry["targets"])
            )
        if tag == "raw":
            def side(key):
                return tuple(
                    (tuple(term["word"]), term["coeff"]) for term in entry.get(key, [])
                )
            return entry.get("id"), RawEdge(side("source"), side("target"))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed {tag!r} edge entry: {exc}") from None
    raise ParseError(f"unknown edge tag {tag!r}")


def parse_instance(data: dict, field_override: Optional[str] = None) -> Instance:
    if not isinstance(data, dict):
        raise ParseError("instance file must hold a JSON object")
    field_text = field_override or data.get("field")
    if not field_text:
        raise ParseError("missing field name")
    spec = parse_field(field_text)
    vertices = tuple(data.get("vertices", ()))
    if len(set(vertices)) != len(vertices):
        raise ParseError("vertex names must be unique")
    keys = [k for k in ("edges", "oriented_edges", "incidence") if k in data]
    if len(keys) != 1:
        raise ParseError("exactly one of edges / oriented_edges / incidence is required")
    expected = data.get("expected", {})
    if keys[0] == "edges":
        ids = []
        specs = []
        for j, entry in enumerate(data["edges"]):
            eid, es = _parse_edge(entry)
            ids.append(eid if eid is not None else f"e{j}")
            specs.append(es)
        if len(set(ids)) != len(ids):
            raise ParseError("edge ids must be unique")
        return Instance(spec, vertices, specs, tuple(ids), None, expected)
    if keys[0] == "oriented_edges":
        ids = []
        sides = []
        for j, entry in enumerate(data["oriented_edges"]):
            ids.append(entry.get("id", f"e{j}"))
            sides.append((tuple(entry.get("minus", ())), tuple(entry.get("plus", ()))))
        if len(set(ids)) != len(ids):
            raise ParseError("edge ids must be unique")
        unknown = {
            v for minus, plus in sides for v in minus + plus if v not in vertices
        }
        if unknown:
            raise ParseError(f"unknown vertices in oriented edges: {sorted(unknown)}")
        o = ohg.from_side_sets(vertices, sides, ids)
        return Instance(spec, vertices, None, tuple(ids), o, expected)
    rows = data["incidence"]
    ids = tuple(f"e{j}" for j in range(len(rows[0]) if rows else 0))
    o = OrientedHypergraph(vertices, ids, tuple(tuple(row) for row in rows))
    return Instance(spec, vertices, None, ids, o, expected)


def load_instance(path: str, field_override: Optional[str] = None) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: {exc}") from None
    return parse_instance(data, field_override)


def build_hypergraph(inst: Instance) -> TensorHypergraph:
    if inst.oriented is not None:
        return ohg.to_tensor_hg(inst.oriented, inst.field)
    return hypergraph.build(inst.vertices, inst.edges, inst.field, inst.edge_ids)


# ---------------------------------------------------------------------------
# Report assembly
# ---------------------------------------------------------------------------

def _scalar(spec: FieldSpec, x) -> str:
    return spec.render_scalar(x)

def _vector(spec: FieldSpec, v) -> list:
    return [_scalar(spec, x) for x in v]

def _matrix(spec: FieldSpec, m: exactla.Matrix) -> list:
    return [_vector(spec, row) for row in m.rows]


def _analysis_section(report: hypergraph.AnalysisReport) -> dict:
    return {
        "edge_count": report.edge_count,
        "macro_vertex_count": report.macro_vertex_count,
        "macro_component_count": report.macro_component_count,
        "defect": report.defect,
        "cycle_dim": report.cycle_dim,
        "topological_cycle_dim": report.topological_cycle_dim,
        "construction_profile": dict(sorted(report.construction_profile.items())),
        "standard": report.standard,
    }


def _base_report(command: str, inst: Instance, h: TensorHypergraph) -> dict:
    return {
        "command": command,
        "tool": {"name": "tensorcycles", "version": __version__},
        "instance": {
            "kind": inst.kind,
            "field": inst.field.name(),
            "vertices": list(h.vertex_names),
            "edge_ids": list(h.edge_ids),
        },
    }


def _spectrum_section(spec, eigenvalues, rank: int, psd: bool) -> dict:
    if eigenvalues is None:
        return {"kind": "partial", "rank": rank, "psd": psd}
    return {
        "kind": "full",
        "eigenvalues": [[_scalar(spec, ev), mult] for ev, mult in eigenvalues],
        "rank": rank,
        "psd": psd,
    }


def _emit(report: dict, output: Optional[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_expected(report: hypergraph.AnalysisReport, expected: dict) -> None:
    for res in verify.expectation_checks(report, expected):
        if not res.ok:
            raise InternalInconsistency(f"golden expectation failed: {res.detail}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    inst = load_instance(args.path, args.field)
    h = build_hypergraph(inst)
    report = hypergraph.analyze(h)
    _check_expected(report, inst.expected)
    out = _base_report("analyze", inst, h)
    out["analysis"] = _analysis_section(report)
    if inst.oriented is not None:
        out["kernel_equivalence"] = {
            "dim": ohg.kernel_equivalence(inst.oriented, inst.field).dim,
            "match": True,
        }
    _emit(out, args.output)
    return 0


def cmd_basis(args) -> int:
    inst = load_instance(args.path, args.field)
    h = build_hypergraph(inst)
    report = hypergraph.analyze(h)
    _check_expected(report, inst.expected)
    dec = hypergraph.cycle_decomposition(h)
    out = _base_report("basis", inst, h)
    out["analysis"] = _analysis_section(report)
    out["cycle_basis"] = {
        "topological": [_vector(h.spec, v) for v in dec.topological_basis],
        "lifted": [_vector(h.spec, v) for v in dec.lifts],
    }
    _emit(out, args.output)
    return 0


def cmd_gram(args) -> int:
    inst = load_instance(args.path, args.field)
    h = build_hypergraph(inst)
    report = hypergraph.analyze(h)
    _check_expected(report, inst.expected)
    out = _base_report("gram", inst, h)
    out["analysis"] = _analysis_section(report)
    if args.truncate is None:
        gm = gram.gram_matrix(h).matrix
        rank_report = gram.gram_rank_report(h)
        spectrum = gram.structured_spectrum(h)
        out["gram"] = {
            "truncation": None,
            "matrix": _matrix(h.spec, gm),
            "rank": rank_report.rank,
            "kernel_dim": rank_report.kernel.dim,
            "structure": spectrum.structure,
            "spectrum": _spectrum_section(
                h.spec, spectrum.eigenvalues, spectrum.rank, spectrum.psd
            ),
        }
    else:
        levels = gram.truncated_grams(h)
        k = min(args.truncate, h.max_degree)
        gm = levels[k].cumulative
        res = exactla.rational_spectrum(gm)
        out["gram"] = {
            "truncation": args.truncate,
            "matrix": _matrix(h.spec, gm),
            "rank": exactla.rank(gm),
            "kernel_dim": gm.ncols - exactla.rank(gm),
            "structure": "truncated",
            "spectrum": _spectrum_section(h.spec, res.eigenvalues, res.rank, res.psd),
        }
    _emit(out, args.output)
    return 0


def cmd_filtrate(args) -> int:
    inst = load_instance(args.path, args.field)
    h = build_hypergraph(inst)
    report = hypergraph.analyze(h)
    _check_expected(report, inst.expected)
    table = observe.degree_filtration(h)
    drops = observe.graded_quotients(h)
    out = _base_report("filtrate", inst, h)
    out["analysis"] = _analysis_section(report)
    out["filtration"] = {
        "max_degree": table.max_degree,
        "levels": [
            {"degree": r.degree, "cycle_dim": r.cycle_dim, "defect": r.defect}
            for r in table.rows
        ],
        "graded_drops": drops,
    }
    if isinstance(h.spec, Rationals):
        out["filtration"]["rank_increments_match"] = gram.rank_increment_check(h)
    _emit(out, args.output)
    return 0


def cmd_recover_classical(args) -> int:
    inst = load_instance(args.path, args.field)
    h = build_hypergraph(inst)
    res = observe.classical_recovery(h)
    if not res.match or not res.kernels_match:
        raise InternalInconsistency("classical recovery mismatch")
    out = _base_report("recover-classical", inst, h)
    out["recovery"] = {
        "match": res.match,
        "kernels_match": res.kernels_match,
        "classical_cycle_dim": res.classical_kernel.dim,
        "classical_kernel": [_vector(h.spec, v) for v in res.classical_kernel.basis],
    }
    _emit(out, args.output)
    return 0


def cmd_import_oh(args) -> int:
    inst = load_instance(args.path, args.field)
    if inst.oriented is None:
        raise ParseError("import-oh needs an oriented instance")
    o = inst.oriented
    equivalence = ohg.kernel_equivalence(o, inst.field)
    report = ohg.oh_dimension_report(o, inst.field)
    _check_expected(report, inst.expected)
    h = ohg.to_tensor_hg(o, inst.field)
    converted = {
        "field": inst.field.name(),
        "vertices": list(h.vertex_names),
        "edges": [
            {
                "id": h.edge_ids[j],
                "tag": "raw",
                "source": [
                    {"word": [h.vertex_names[i] for i in w], "coeff": _scalar(h.spec, c)}
                    for w, c in sorted(h.boundary[j][0].terms.items())
                ],
                "target": [
                    {"word": [h.vertex_names[i] for i in w], "coeff": _scalar(h.spec, c)}
                    for w, c in sorted(h.boundary[j][1].terms.items())
                ],
            }
            for j in range(h.edge_count)
        ],
    }
    out = _base_report("import-oh", inst, h)
    out["analysis"] = _analysis_section(report)
    out["converted"] = converted
    out["kernel_equivalence"] = {
        "dim": equivalence.dim,
        "match": True,
        "kernel": [_vector(inst.field, v) for v in equivalence.kernel.basis],
    }
    star = ohg.star_analysis(o, inst.field)
    if star is not None:
        out["star"] = {
            "edge_count": star.edge_count,
            "defect": star.defect,
            "dependence": _vector(inst.field, star.dependence) if star.dependence else None,
        }
    _emit(out, args.output)
    return 0


def cmd_verify(args) -> int:
    sections = []
    failures = []
    check_count = 0

    def record(name: str, checks) -> None:
        nonlocal check_count
        entry = {
            "instance": name,
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks
            ],
        }
        sections.append(entry)
        for c in checks:
            check_count += 1
            if not c.ok:
                failures.append((name, c))

    for path in args.paths:
        inst = load_instance(path, args.field)
        name = path.rsplit("/", 1)[-1]
        if inst.oriented is not None:
            checks = verify.check_oriented_instance(inst.oriented, inst.field)
            if inst.expected:
                report = ohg.oh_dimension_report(inst.oriented, inst.field)
                checks = checks + verify.expectation_checks(report, inst.expected)
        else:
            h = build_hypergraph(inst)
            checks = verify.check_tensor_instance(h)
            if inst.expected:
                checks = checks + verify.expectation_checks(
                    hypergraph.analyze(h), inst.expected
                )
        record(name, checks)

    if args.random:
        fields = [parse_field(args.field)] if args.field else None
        for name, checks in verify.random_battery(args.random, args.seed, fields):
            record(name, checks)

    out = {
        "command": "verify",
        "tool": {"name": "tensorcycles", "version": __version__},
        "seed": args.seed,
        "random_count": args.random,
        "check_count": check_count,
        "ok": not failures,
        "instances": sections,
    }
    _emit(out, args.output)
    if failures:
        name, c = failures[0]
        print(f"FIRST FAILURE {name} :: {c.name}: {c.detail}", file=sys.stderr)
        return 3
    return 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, with_path: bool = True) -> None:
    if with_path:
        p.add_argument("path", help="instance JSON file")
    p.add_argument("--field", help="override the instance's field (Q, F2, Fp:<p>)")
    p.add_argument("--output", help="write the report to this path instead of stdout")
    p.add_argument(
        "--format",
        choices=("json",),
        default="json",
        help="report format (json only)",
    )


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tensorcycles",
        description="Exact cycle-space and defect analysis of tensor-labeled hypergraphs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="macrograph invariants and the defect")
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("basis", help="extended cycle basis (topological + lifted)")
    _add_common(p)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("gram", help="edge Gram matrix, rank and spectrum")
    _add_common(p)
    p.add_argument("--truncate", type=int, default=None, help="degree-truncated Gram level")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("filtrate", help="degree filtration table and graded drops")
    _add_common(p)
    p.set_defaults(func=cmd_filtrate)

    p = sub.add_parser(
        "recover-classical",
        help="first-letter recovery of the classical cycle space (char 2)",
    )
    _add_common(p)
    p.set_defaults(func=cmd_recover_classical)

    p = sub.add_parser("import-oh", help="convert an oriented hypergraph and analyze it")
    _add_common(p)
    p.set_defaults(func=cmd_import_oh)

    p = sub.add_parser("verify", help="run every internal cross-check")
    p.add_argument("paths", nargs="*", help="instance JSON files")
    p.add_argument("--random", type=int, default=0, help="number of random instances")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed")
    p.add_argument("--field", help="restrict random instances to one field")
    p.add_argument("--output", help="write the report to this path instead of stdout")
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 3
    except TensorCyclesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
