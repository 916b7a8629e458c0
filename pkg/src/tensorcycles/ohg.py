"""Oriented hypergraphs: signed vertex-edge incidences in {-1, 0, +1}.

The canonical correspondence maps each hyperedge to the pair of degree-1
boundary tensors summing its source-side and target-side vertices; the
cycle space of the resulting tensor-labeled hypergraph equals the kernel
of the signed incidence matrix, over every field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import exactla, hypergraph
from .errors import InternalInconsistency, ParseError
from .exactla import Matrix, Subspace
from .field import FieldSpec
from .hypergraph import AnalysisReport, RawEdge, TensorHypergraph


@dataclass(frozen=True)
class OrientedHypergraph:
    vertex_names: tuple
    edge_ids: tuple
    incidence: tuple  # per-vertex rows of integer entries in {-1, 0, +1}

    def __post_init__(self):
        object.__setattr__(self, "vertex_names", tuple(self.vertex_names))
        object.__setattr__(self, "edge_ids", tuple(self.edge_ids))
        rows = tuple(tuple(int(x) for x in row) for row in self.incidence)
        object.__setattr__(self, "incidence", rows)
        for row in rows:
            if len(row) != len(self.edge_ids):
                raise ParseError("incidence rows must match the edge count")
            if any(x not in (-1, 0, 1) for x in row):
                raise ParseError("oriented incidence entries must be -1, 0 or +1")
        if len(rows) != len(self.vertex_names):
            raise ParseError("incidence needs one row per vertex")

    @property
    def edge_count(self) -> int:
        return len(self.edge_ids)

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_names)

    def side_sets(self, j: int) -> tuple:
        """(source-side vertex indices, target-side vertex indices) of edge j."""
        minus = tuple(i for i, row in enumerate(self.incidence) if row[j] == -1)
        plus = tuple(i for i, row in enumerate(self.incidence) if row[j] == +1)
        return minus, plus


def from_side_sets(
    vertex_names: Sequence[str], edges: Sequence[tuple], edge_ids: Optional[Sequence[str]] = None
) -> OrientedHypergraph:
    """Build from (minus names, plus names) pairs."""
    names = tuple(vertex_names)
    index = {v: i for i, v in enumerate(names)}
    if edge_ids is None:
        edge_ids = tuple(f"e{j}" for j in range(len(edges)))
    rows = [[0] * len(edges) for _ in names]
    for j, (minus, plus) in enumerate(edges):
        for v in minus:
            rows[index[v]][j] = -1
        for v in plus:
            rows[index[v]][j] = +1
    return OrientedHypergraph(names, tuple(edge_ids), tuple(tuple(r) for r in rows))


def signed_incidence_matrix(o: OrientedHypergraph, spec: FieldSpec) -> Matrix:
    coerce = spec.coerce
    return Matrix(
        spec,
        [[coerce(x) for x in row] for row in o.incidence],
        o.edge_count,
    )


def to_tensor_hg(o: OrientedHypergraph, spec: FieldSpec) -> TensorHypergraph:
    """Canonical tensor-labeled hypergraph with degree-1 boundary tensors.

    Every edge becomes a raw edge (the image never follows a standard
    construction once a side bundles several vertices); empty sides give
    the zero tensor.
    """
    edge_specs = []
    for j in range(o.edge_count):
        minus, plus = o.side_sets(j)
        edge_specs.append(
            RawEdge(
                tuple(((o.vertex_names[i],), 1) for i in minus),
                tuple(((o.vertex_names[i],), 1) for i in plus),
            )
        )
    return hypergraph.build(o.vertex_names, edge_specs, spec, o.edge_ids)


@dataclass(frozen=True)
class KernelEquivalence:
    dim: int
    kernel: Subspace  # the common kernel, in F^Q1


def kernel_equivalence(o: OrientedHypergraph, spec: FieldSpec) -> KernelEquivalence:
    """Direct kernel of the signed incidence versus the tensor cycle space.

    The two agree over every field; a mismatch is a library bug.
    """
    direct = exactla.kernel_basis(signed_incidence_matrix(o, spec))
    h = to_tensor_hg(o, spec)
    tensor_side = exactla.kernel_basis(h.coords.boundary)
    if direct != tensor_side:
        raise InternalInconsistency(
            "oriented kernel differs from the tensor cycle space"
        )
    return KernelEquivalence(direct.dim, direct)


@dataclass(frozen=True)
class StarAnalysis:
    edge_count: int
    defect: int
    dependence: Optional[tuple]  # affine dependence coefficients, if any


def star_analysis(o: OrientedHypergraph, spec: FieldSpec) -> Optional[StarAnalysis]:
    """Affine-dependence reading of the defect for star-shaped inputs.

    Requires one common non-empty source side, disjoint from every target
    side, with pairwise distinct target sides; returns None otherwise.
    The defect is positive exactly when the target indicator vectors are
    affinely dependent, which forces at least four hyperedges.
    """
    if o.edge_count == 0:
        return None
    sides = [o.side_sets(j) for j in range(o.edge_count)]
    source = sides[0][0]
    if not source or any(minus != source for minus, _ in sides):
        return None
    targets = [plus for _, plus in sides]
    if len(set(targets)) != len(targets):
        return None
    if any(set(source) & set(t) for t in targets):
        return None

    # Affine dependence: sum_i alpha_i * indicator(H_i) = 0 with the
    # coefficients alpha_i themselves summing to zero.
    coerce = spec.coerce
    rows = []
    for v in range(o.vertex_count):
        rows.append([coerce(1 if v in t else 0) for t in targets])
    rows.append([coerce(1)] * o.edge_count)
    kernel = exactla.kernel_basis(Matrix(spec, rows, o.edge_count))
    dependence = kernel.basis[0] if kernel.dim else None

    report = hypergraph.analyze(to_tensor_hg(o, spec))
    if (report.defect > 0) != (dependence is not None):
        raise InternalInconsistency(
            "star defect disagrees with the affine-dependence test"
        )
    if o.edge_count < 4 and report.defect != 0:
        raise InternalInconsistency("positive star defect with fewer than 4 edges")
    return StarAnalysis(o.edge_count, report.defect, dependence)


def oh_dimension_report(o: OrientedHypergraph, spec: FieldSpec) -> AnalysisReport:
    """Analysis of the canonical image, cross-checked against the directly
    eliminated kernel of the signed incidence matrix."""
    h = to_tensor_hg(o, spec)
    report = hypergraph.analyze(h)
    direct_dim = o.edge_count - exactla.rank(signed_incidence_matrix(o, spec))
    if report.cycle_dim != direct_dim:
        raise InternalInconsistency(
            "dimension formula disagrees with the direct oriented kernel"
        )
    return report
