"""Directed tensor-labeled hypergraphs.

Each hyperedge carries a pair of boundary tensors (source, target) produced
by one of six standard encodings or given verbatim ("raw").  The analysis
pipeline deduplicates the boundary tensors into a macrograph, runs exact
linear algebra on the evaluation and incidence coordinates, and reports the
defect invariant together with the cycle-space decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from . import exactla, multigraph, tensor
from .errors import (
    EmptyStructuralData,
    InternalInconsistency,
    NotStarShaped,
    UnknownVertex,
)
from .exactla import Matrix, Subspace
from .field import FieldSpec
from .multigraph import Multigraph, SpanningForest
from .tensor import TensorElem, sym

SYM_QUAD = "sym_quad"
DIRECTED = "directed"
MULTISET = "multiset"
ORDERED = "ordered"
DIRECTED_MULTISET = "directed_multiset"
DIRECTED_ORDERED = "directed_ordered"
RAW = "raw"

STANDARD_TAGS = (
    SYM_QUAD,
    DIRECTED,
    MULTISET,
    ORDERED,
    DIRECTED_MULTISET,
    DIRECTED_ORDERED,
)


@dataclass(frozen=True)
class SymQuadEdge:
    """Undirected edge or loop encoded as a symmetric quadratic tensor."""

    members: tuple

    tag = SYM_QUAD

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not 1 <= len(self.members) <= 2 or not self.members:
            raise EmptyStructuralData("a symmetric quadratic edge joins 1 or 2 vertices")


@dataclass(frozen=True)
class DirectedEdge:
    source: str
    target: str

    tag = DIRECTED


@dataclass(frozen=True)
class MultisetEdge:
    members: tuple

    tag = MULTISET

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise EmptyStructuralData("a multiset hyperedge needs at least one vertex")


@dataclass(frozen=True)
class OrderedEdge:
    letters: tuple

    tag = ORDERED

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if not self.letters:
            raise EmptyStructuralData("an ordered hyperedge needs at least one vertex")


@dataclass(frozen=True)
class DirectedMultisetEdge:
    sources: tuple
    targets: tuple

    tag = DIRECTED_MULTISET

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "targets", tuple(self.targets))
        if not self.sources or not self.targets:
            raise EmptyStructuralData("directed multiset hyperedges need both sides non-empty")


@dataclass(frozen=True)
class DirectedOrderedEdge:
    sources: tuple
    targets: tuple

    tag = DIRECTED_ORDERED

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "targets", tuple(self.targets))
        if not self.sources or not self.targets:
            raise EmptyStructuralData("directed ordered hyperedges need both sides non-empty")


@dataclass(frozen=True)
class RawEdge:
    """Arbitrary boundary tensor pair, words written with vertex names."""

    source_terms: tuple  # ((name word tuple, coefficient), ...)
    target_terms: tuple

    tag = RAW

    def __post_init__(self):
        object.__setattr__(
            self, "source_terms", tuple((tuple(w), c) for w, c in self.source_terms)
        )
        object.__setattr__(
            self, "target_terms", tuple((tuple(w), c) for w, c in self.target_terms)
        )


EdgeSpec = (
    SymQuadEdge
    | DirectedEdge
    | MultisetEdge
    | OrderedEdge
    | DirectedMultisetEdge
    | DirectedOrderedEdge
    | RawEdge
)


@dataclass(frozen=True)
class Coordinates:
    """Shared coordinatization of one hypergraph.

    `words` indexes the rows of every matrix here; `evaluation` sends a
    macro-vertex coordinate to its tensor, `incidence` is the macrograph
    incidence matrix, and `boundary` is their composition (target minus
    source tensor per edge), verified column by column.
    """

    words: tuple
    evaluation: Matrix  # |words| x |V_macro|
    incidence: Matrix   # |V_macro| x |Q_1|
    boundary: Matrix    # |words| x |Q_1|


class TensorHypergraph:
    """A hypergraph with per-edge boundary tensor pairs over one field."""

    def __init__(
        self,
        spec: FieldSpec,
        vertex_names: Sequence[str],
        edge_ids: Sequence[str],
        edge_specs: Sequence[EdgeSpec],
        boundary: Sequence,
    ):
        self.spec = spec
        self.vertex_names = tuple(vertex_names)
        self.edge_ids = tuple(edge_ids)
        self.edge_specs = tuple(edge_specs)
        self.boundary = tuple(boundary)

    @property
    def edge_count(self) -> int:
        return len(self.edge_specs)

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_names)

    def construction_profile(self) -> dict:
        profile: dict = {}
        for es in self.edge_specs:
            profile[es.tag] = profile.get(es.tag, 0) + 1
        return profile

    def is_standard(self) -> bool:
        """True when every edge follows the same non-raw construction."""
        tags = {es.tag for es in self.edge_specs}
        return len(tags) == 1 and next(iter(tags)) in STANDARD_TAGS

    def edge_difference(self, j: int) -> TensorElem:
        a, b = self.boundary[j]
        return b - a

    @cached_property
    def max_degree(self) -> int:
        """Largest word length over all boundary tensors (0 for empty support)."""
        deg = 0
        for a, b in self.boundary:
            deg = max(deg, a.max_degree, b.max_degree)
        return deg

    @cached_property
    def macrograph(self) -> "Macrograph":
        seen: dict = {}
        for a, b in self.boundary:
            for t in (a, b):
                if t not in seen:
                    seen[t] = True
        tensors = sorted(seen, key=TensorElem.sort_key)
        index = {t: i for i, t in enumerate(tensors)}
        edges = [(index[a], index[b]) for a, b in self.boundary]
        return Macrograph(
            tensors=tuple(tensors),
            graph=Multigraph(len(tensors), tuple(edges)),
        )

    @cached_property
    def coords(self) -> Coordinates:
        macro = self.macrograph
        words, eval_matrix = tensor.basis_of_span(self.spec, list(macro.tensors))
        evaluation = eval_matrix.transpose()
        incidence = multigraph.incidence_matrix(macro.graph, self.spec)
        _, diff_rows = tensor.basis_of_span_over(
            self.spec, [self.edge_difference(j) for j in range(self.edge_count)], words
        )
        boundary = diff_rows.transpose()
        if evaluation @ incidence != boundary:
            raise InternalInconsistency(
                "boundary map does not factor through the macrograph incidence"
            )
        return Coordinates(tuple(words), evaluation, incidence, boundary)


@dataclass(frozen=True)
class Macrograph:
    """Deduplicated boundary tensors with the induced directed multigraph.

    Tensor order is deterministic: the zero tensor first when present, then
    graded-lex by support; edge e runs from its source tensor's index to
    its target tensor's index.
    """

    tensors: tuple
    graph: Multigraph

    def index_of(self, t: TensorElem) -> int:
        return self.tensors.index(t)


def _resolve(name: str, index: dict) -> int:
    try:
        return index[name]
    except KeyError:
        raise UnknownVertex(f"unknown vertex {name!r}") from None


def boundary_pair(spec: FieldSpec, es: EdgeSpec, index: dict) -> tuple:
    """Source and target tensors of one edge spec, per its construction."""
    unit = TensorElem.unit(spec)
    if es.tag == SYM_QUAD:
        members = sorted({_resolve(v, index) for v in es.members})
        if len(members) == 1:
            members = [members[0], members[0]]
        return sym(spec, members), unit
    if es.tag == DIRECTED:
        s = _resolve(es.source, index)
        t = _resolve(es.target, index)
        return TensorElem.basis_word(spec, (s,)), TensorElem.basis_word(spec, (t,))
    if es.tag == MULTISET:
        return sym(spec, [_resolve(v, index) for v in es.members]), unit
    if es.tag == ORDERED:
        return TensorElem.basis_word(spec, [_resolve(v, index) for v in es.letters]), unit
    if es.tag == DIRECTED_MULTISET:
        return (
            sym(spec, [_resolve(v, index) for v in es.sources]),
            sym(spec, [_resolve(v, index) for v in es.targets]),
        )
    if es.tag == DIRECTED_ORDERED:
        return (
            TensorElem.basis_word(spec, [_resolve(v, index) for v in es.sources]),
            TensorElem.basis_word(spec, [_resolve(v, index) for v in es.targets]),
        )
    if es.tag == RAW:
        def build(terms):
            return TensorElem.from_terms(
                spec,
                ((tuple(_resolve(v, index) for v in w), c) for w, c in terms),
            )
        return build(es.source_terms), build(es.target_terms)
    raise ValueError(f"unknown edge tag {es.tag!r}")


def build(
    vertex_names: Sequence[str],
    edge_specs: Sequence[EdgeSpec],
    spec: FieldSpec,
    edge_ids: Optional[Sequence[str]] = None,
) -> TensorHypergraph:
    """Construct a hypergraph, computing every boundary pair eagerly."""
    names = tuple(vertex_names)
    if len(set(names)) != len(names):
        raise UnknownVertex("vertex names must be unique")
    index = {v: i for i, v in enumerate(names)}
    if edge_ids is None:
        edge_ids = tuple(f"e{j}" for j in range(len(edge_specs)))
    else:
        edge_ids = tuple(edge_ids)
        if len(edge_ids) != len(edge_specs) or len(set(edge_ids)) != len(edge_ids):
            raise UnknownVertex("edge ids must be unique and match the edge list")
    boundary = [boundary_pair(spec, es, index) for es in edge_specs]
    return TensorHypergraph(spec, names, edge_ids, tuple(edge_specs), boundary)


@dataclass(frozen=True)
class AnalysisReport:
    """All counted invariants of one hypergraph."""

    edge_count: int
    macro_vertex_count: int
    macro_component_count: int
    defect: int
    cycle_dim: int
    topological_cycle_dim: int
    construction_profile: dict
    standard: bool

    def key_tuple(self) -> tuple:
        return (
            self.edge_count,
            self.macro_vertex_count,
            self.macro_component_count,
            self.defect,
            self.cycle_dim,
        )


def defect_space(h: TensorHypergraph) -> Subspace:
    """Image of the macro incidence intersected with the evaluation kernel."""
    coords = h.coords
    image = exactla.image_basis(coords.incidence)
    kernel = exactla.kernel_basis(coords.evaluation)
    return exactla.intersect(image, kernel)


def analyze(h: TensorHypergraph) -> AnalysisReport:
    """Count the macrograph invariants and assert every dimension identity."""
    coords = h.coords
    macro = h.macrograph
    comp = multigraph.weak_components(macro.graph)
    v = len(macro.tensors)
    q1 = h.edge_count
    space = defect_space(h)
    delta = space.dim
    boundary_rank = exactla.rank(coords.boundary)
    cycle_dim = q1 - boundary_rank
    top_dim = q1 - exactla.rank(coords.incidence)
    if delta != (v - comp.count) - boundary_rank:
        raise InternalInconsistency("defect disagrees with the rank-drop identity")
    if cycle_dim != q1 - v + comp.count + delta:
        raise InternalInconsistency("cycle dimension violates the dimension formula")
    if cycle_dim != top_dim + delta:
        raise InternalInconsistency("cycle space does not split over the defect")
    return AnalysisReport(
        edge_count=q1,
        macro_vertex_count=v,
        macro_component_count=comp.count,
        defect=delta,
        cycle_dim=cycle_dim,
        topological_cycle_dim=top_dim,
        construction_profile=h.construction_profile(),
        standard=h.is_standard(),
    )


@dataclass(frozen=True)
class CycleDecomposition:
    topological_space: Subspace   # kernel of the macro incidence, in F^Q1
    algebraic_space: Subspace     # defect subspace, in F^{V_macro}
    topological_basis: tuple      # fundamental cycles of the macrograph forest
    lifts: tuple                  # edge vectors mapping onto the algebraic basis
    forest: SpanningForest

    @property
    def basis_vectors(self) -> list:
        return [list(v) for v in self.topological_basis + self.lifts]


def cycle_decomposition(h: TensorHypergraph) -> CycleDecomposition:
    """Split the cycle space into topological cycles and algebraic lifts.

    The united family is verified to be an independent spanning set of the
    kernel of the boundary map.
    """
    coords = h.coords
    macro = h.macrograph
    spec = h.spec
    forest = multigraph.spanning_forest(macro.graph)
    top_basis = multigraph.topological_cycle_basis(macro.graph, forest, spec)
    z_top = exactla.kernel_basis(coords.incidence)
    z_alg = defect_space(h)
    labeling = multigraph.Labeling(
        macro.graph,
        spec,
        tuple(tuple(coords.evaluation.column(i)) for i in range(len(macro.tensors))),
        len(coords.words),
    )
    lifts = [multigraph.algebraic_lift(labeling, forest, row) for row in z_alg.basis]
    vectors = top_basis + lifts
    span = Subspace.from_vectors(spec, h.edge_count, vectors)
    if span.dim != len(vectors):
        raise InternalInconsistency("cycle basis is linearly dependent")
    if span != exactla.kernel_basis(coords.boundary):
        raise InternalInconsistency("cycle basis does not span the cycle space")
    return CycleDecomposition(
        topological_space=z_top,
        algebraic_space=z_alg,
        topological_basis=tuple(tuple(v) for v in top_basis),
        lifts=tuple(tuple(v) for v in lifts),
        forest=forest,
    )


VANISHES = "vanishes"
NOT_STANDARD = "not_standard"
VIOLATION = "violation"


@dataclass(frozen=True)
class VanishingAudit:
    status: str
    witness: Optional[tuple] = None
    detail: str = ""


def vanishing_audit(h: TensorHypergraph) -> VanishingAudit:
    """Check the guaranteed defect vanishing on single-construction inputs.

    Also asserts the stronger support-disjointness of the nonzero boundary
    tensors.  Raw or mixed-construction inputs get no claim.
    """
    if not h.is_standard():
        return VanishingAudit(NOT_STANDARD)
    macro = h.macrograph
    seen: dict = {}
    for t in macro.tensors:
        if t.is_zero():
            continue
        for w in t.terms:
            if w in seen:
                return VanishingAudit(
                    VIOLATION,
                    witness=None,
                    detail=f"boundary tensors share the support word {w!r}",
                )
            seen[w] = True
    space = defect_space(h)
    if space.dim:
        return VanishingAudit(
            VIOLATION,
            witness=space.basis[0],
            detail="single-construction instance with positive defect",
        )
    return VanishingAudit(VANISHES)


@dataclass(frozen=True)
class StarDefect:
    defect_lower_bound: int
    witness: tuple  # edge vector with zero boundary image but nonzero macro image


def star_defect(h: TensorHypergraph) -> Optional[StarDefect]:
    """Defect witness for star-shaped instances.

    Requires every edge to share one source tensor, with targets pairwise
    distinct and distinct from the source.  A nontrivial kernel vector of
    the stacked target-minus-source coordinates certifies a positive
    defect.
    """
    if h.edge_count == 0:
        raise NotStarShaped("no edges")
    source = h.boundary[0][0]
    targets = []
    for a, b in h.boundary:
        if a != source:
            raise NotStarShaped("edges do not share a single source tensor")
        targets.append(b)
    if len(set(targets)) != len(targets) or source in targets:
        raise NotStarShaped("target tensors must be pairwise distinct and differ from the source")
    spec = h.spec
    diffs = [b - source for b in targets]
    _, rows = tensor.basis_of_span(spec, diffs)
    stacked = rows.transpose()  # words x edges
    kernel = exactla.kernel_basis(stacked)
    if kernel.dim == 0:
        return None
    xi = kernel.basis[0]
    coords = h.coords
    if any(coords.boundary.apply(xi)):
        raise InternalInconsistency("star witness is not a cycle")
    if not any(coords.incidence.apply(xi)):
        raise InternalInconsistency("star witness has zero macrograph image")
    return StarDefect(kernel.dim, tuple(xi))


def minimality_check(h: TensorHypergraph) -> bool:
    """A positive defect needs at least 2 edges and 3 boundary tensors."""
    report = analyze(h)
    if report.defect == 0:
        return True
    return report.edge_count >= 2 and report.macro_vertex_count >= 3
