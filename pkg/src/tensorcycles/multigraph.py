"""Finite directed multigraphs and vector-valued vertex labelings.

Covers the classical incidence matrix, weak components, spanning forests,
signed tree paths, fundamental (topological) cycle bases, and the defect
machinery of labelings: the defect subspace, rooted-difference nullity,
algebraic lifts and the extended kernel basis.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import exactla
from .errors import (
    AmbientMismatch,
    DifferentComponents,
    InternalInconsistency,
    NotInAlgebraicCycleSpace,
)
from .exactla import Matrix, Subspace
from .field import FieldSpec
from .tensor import TensorElem, basis_of_span


@dataclass(frozen=True)
class Multigraph:
    """Directed multigraph on vertices 0..vertex_count-1; loops and parallel
    edges are allowed."""

    vertex_count: int
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(s), int(t)) for s, t in self.edges))
        for s, t in self.edges:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise AmbientMismatch(f"edge ({s}, {t}) leaves the vertex range")

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class ComponentInfo:
    labels: tuple  # per-vertex component id
    count: int


def incidence_matrix(g: Multigraph, spec: FieldSpec) -> Matrix:
    """|X| x |E| signed incidence matrix: column e is +1 at the target and
    -1 at the source; loop columns cancel to zero."""
    z, o = spec.zero, spec.one
    neg_one = spec.neg(o)
    rows = [[z] * g.edge_count for _ in range(g.vertex_count)]
    for j, (s, t) in enumerate(g.edges):
        if s == t:
            continue
        rows[t][j] = o
        rows[s][j] = neg_one
    return Matrix(spec, rows, g.edge_count)


def _adjacency(g: Multigraph) -> list:
    adj: list = [[] for _ in range(g.vertex_count)]
    for j, (s, t) in enumerate(g.edges):
        adj[s].append((j, t))
        if s != t:
            adj[t].append((j, s))
    return adj


def weak_components(g: Multigraph) -> ComponentInfo:
    """Components of the underlying undirected graph; ids are assigned in
    increasing order of each component's smallest vertex."""
    labels = [-1] * g.vertex_count
    adj = _adjacency(g)
    count = 0
    for start in range(g.vertex_count):
        if labels[start] >= 0:
            continue
        labels[start] = count
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for _, u in adj[v]:
                if labels[u] < 0:
                    labels[u] = count
                    queue.append(u)
        count += 1
    return ComponentInfo(tuple(labels), count)


@dataclass(frozen=True)
class SpanningForest:
    """Minimum-edge-index spanning forest with per-component BFS roots."""

    graph: Multigraph
    tree_edges: frozenset
    roots: tuple                 # one root (its smallest vertex) per component
    parent_vertex: tuple         # parent in the rooted forest, None at roots
    parent_edge: tuple           # tree edge to the parent, None at roots
    depth: tuple
    components: ComponentInfo


def spanning_forest(g: Multigraph) -> SpanningForest:
    """Deterministic spanning forest.

    Edges are scanned in index order and kept whenever they join two
    distinct partial components (the unique forest that is minimal in the
    edge-index order); each tree is then rooted at the smallest vertex of
    its component.
    """
    comp = weak_components(g)
    ds = list(range(g.vertex_count))

    def find(x: int) -> int:
        while ds[x] != x:
            ds[x] = ds[ds[x]]
            x = ds[x]
        return x

    tree: list = []
    for j, (s, t) in enumerate(g.edges):
        rs, rt = find(s), find(t)
        if rs != rt:
            ds[rs] = rt
            tree.append(j)

    tree_adj: list = [[] for _ in range(g.vertex_count)]
    for j in tree:
        s, t = g.edges[j]
        tree_adj[s].append((j, t))
        tree_adj[t].append((j, s))

    roots = []
    parent_vertex: list = [None] * g.vertex_count
    parent_edge: list = [None] * g.vertex_count
    depth = [0] * g.vertex_count
    seen = [False] * g.vertex_count
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        roots.append(start)
        seen[start] = True
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for j, u in tree_adj[v]:
                if not seen[u]:
                    seen[u] = True
                    parent_vertex[u] = v
                    parent_edge[u] = j
                    depth[u] = depth[v] + 1
                    queue.append(u)
    return SpanningForest(
        graph=g,
        tree_edges=frozenset(tree),
        roots=tuple(roots),
        parent_vertex=tuple(parent_vertex),
        parent_edge=tuple(parent_edge),
        depth=tuple(depth),
        components=comp,
    )


def signed_path_vector(f: SpanningForest, a: int, b: int, spec: FieldSpec) -> list:
    """Edge-coefficient vector of the unique tree path from a to b.

    A tree edge picks up +1 when traversed source-to-target and -1 the
    other way, so the incidence matrix telescopes the result to 1_b - 1_a.
    """
    g = f.graph
    if f.components.labels[a] != f.components.labels[b]:
        raise DifferentComponents(f"vertices {a} and {b} lie in different components")
    vec = [spec.zero] * g.edge_count
    one, neg_one = spec.one, spec.neg(spec.one)

    up_a: list = []   # edges climbing from a toward the root
    up_b: list = []
    va, vb = a, b
    while f.depth[va] > f.depth[vb]:
        up_a.append((f.parent_edge[va], va))
        va = f.parent_vertex[va]
    while f.depth[vb] > f.depth[va]:
        up_b.append((f.parent_edge[vb], vb))
        vb = f.parent_vertex[vb]
    while va != vb:
        up_a.append((f.parent_edge[va], va))
        up_b.append((f.parent_edge[vb], vb))
        va = f.parent_vertex[va]
        vb = f.parent_vertex[vb]

    for e, child in up_a:
        # traversed child -> parent
        vec[e] = one if g.edges[e][0] == child else neg_one
    for e, child in up_b:
        # traversed parent -> child
        vec[e] = one if g.edges[e][1] == child else neg_one
    return vec


def topological_cycle_basis(g: Multigraph, f: SpanningForest, spec: FieldSpec) -> list:
    """One fundamental cycle 1_e - path(s(e), t(e)) per non-tree edge."""
    cycles = []
    for e in range(g.edge_count):
        if e in f.tree_edges:
            continue
        s, t = g.edges[e]
        vec = signed_path_vector(f, s, t, spec)
        vec = [spec.neg(x) for x in vec]
        vec[e] = spec.add(vec[e], spec.one)
        cycles.append(vec)
    return cycles


@dataclass(frozen=True)
class Labeling:
    """Per-vertex coordinate vectors over a shared field.

    The ambient coordinates come from one fixed basis (for tensor labels,
    the graded-lex word basis of the union of supports).
    """

    graph: Multigraph
    spec: FieldSpec
    vectors: tuple
    ambient_dim: int = field(default=-1)

    def __post_init__(self):
        if len(self.vectors) != self.graph.vertex_count:
            raise AmbientMismatch("one label vector per vertex is required")
        dim = self.ambient_dim
        if dim < 0:
            dim = len(self.vectors[0]) if self.vectors else 0
            object.__setattr__(self, "ambient_dim", dim)
        object.__setattr__(self, "vectors", tuple(tuple(v) for v in self.vectors))
        for v in self.vectors:
            if len(v) != dim:
                raise AmbientMismatch("label vectors of unequal length")


def labeling_from_tensors(g: Multigraph, spec: FieldSpec, tensors: Sequence[TensorElem]) -> Labeling:
    _, coords = basis_of_span(spec, list(tensors))
    return Labeling(g, spec, tuple(tuple(r) for r in coords.rows), coords.ncols)


def label_matrix(l: Labeling) -> Matrix:
    """Coordinate matrix of the linear extension of the labeling
    (columns indexed by vertices)."""
    rows = [
        [l.vectors[x][i] for x in range(l.graph.vertex_count)]
        for i in range(l.ambient_dim)
    ]
    return Matrix(l.spec, rows, l.graph.vertex_count)


def labeled_incidence(l: Labeling) -> Matrix:
    """Coordinate matrix of the labeled incidence map: column e holds
    label(target) - label(source); loop columns vanish."""
    g = l.graph
    sub = l.spec.sub
    rows = [[l.spec.zero] * g.edge_count for _ in range(l.ambient_dim)]
    for j, (s, t) in enumerate(g.edges):
        if s == t:
            continue
        vt, vs = l.vectors[t], l.vectors[s]
        for i in range(l.ambient_dim):
            d = sub(vt[i], vs[i])
            if d:
                rows[i][j] = d
    return Matrix(l.spec, rows, g.edge_count)


@dataclass(frozen=True)
class DefectResult:
    defect: int
    space: Subspace  # Im(incidence) cap Ker(label extension), inside F^X


def defect(l: Labeling) -> DefectResult:
    """Defect subspace and invariant of a labeling.

    The dimension is cross-checked against the rank-drop identity
    (|X| - c) - rank(labeled incidence); disagreement is a library bug.
    """
    g = l.graph
    b = incidence_matrix(g, l.spec)
    image = exactla.image_basis(b)
    kernel = exactla.kernel_basis(label_matrix(l))
    space = exactla.intersect(image, kernel)
    comp = weak_components(g)
    drop = (g.vertex_count - comp.count) - exactla.rank(labeled_incidence(l))
    if space.dim != drop:
        raise InternalInconsistency(
            f"defect {space.dim} disagrees with rank drop {drop}"
        )
    return DefectResult(space.dim, space)


def rooted_difference_nullity(l: Labeling, f: SpanningForest) -> int:
    """Nullity of x -> label(x) - label(root of x's component), x non-root.

    Equals the defect invariant and the corank of the matroid of rooted
    label differences; independent of the basepoint choice.
    """
    g = l.graph
    sub = l.spec.sub
    root_of = {}
    for r in f.roots:
        root_of[f.components.labels[r]] = r
    cols = []
    for x in range(g.vertex_count):
        r = root_of[f.components.labels[x]]
        if x == r:
            continue
        vr = l.vectors[r]
        cols.append([sub(l.vectors[x][i], vr[i]) for i in range(l.ambient_dim)])
    if not cols:
        return 0
    m = Matrix(l.spec, [list(col) for col in cols], l.ambient_dim).transpose()
    return m.ncols - exactla.rank(m)


def algebraic_lift(l: Labeling, f: SpanningForest, r: Sequence) -> list:
    """Edge vector zeta with incidence image r and zero labeled image.

    Built from signed tree paths: zeta = sum over components, over
    non-root x, of r_x * path(root, x).
    """
    g = l.graph
    spec = l.spec
    b = incidence_matrix(g, spec)
    if not exactla.image_basis(b).member(r) or not exactla.kernel_basis(label_matrix(l)).member(r):
        raise NotInAlgebraicCycleSpace("vector is not in the defect subspace")
    root_of = {}
    for root in f.roots:
        root_of[f.components.labels[root]] = root
    vec = [spec.zero] * g.edge_count
    add, mul = spec.add, spec.mul
    for x in range(g.vertex_count):
        rx = r[x]
        if not rx or root_of[f.components.labels[x]] == x:
            continue
        path = signed_path_vector(f, root_of[f.components.labels[x]], x, spec)
        for j, p in enumerate(path):
            if p:
                vec[j] = add(vec[j], mul(rx, p))
    if b.apply(vec) != list(r):
        raise InternalInconsistency("lift does not map onto the requested vector")
    if any(labeled_incidence(l).apply(vec)):
        raise InternalInconsistency("lift is not in the labeled kernel")
    return vec


@dataclass(frozen=True)
class ExtendedKernelBasis:
    topological: tuple  # fundamental cycles, one per non-tree edge
    lifted: tuple       # lifts of the RREF basis of the defect subspace

    @property
    def vectors(self) -> list:
        return [list(v) for v in self.topological + self.lifted]


def extended_kernel_basis(l: Labeling, f: Optional[SpanningForest] = None) -> ExtendedKernelBasis:
    """Basis of the labeled kernel: fundamental cycles plus algebraic lifts.

    Independence, kernel membership, cardinality and span equality with the
    directly eliminated kernel are all verified before returning.
    """
    g = l.graph
    spec = l.spec
    if f is None:
        f = spanning_forest(g)
    topological = topological_cycle_basis(g, f, spec)
    dres = defect(l)
    lifted = [algebraic_lift(l, f, row) for row in dres.space.basis]
    vectors = topological + lifted
    expected = g.edge_count - g.vertex_count + f.components.count + dres.defect
    if len(vectors) != expected:
        raise InternalInconsistency("extended basis has the wrong cardinality")
    span = Subspace.from_vectors(spec, g.edge_count, vectors)
    if span.dim != len(vectors):
        raise InternalInconsistency("extended basis is linearly dependent")
    direct = exactla.kernel_basis(labeled_incidence(l))
    if span != direct:
        raise InternalInconsistency("extended basis does not span the labeled kernel")
    return ExtendedKernelBasis(
        tuple(tuple(v) for v in topological),
        tuple(tuple(v) for v in lifted),
    )
