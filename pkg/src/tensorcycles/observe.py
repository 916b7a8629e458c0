"""Observation maps, projected cycle spaces and the degree filtration.

An observation map is any linear map off the tensor algebra; composing it
with the boundary map coarsens the cycle space.  Degree truncations give a
filtration whose defect chain is monotone; the first-letter map recovers
the classical undirected cycle space in characteristic 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import exactla
from .errors import InternalInconsistency, WrongCharacteristic, WrongConstruction
from .exactla import Matrix, Subspace
from .hypergraph import SYM_QUAD, TensorHypergraph, analyze
from .multigraph import weak_components


class ObservationMap:
    """Base class; subclasses provide a coordinate matrix on a word index."""

    def matrix_on(self, words: Sequence, h: TensorHypergraph) -> Matrix:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class DegreeTruncation(ObservationMap):
    """Projection onto tensor degrees <= k."""

    degree: int

    def matrix_on(self, words, h):
        spec = h.spec
        z, o = spec.zero, spec.one
        rows = []
        for j, w in enumerate(words):
            if len(w) <= self.degree:
                row = [z] * len(words)
                row[j] = o
                rows.append(row)
        return Matrix(spec, rows, len(words))

    def describe(self):
        return f"degree<={self.degree}"


@dataclass(frozen=True)
class DegreeComponent(ObservationMap):
    """Projection onto the degree-k homogeneous component."""

    degree: int

    def matrix_on(self, words, h):
        spec = h.spec
        z, o = spec.zero, spec.one
        rows = []
        for j, w in enumerate(words):
            if len(w) == self.degree:
                row = [z] * len(words)
                row[j] = o
                rows.append(row)
        return Matrix(spec, rows, len(words))

    def describe(self):
        return f"degree=={self.degree}"


@dataclass(frozen=True)
class FirstLetter(ObservationMap):
    """Send a word to its first letter and the unit to zero."""

    def matrix_on(self, words, h):
        spec = h.spec
        z, o = spec.zero, spec.one
        rows = [[z] * len(words) for _ in range(h.vertex_count)]
        for j, w in enumerate(words):
            if w:
                rows[w[0]][j] = o
        return Matrix(spec, rows, len(words))

    def describe(self):
        return "first-letter"


@dataclass(frozen=True)
class CustomLinear(ObservationMap):
    """Observation map given by explicit columns on the occurring words.

    Words absent from `columns` are sent to zero, so finite data describes a
    map off the whole (infinite-dimensional) tensor algebra.
    """

    columns: tuple          # ((word, coordinate tuple), ...)
    codomain_dim: int

    def matrix_on(self, words, h):
        spec = h.spec
        table = {tuple(w): col for w, col in self.columns}
        z = spec.zero
        rows = [[z] * len(words) for _ in range(self.codomain_dim)]
        for j, w in enumerate(words):
            col = table.get(w)
            if col is None:
                continue
            for i, c in enumerate(col):
                rows[i][j] = c
        return Matrix(spec, rows, len(words))

    def describe(self):
        return f"custom({self.codomain_dim})"


@dataclass(frozen=True)
class ProjectedAnalysis:
    cycle_dim: int
    defect: int
    space: Subspace  # the projected cycle space inside F^Q1


def observed_matrices(h: TensorHypergraph, rho: ObservationMap) -> tuple:
    """Coordinate matrices of rho composed with the evaluation and boundary maps."""
    coords = h.coords
    rm = rho.matrix_on(coords.words, h)
    return rm @ coords.evaluation, rm @ coords.boundary


def projected_analysis(h: TensorHypergraph, rho: ObservationMap) -> ProjectedAnalysis:
    """Projected cycle space and defect; the dimension identity is asserted."""
    coords = h.coords
    obs_eval, obs_boundary = observed_matrices(h, rho)
    image = exactla.image_basis(coords.incidence)
    defect = exactla.intersect(image, exactla.kernel_basis(obs_eval)).dim
    space = exactla.kernel_basis(obs_boundary)
    comp = weak_components(h.macrograph.graph)
    v = len(h.macrograph.tensors)
    if space.dim != h.edge_count - v + comp.count + defect:
        raise InternalInconsistency("projected cycle space violates the dimension formula")
    return ProjectedAnalysis(space.dim, defect, space)


def quotient_dim(h: TensorHypergraph, rho: ObservationMap) -> int:
    """Dimension of (image of boundary) cap (kernel of rho).

    Realizes the projected-over-exact quotient; asserted equal to the
    defect gap and to the cycle-dimension gap.
    """
    coords = h.coords
    rm = rho.matrix_on(coords.words, h)
    image = exactla.image_basis(coords.boundary)
    q = exactla.intersect(image, exactla.kernel_basis(rm)).dim
    base = projected_analysis(h, DegreeTruncation(h.max_degree))
    proj = projected_analysis(h, rho)
    if q != proj.defect - base.defect or q != proj.cycle_dim - base.cycle_dim:
        raise InternalInconsistency("observation quotient does not match the defect gap")
    return q


@dataclass(frozen=True)
class FiltrationRow:
    degree: int
    cycle_dim: int
    defect: int


@dataclass(frozen=True)
class FiltrationTable:
    max_degree: int
    rows: tuple

    def defects(self) -> list:
        return [r.defect for r in self.rows]

    def cycle_dims(self) -> list:
        return [r.cycle_dim for r in self.rows]


def degree_filtration(h: TensorHypergraph) -> FiltrationTable:
    """Cycle dimension and defect per truncation level k = 0..K.

    K is the top word length over the actual boundary supports, so
    characteristic-p collapses shorten the table consistently.  The chain
    inclusions and the defect monotonicity are asserted.
    """
    top = h.max_degree
    rows = []
    spaces = []
    for k in range(top + 1):
        pa = projected_analysis(h, DegreeTruncation(k))
        rows.append(FiltrationRow(k, pa.cycle_dim, pa.defect))
        spaces.append(pa.space)
    for k in range(top):
        if rows[k + 1].defect > rows[k].defect:
            raise InternalInconsistency("defect filtration is not monotone")
        if not spaces[k].contains(spaces[k + 1]):
            raise InternalInconsistency("cycle filtration chain inclusion fails")
    if rows and rows[-1].defect != analyze(h).defect:
        raise InternalInconsistency("filtration endpoint misses the exact defect")
    return FiltrationTable(top, tuple(rows))


def graded_quotients(h: TensorHypergraph) -> list:
    """Per-degree defect drops, checked against the graded realization.

    Index k of the returned list is the drop from level k-1 to level k,
    with the empty-observation convention defect(-1) = |V_macro| - c_macro.
    The drop equals the rank of the degree-k boundary component restricted
    to the level-(k-1) cycle space, and the drops sum to the full rank.
    """
    coords = h.coords
    comp = weak_components(h.macrograph.graph)
    v = len(h.macrograph.tensors)
    table = degree_filtration(h)
    defects = [v - comp.count] + table.defects()
    drops = [defects[k] - defects[k + 1] for k in range(len(defects) - 1)]
    spec = h.spec
    prev_space: Optional[Subspace] = None  # None means the full edge space
    for k in range(table.max_degree + 1):
        component = DegreeComponent(k).matrix_on(coords.words, h) @ coords.boundary
        if prev_space is None:
            basis = [list(row) for row in Matrix.identity(spec, h.edge_count).rows]
        else:
            basis = [list(row) for row in prev_space.basis]
        images = [component.apply(vec) for vec in basis]
        realized = Subspace.from_vectors(spec, component.nrows, images).dim
        if realized != drops[k]:
            raise InternalInconsistency(
                f"graded quotient at degree {k} is {realized}, expected drop {drops[k]}"
            )
        prev_space = projected_analysis(h, DegreeTruncation(k)).space
    total = sum(drops)
    exact_defect = table.rows[-1].defect if table.rows else 0
    if total != (v - comp.count) - exact_defect:
        raise InternalInconsistency("graded drops do not sum to the boundary rank")
    return drops


@dataclass(frozen=True)
class RecoveryResult:
    match: bool
    mismatches: tuple           # (vertex index, edge index) positions that differ
    observed_kernel: Subspace
    classical_kernel: Subspace

    @property
    def kernels_match(self) -> bool:
        return self.observed_kernel == self.classical_kernel


def classical_incidence(h: TensorHypergraph) -> Matrix:
    """Classical undirected 0/1 incidence matrix of a symmetric quadratic
    encoding; loop columns are zero."""
    spec = h.spec
    z, o = spec.zero, spec.one
    index = {v: i for i, v in enumerate(h.vertex_names)}
    rows = [[z] * h.edge_count for _ in range(h.vertex_count)]
    for j, es in enumerate(h.edge_specs):
        if es.tag != SYM_QUAD:
            raise WrongConstruction("classical incidence needs symmetric quadratic edges")
        members = {index[v] for v in es.members}
        if len(members) == 1:
            continue
        for v in members:
            rows[v][j] = o
    return Matrix(spec, rows, h.edge_count)


def classical_recovery(h: TensorHypergraph) -> RecoveryResult:
    """Compare the first-letter observed incidence with the classical one.

    Defined for symmetric quadratic encodings over characteristic 2, where
    the two coincide entrywise and so do their kernels.
    """
    if h.spec.characteristic() != 2:
        raise WrongCharacteristic("classical recovery needs characteristic 2")
    if any(es.tag != SYM_QUAD for es in h.edge_specs):
        raise WrongConstruction("classical recovery needs symmetric quadratic edges")
    classical = classical_incidence(h)
    _, observed = observed_matrices(h, FirstLetter())
    mismatches = tuple(
        (i, j)
        for i in range(classical.nrows)
        for j in range(classical.ncols)
        if classical.rows[i][j] != observed.rows[i][j]
    )
    return RecoveryResult(
        match=not mismatches,
        mismatches=mismatches,
        observed_kernel=exactla.kernel_basis(observed),
        classical_kernel=exactla.kernel_basis(classical),
    )
