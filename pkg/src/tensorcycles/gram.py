"""The edge Gram operator of the boundary map, computed exactly over Q.

The operator is the Gram matrix of the edge difference tensors in the
standard inner product.  Its kernel is the cycle space, its rank matches
the macrograph rank minus the defect, and its degree-truncated family forms
a Loewner-monotone chain whose rank increments mirror the defect drops.
All quantities here are rational: standard-basis inner products of the
constructions' integer-coefficient tensors are integers, and rank over Q
equals rank over R.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import exactla, multigraph, observe
from .errors import FieldMismatch, InternalInconsistency
from .exactla import Matrix, PsdCertificate, Subspace
from .field import Rationals
from .hypergraph import DIRECTED, SYM_QUAD, TensorHypergraph, analyze
from .tensor import inner_product


def _require_rationals(h: TensorHypergraph) -> None:
    if not isinstance(h.spec, Rationals):
        raise FieldMismatch("Gram operators are computed exactly over Q")


@dataclass(frozen=True)
class GramMatrix:
    matrix: Matrix
    truncation_level: Optional[int] = None


def _gram_from_tensors(h: TensorHypergraph, diffs: Sequence) -> Matrix:
    n = len(diffs)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = inner_product(diffs[i], diffs[j])
            rows[i][j] = v
            rows[j][i] = v
    return Matrix(h.spec, rows, n)


def gram_matrix(h: TensorHypergraph) -> GramMatrix:
    """Edge Gram matrix with entries <diff_e, diff_e'>; certified PSD."""
    _require_rationals(h)
    diffs = [h.edge_difference(j) for j in range(h.edge_count)]
    m = _gram_from_tensors(h, diffs)
    cert = exactla.psd_certificate(m)
    if not cert.psd:
        raise InternalInconsistency("edge Gram matrix failed PSD certification")
    return GramMatrix(m)


@dataclass(frozen=True)
class GramRankReport:
    rank: int
    kernel: Subspace


def gram_rank_report(h: TensorHypergraph) -> GramRankReport:
    """Exact rank of the Gram matrix with the kernel identified as the
    cycle space; both identities are asserted."""
    _require_rationals(h)
    gm = gram_matrix(h).matrix
    kernel = exactla.kernel_basis(gm)
    cycle_space = exactla.kernel_basis(h.coords.boundary)
    if kernel != cycle_space:
        raise InternalInconsistency("Gram kernel differs from the cycle space")
    rk = h.edge_count - kernel.dim
    report = analyze(h)
    if rk != report.macro_vertex_count - report.macro_component_count - report.defect:
        raise InternalInconsistency("Gram rank violates the rank identity")
    return GramRankReport(rk, kernel)


@dataclass(frozen=True)
class TruncatedGram:
    level: int
    cumulative: Matrix   # Gram of the degree-truncated differences
    component: Matrix    # Gram of the degree-k homogeneous components


def truncated_grams(h: TensorHypergraph) -> list:
    """Per-degree Gram components and their cumulative sums.

    Asserts cumulative(k) = sum of components 0..k entrywise and that the
    top level reproduces the full Gram matrix.
    """
    _require_rationals(h)
    diffs = [h.edge_difference(j) for j in range(h.edge_count)]
    top = h.max_degree
    out = []
    running = Matrix.zeros(h.spec, h.edge_count, h.edge_count)
    for k in range(top + 1):
        component = _gram_from_tensors(h, [d.degree_component(k) for d in diffs])
        cumulative = _gram_from_tensors(h, [d.truncate_le(k) for d in diffs])
        running = running + component
        if running != cumulative:
            raise InternalInconsistency("truncated Gram sum identity fails")
        out.append(TruncatedGram(k, cumulative, component))
    if out and out[-1].cumulative != gram_matrix(h).matrix:
        raise InternalInconsistency("top truncated Gram differs from the full Gram")
    return out


def loewner_chain_certify(h: TensorHypergraph) -> list:
    """PSD certificates for every consecutive truncated-Gram difference.

    Index k certifies cumulative(k) - cumulative(k-1), with the empty
    operator at level -1; any failure is a library bug.
    """
    _require_rationals(h)
    levels = truncated_grams(h)
    certs = []
    prev = Matrix.zeros(h.spec, h.edge_count, h.edge_count)
    for tg in levels:
        cert = exactla.psd_certificate(tg.cumulative - prev)
        if not cert.psd:
            raise InternalInconsistency(
                f"Loewner chain step at degree {tg.level} is not PSD"
            )
        certs.append(cert)
        prev = tg.cumulative
    return certs


def rank_increment_check(h: TensorHypergraph) -> bool:
    """Rank increments of the truncated Grams equal the defect drops.

    Uses the conventions rank(level -1) = 0 and defect(-1) =
    |V_macro| - c_macro.
    """
    _require_rationals(h)
    levels = truncated_grams(h)
    comp = multigraph.weak_components(h.macrograph.graph)
    v = len(h.macrograph.tensors)
    table = observe.degree_filtration(h)
    defects = [v - comp.count] + table.defects()
    prev_rank = 0
    for k, tg in enumerate(levels):
        rk = exactla.rank(tg.cumulative)
        if rk - prev_rank != defects[k] - defects[k + 1]:
            return False
        prev_rank = rk
    return True


SIMPLE_SYM_QUAD = "loopless_simple_sym_quad"
DIRECTED_GRAPH = "directed_graph"
GENERIC = "generic"


@dataclass(frozen=True)
class SpectrumReport:
    structure: str
    eigenvalues: Optional[tuple]  # ascending (eigenvalue, multiplicity); None if irrational
    rank: int
    psd: bool


def _loopless_simple_sym_quad(h: TensorHypergraph) -> bool:
    if h.edge_count == 0 or any(es.tag != SYM_QUAD for es in h.edge_specs):
        return False
    pairs = [frozenset(es.members) for es in h.edge_specs]
    if any(len(p) != 2 for p in pairs):
        return False
    return len(set(pairs)) == len(pairs)


def structured_spectrum(h: TensorHypergraph) -> SpectrumReport:
    """Closed-form spectra for the structured cases, else the generic
    rational-root computation.

    Loopless simple symmetric quadratic instances have Gram matrix
    2I + J, all ones plus twice the identity, so the spectrum depends only
    on the edge count; ordinary directed graphs reproduce the classical
    edge Laplacian, the incidence matrix transposed times itself.
    """
    _require_rationals(h)
    gm = gram_matrix(h).matrix
    m = h.edge_count
    if _loopless_simple_sym_quad(h):
        expected = [
            [Fraction(3) if i == j else Fraction(1) for j in range(m)]
            for i in range(m)
        ]
        if gm.rows != expected:
            raise InternalInconsistency("simple-graph Gram matrix is not 2I + J")
        if m == 1:
            eigenvalues = ((Fraction(3), 1),)
        else:
            eigenvalues = ((Fraction(2), m - 1), (Fraction(m + 2), 1))
        return SpectrumReport(SIMPLE_SYM_QUAD, eigenvalues, m, True)
    if h.edge_count and all(es.tag == DIRECTED for es in h.edge_specs):
        index = {v: i for i, v in enumerate(h.vertex_names)}
        edges = [(index[es.source], index[es.target]) for es in h.edge_specs]
        b = multigraph.incidence_matrix(
            multigraph.Multigraph(h.vertex_count, tuple(edges)), h.spec
        )
        if b.transpose() @ b != gm:
            raise InternalInconsistency(
                "directed-graph Gram matrix is not the classical edge Laplacian"
            )
        res = exactla.rational_spectrum(gm)
        return SpectrumReport(DIRECTED_GRAPH, res.eigenvalues, res.rank, res.psd)
    res = exactla.rational_spectrum(gm)
    return SpectrumReport(GENERIC, res.eigenvalues, res.rank, res.psd)


@dataclass(frozen=True)
class BoundsCheck:
    skipped: bool
    holds: bool = False
    energy: Optional[Fraction] = None          # quadratic form of the Gram matrix
    residual_norm_sq: Optional[Fraction] = None
    lower: Optional[Fraction] = None
    upper: Optional[Fraction] = None


def _project_onto(space: Subspace, vec: Sequence) -> list:
    """Orthogonal projection via the exact normal equations of the basis."""
    basis = [list(row) for row in space.basis]
    if not basis:
        return [Fraction(0)] * len(vec)
    d = len(basis)
    gram = [[sum(a * b for a, b in zip(basis[i], basis[j])) for j in range(d)] for i in range(d)]
    rhs = [sum(a * b for a, b in zip(basis[i], vec)) for i in range(d)]
    coeffs = exactla.solve(Matrix(space.spec, gram, d), rhs)
    if coeffs is None:
        raise InternalInconsistency("Gram system of an independent basis is singular")
    out = [Fraction(0)] * len(vec)
    for c, row in zip(coeffs, basis):
        if c:
            for i, x in enumerate(row):
                out[i] += c * x
    return out


def spectral_bounds_check(h: TensorHypergraph, xi: Sequence) -> BoundsCheck:
    """Check the two-sided eigenvalue bounds on the boundary energy of xi.

    Skipped (honestly, not approximated) when the spectrum is not fully
    rational.  Both inequalities are evaluated in exact arithmetic.
    """
    _require_rationals(h)
    report = structured_spectrum(h)
    if report.eigenvalues is None:
        return BoundsCheck(skipped=True)
    xi = [h.spec.coerce(x) for x in xi]
    gm = gram_matrix(h).matrix
    energy = exactla.quadratic_form(gm, xi)
    cycle_space = exactla.kernel_basis(h.coords.boundary)
    projected = _project_onto(cycle_space, xi)
    residual = [a - b for a, b in zip(xi, projected)]
    rnorm = sum(x * x for x in residual)
    nonzero = [ev for ev, _ in report.eigenvalues if ev]
    if not nonzero:
        holds = energy == 0 and rnorm == 0
        return BoundsCheck(False, holds, energy, rnorm)
    lo, hi = min(nonzero), max(nonzero)
    holds = lo * rnorm <= energy <= hi * rnorm
    return BoundsCheck(False, holds, energy, rnorm, lo, hi)
