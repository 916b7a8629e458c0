"""Cross-check batteries: every theorem-backed invariant, run on demand.

Each check returns a CheckResult rather than raising, so a battery can be
reported as a whole; the CLI `verify` command and the test suite both run
through this module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from . import gram, hypergraph, instances, observe, ohg
from .errors import InternalInconsistency, TensorCyclesError
from .exactla import Matrix
from .field import Rationals
from .hypergraph import TensorHypergraph
from .ohg import OrientedHypergraph

EXHAUSTIVE_EDGE_LIMIT = 12


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _run(name: str, fn: Callable) -> CheckResult:
    try:
        detail = fn()
    except TensorCyclesError as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, True, detail or "")


def exhaustive_kernel_count_f2(m: Matrix) -> int:
    """Count kernel vectors of a matrix over F_2 by Gray-code enumeration.

    Maintains the syndrome as a row bitmask and flips one coordinate per
    step, so the full 2^n sweep needs one XOR per vector.  Independent of
    any elimination code path.
    """
    n = m.ncols
    col_masks = []
    for j in range(n):
        mask = 0
        for i in range(m.nrows):
            if m.rows[i][j]:
                mask |= 1 << i
        col_masks.append(mask)
    count = 1  # the zero vector
    syndrome = 0
    for t in range(1, 1 << n):
        syndrome ^= col_masks[(t & -t).bit_length() - 1]
        if syndrome == 0:
            count += 1
    return count


def check_tensor_instance(
    h: TensorHypergraph,
    rng: Optional[random.Random] = None,
    relabelings: int = 2,
) -> list:
    """Run the full invariant battery on one tensor-labeled hypergraph."""
    rng = rng or random.Random(0)
    checks: list = []

    report_box: dict = {}

    def analysis():
        report_box["report"] = hypergraph.analyze(h)
        return f"invariants {report_box['report'].key_tuple()}"

    checks.append(_run("analysis-identities", analysis))
    report = report_box.get("report")
    if report is None:
        return checks

    def vanishing():
        audit = hypergraph.vanishing_audit(h)
        if h.is_standard() and audit.status != hypergraph.VANISHES:
            raise InternalInconsistency(audit.detail or audit.status)
        return audit.status

    checks.append(_run("vanishing-audit", vanishing))

    def basis():
        dec = hypergraph.cycle_decomposition(h)
        incidence = h.coords.incidence
        for lift, row in zip(dec.lifts, dec.algebraic_space.basis):
            if incidence.apply(lift) != list(row):
                raise InternalInconsistency(
                    "lift does not map onto its algebraic basis row"
                )
        return f"{len(dec.topological_basis)} topological + {len(dec.lifts)} lifted"

    checks.append(_run("cycle-basis", basis))

    def minimality():
        if not hypergraph.minimality_check(h):
            raise InternalInconsistency("minimality bound violated")
        return None

    checks.append(_run("minimality", minimality))

    def isomorphism():
        key = (report.key_tuple(), report.standard, tuple(sorted(report.construction_profile.items())))
        for _ in range(relabelings):
            other = hypergraph.analyze(instances.relabeled(h, rng))
            other_key = (
                other.key_tuple(),
                other.standard,
                tuple(sorted(other.construction_profile.items())),
            )
            if other_key != key:
                raise InternalInconsistency(
                    f"relabeling changed the report: {other_key} != {key}"
                )
        return f"{relabelings} relabelings"

    checks.append(_run("isomorphism-invariance", isomorphism))

    def filtration():
        table = observe.degree_filtration(h)
        drops = observe.graded_quotients(h)
        return f"levels {len(table.rows)}, drops {drops}"

    checks.append(_run("degree-filtration", filtration))

    def quotients():
        for rho in (observe.DegreeTruncation(0), observe.FirstLetter()):
            observe.quotient_dim(h, rho)
        return None

    checks.append(_run("observation-quotients", quotients))

    if isinstance(h.spec, Rationals):
        def gram_battery():
            rep = gram.gram_rank_report(h)
            for row in gram.gram_matrix(h).matrix.rows:
                for x in row:
                    if h.is_standard() and x.denominator != 1:
                        raise InternalInconsistency(
                            "standard construction produced a non-integer Gram entry"
                        )
            gram.loewner_chain_certify(h)
            if not gram.rank_increment_check(h):
                raise InternalInconsistency("rank increments mismatch defect drops")
            gram.structured_spectrum(h)
            return f"rank {rep.rank}"

        checks.append(_run("gram-operator", gram_battery))

        def bounds():
            if h.edge_count == 0:
                return "no edges"
            basis_vec = [h.spec.zero] * h.edge_count
            basis_vec[0] = h.spec.one
            ones = [h.spec.one] * h.edge_count
            skipped = 0
            for xi in (basis_vec, ones):
                res = gram.spectral_bounds_check(h, xi)
                if res.skipped:
                    skipped += 1
                elif not res.holds:
                    raise InternalInconsistency("spectral bounds violated")
            return "skipped (irrational spectrum)" if skipped else "two vectors checked"

        checks.append(_run("spectral-bounds", bounds))

    if h.spec.characteristic() == 2 and h.edge_count <= EXHAUSTIVE_EDGE_LIMIT:
        def exhaustive():
            count = exhaustive_kernel_count_f2(h.coords.boundary)
            if count != 1 << report.cycle_dim:
                raise InternalInconsistency(
                    f"kernel count {count} != 2^{report.cycle_dim}"
                )
            return f"count {count}"

        checks.append(_run("exhaustive-kernel-count", exhaustive))

    if h.spec.characteristic() == 2 and h.edge_specs and h.is_standard() and h.edge_specs[0].tag == hypergraph.SYM_QUAD:
        def recovery():
            res = observe.classical_recovery(h)
            if not res.match or not res.kernels_match:
                raise InternalInconsistency("classical recovery mismatch")
            return f"classical kernel dim {res.classical_kernel.dim}"

        checks.append(_run("classical-recovery", recovery))

    return checks


def check_oriented_instance(o: OrientedHypergraph, spec) -> list:
    """Battery for oriented hypergraphs: kernel equality, dimensions, and
    the star-shaped affine-dependence reading when it applies."""
    checks = []

    def kernel():
        res = ohg.kernel_equivalence(o, spec)
        return f"dim {res.dim}"

    checks.append(_run("oriented-kernel-equivalence", kernel))
    checks.append(_run("oriented-dimension", lambda: str(ohg.oh_dimension_report(o, spec).cycle_dim)))

    def star():
        res = ohg.star_analysis(o, spec)
        if res is None:
            return "not star-shaped"
        return f"defect {res.defect}"

    checks.append(_run("oriented-star", star))
    return checks


def expectation_checks(report: hypergraph.AnalysisReport, expected: dict) -> list:
    """Compare an analysis report against a pinned expectation block."""
    checks = []
    for key, want in sorted(expected.items()):
        have = getattr(report, key, None)

        def compare(key=key, want=want, have=have):
            if have != want:
                raise InternalInconsistency(
                    f"expected {key} = {want}, computed {have}"
                )
            return str(want)

        checks.append(_run(f"expected-{key}", compare))
    return checks


def random_battery(count: int, seed: int, fields=None) -> list:
    """Seeded random sweep: instances cycle through the generator kinds and
    the field list; returns (name, checks) pairs in generation order."""
    rng = random.Random(seed)
    fields = tuple(fields) if fields else instances.FIELD_CYCLE
    kinds = hypergraph.STANDARD_TAGS + (hypergraph.RAW, "mixed", "oriented")
    results = []
    for i in range(count):
        spec = fields[i % len(fields)]
        kind = kinds[i % len(kinds)]
        name = f"random-{i:04d}-{kind}-{spec.name()}"
        if kind == "oriented":
            o = instances.random_oriented_hypergraph(rng)
            checks = check_oriented_instance(o, spec)
        else:
            h = instances.random_instance(rng, spec, kind)
            checks = check_tensor_instance(h, rng)
        results.append((name, checks))
    return results
