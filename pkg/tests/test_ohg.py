"""Oriented hypergraphs: the canonical correspondence and its kernels."""

import itertools
import random
from fractions import Fraction

import pytest

from tensorcycles import exactla, hypergraph as hg, instances, ohg
from tensorcycles.errors import ParseError
from tensorcycles.exactla import Subspace
from tensorcycles.field import GF2, GF3, PrimeField, QQ
from tensorcycles.ohg import (
    OrientedHypergraph,
    from_side_sets,
    kernel_equivalence,
    oh_dimension_report,
    signed_incidence_matrix,
    star_analysis,
    to_tensor_hg,
)

FIELDS = [QQ, GF2, GF3, PrimeField(5)]


# ---------------------------------------------------------------------------
# construction and conversion
# ---------------------------------------------------------------------------

def test_entries_validated():
    with pytest.raises(ParseError):
        OrientedHypergraph(("a",), ("e0",), ((2,),))


def test_single_edge_converts_to_directed_shape():
    o = from_side_sets(["c", "d"], [(("d",), ("c",))])
    h = to_tensor_hg(o, QQ)
    a, b = h.boundary[0]
    assert a.terms == {(1,): Fraction(1)}
    assert b.terms == {(0,): Fraction(1)}


def test_oh_defect_edge3_boundary():
    h = to_tensor_hg(instances.oh_defect_example(), QQ)
    a, b = h.boundary[3]
    assert a.terms == {(3,): Fraction(1)}  # d
    assert b.terms == {(0,): Fraction(1), (1,): Fraction(1), (2,): Fraction(1)}


def test_all_zero_column_gives_zero_boundary_pair():
    o = OrientedHypergraph(("a", "b"), ("e0",), ((0,), (0,)))
    h = to_tensor_hg(o, QQ)
    a, b = h.boundary[0]
    assert a.is_zero() and b.is_zero()


# ---------------------------------------------------------------------------
# kernel equivalence
# ---------------------------------------------------------------------------

def test_oh_defect_kernel():
    res = kernel_equivalence(instances.oh_defect_example(), QQ)
    assert res.dim == 1
    assert res.kernel.basis == (
        (Fraction(1), Fraction(-1), Fraction(-1), Fraction(1)),
    )


def test_directed_graph_as_oriented_hypergraph():
    """One -1 and one +1 per column reduces to the classical cycle space."""
    o = from_side_sets(
        ["a", "b", "c", "d"],
        [(("a",), ("b",)), (("b",), ("c",)), (("c",), ("d",)), (("d",), ("a",))],
    )
    res = kernel_equivalence(o, QQ)
    assert res.dim == 1
    rep = oh_dimension_report(o, QQ)
    assert rep.key_tuple() == (4, 4, 1, 0, 1)


def test_empty_oriented_hypergraph():
    o = OrientedHypergraph(("a",), (), ((),))
    res = kernel_equivalence(o, QQ)
    assert res.dim == 0


@pytest.mark.parametrize("spec", FIELDS, ids=lambda s: s.name())
def test_kernel_equivalence_random(spec):
    """The tensor cycle space equals the signed kernel over every field,
    including characteristic 2 where the two sides coincide."""
    rng = random.Random(31 + spec.characteristic())
    for _ in range(200):
        o = instances.random_oriented_hypergraph(rng)
        res = kernel_equivalence(o, spec)
        direct = exactla.kernel_basis(signed_incidence_matrix(o, spec))
        assert res.kernel == direct


# ---------------------------------------------------------------------------
# dimension report
# ---------------------------------------------------------------------------

def test_oh_defect_dimension_formula():
    rep = oh_dimension_report(instances.oh_defect_example(), QQ)
    assert rep.key_tuple() == (4, 5, 1, 1, 1)
    assert not rep.standard  # raw edges by design


def test_single_edge_dimension():
    o = from_side_sets(["a", "b"], [(("a",), ("b",))])
    rep = oh_dimension_report(o, QQ)
    assert rep.cycle_dim == 0 and rep.defect == 0


# ---------------------------------------------------------------------------
# star analysis
# ---------------------------------------------------------------------------

def test_star_analysis_oh_defect():
    res = star_analysis(instances.oh_defect_example(), QQ)
    assert res is not None
    assert res.edge_count == 4 and res.defect == 1
    assert res.dependence == (Fraction(1), Fraction(-1), Fraction(-1), Fraction(1))


def test_star_analysis_three_targets_is_independent():
    o = from_side_sets(
        ["a", "b", "c", "s"],
        [(("s",), ("a",)), (("s",), ("a", "b")), (("s",), ("a", "b", "c"))],
    )
    res = star_analysis(o, QQ)
    assert res is not None and res.defect == 0 and res.dependence is None


def test_star_analysis_single_target():
    o = from_side_sets(["a", "s"], [(("s",), ("a",))])
    res = star_analysis(o, QQ)
    assert res is not None and res.defect == 0


def test_star_analysis_rejects_non_stars():
    o = from_side_sets(
        ["a", "b", "c"], [(("a",), ("b",)), (("b",), ("c",))]
    )
    assert star_analysis(o, QQ) is None
    # duplicate targets are not a star either
    o = from_side_sets(
        ["a", "b"], [(("a",), ("b",)), (("a",), ("b",))]
    )
    assert star_analysis(o, QQ) is None


@pytest.mark.parametrize("spec", [QQ, GF2, GF3], ids=lambda s: s.name())
def test_star_exhaustive_small(spec):
    """All stars over a 3-element target universe: dependence iff defect,
    and fewer than 4 distinct indicator targets never depend."""
    universe = ("a", "b", "c")
    subsets = []
    for k in range(len(universe) + 1):
        subsets.extend(itertools.combinations(universe, k))
    for r in range(1, 4):
        for targets in itertools.combinations(subsets, r):
            o = from_side_sets(
                list(universe) + ["s"],
                [(("s",), t) for t in targets],
            )
            res = star_analysis(o, spec)
            assert res is not None
            assert res.defect == 0 and res.dependence is None
