"""Tensor-labeled hypergraphs: constructions, macrographs, the defect."""

import random
from fractions import Fraction

import pytest

from tensorcycles import exactla, hypergraph as hg, instances, multigraph, verify
from tensorcycles.errors import (
    EmptyStructuralData,
    NotStarShaped,
    UnknownVertex,
)
from tensorcycles.exactla import Subspace
from tensorcycles.field import GF2, GF3, PrimeField, QQ
from tensorcycles.tensor import TensorElem, sym

FIELDS = [QQ, GF2, GF3, PrimeField(5)]


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def test_sym_quad_edge_boundary():
    h = hg.build(["a", "b"], [hg.SymQuadEdge(("a", "b"))], QQ)
    a, b = h.boundary[0]
    assert a == sym(QQ, [0, 1])
    assert b == TensorElem.unit(QQ)


def test_directed_edge_boundary():
    h = hg.build(["a", "b"], [hg.DirectedEdge("a", "b")], QQ)
    a, b = h.boundary[0]
    assert a.terms == {(0,): Fraction(1)}
    assert b.terms == {(1,): Fraction(1)}


def test_sym_quad_loop_collapses_mod2():
    h = hg.build(["v"], [hg.SymQuadEdge(("v",))], GF2)
    a, b = h.boundary[0]
    assert a.is_zero()
    assert b == TensorElem.unit(GF2)


def test_sym_quad_loop_over_q():
    h = hg.build(["v"], [hg.SymQuadEdge(("v",))], QQ)
    assert h.boundary[0][0].terms == {(0, 0): Fraction(2)}


def test_multiset_and_ordered_boundaries():
    h = hg.build(
        ["a", "b"],
        [hg.MultisetEdge(("a", "a", "b")), hg.OrderedEdge(("a", "a", "b"))],
        QQ,
    )
    assert h.boundary[0][0] == sym(QQ, [0, 0, 1])
    assert h.boundary[1][0].terms == {(0, 0, 1): Fraction(1)}
    assert h.boundary[0][1] == h.boundary[1][1] == TensorElem.unit(QQ)


def test_directed_multiset_and_ordered():
    h = hg.build(
        ["a", "b"],
        [
            hg.DirectedMultisetEdge(("a",), ("b", "b")),
            hg.DirectedOrderedEdge(("a", "b"), ("b",)),
        ],
        GF3,
    )
    assert h.boundary[0][0].terms == {(0,): 1}
    assert h.boundary[0][1] == sym(GF3, [1, 1])
    assert h.boundary[1][0].terms == {(0, 1): 1}


def test_unknown_vertex_and_empty_data():
    with pytest.raises(UnknownVertex):
        hg.build(["a"], [hg.DirectedEdge("a", "z")], QQ)
    with pytest.raises(EmptyStructuralData):
        hg.MultisetEdge(())
    with pytest.raises(EmptyStructuralData):
        hg.SymQuadEdge(("a", "b", "c"))


# ---------------------------------------------------------------------------
# macrograph
# ---------------------------------------------------------------------------

def test_triangle_macrograph_is_a_star():
    h = instances.triangle(QQ)
    macro = h.macrograph
    assert len(macro.tensors) == 4
    comp = multigraph.weak_components(macro.graph)
    assert comp.count == 1
    # the unit is the common target of all three edges
    unit_idx = macro.index_of(TensorElem.unit(QQ))
    assert all(t == unit_idx for _, t in macro.graph.edges)


def test_alg_cycle_macrograph_star_center():
    h = instances.alg_cycle(QQ)
    macro = h.macrograph
    assert len(macro.tensors) == 3
    a_idx = macro.index_of(TensorElem.basis_word(QQ, (0,)))
    assert all(s == a_idx for s, _ in macro.graph.edges)


def test_char2_loops_macrograph_dedups_to_two():
    h = instances.char2_parallel_loops(3)
    macro = h.macrograph
    assert len(macro.tensors) == 2
    assert macro.tensors[0].is_zero()  # zero tensor sorts first


def test_macro_vertex_bound():
    rng = random.Random(3)
    for _ in range(20):
        h = instances.random_instance(rng, GF3)
        assert len(h.macrograph.tensors) <= 2 * h.edge_count


# ---------------------------------------------------------------------------
# boundary coordinates
# ---------------------------------------------------------------------------

def test_directed_instance_matches_classical_incidence():
    """Construction (2) boundary matrix is the classical incidence matrix up
    to the word ordering."""
    h = instances.directed_path(3, QQ)
    coords = h.coords
    g = multigraph.Multigraph(3, [(0, 1), (1, 2)])
    classical = multigraph.incidence_matrix(g, QQ)
    assert coords.words == ((0,), (1,), (2,))
    assert coords.boundary == classical


def test_equal_boundary_pair_gives_zero_column():
    h = hg.build(
        ["a", "b"],
        [hg.DirectedEdge("a", "a"), hg.DirectedEdge("a", "b")],
        QQ,
    )
    assert all(x == 0 for x in h.coords.boundary.column(0))


def test_triangle_boundary_injective():
    h = instances.triangle(QQ)
    assert exactla.kernel_basis(h.coords.boundary).dim == 0


# ---------------------------------------------------------------------------
# analyze: the paper's worked examples
# ---------------------------------------------------------------------------

def test_analyze_triangle():
    rep = hg.analyze(instances.triangle(QQ))
    assert rep.key_tuple() == (3, 4, 1, 0, 0)
    assert rep.standard and rep.construction_profile == {"sym_quad": 3}


def test_analyze_alg_cycle():
    rep = hg.analyze(instances.alg_cycle(QQ))
    assert rep.key_tuple() == (2, 3, 1, 1, 1)
    assert not rep.standard


def test_analyze_char2_loops():
    rep = hg.analyze(instances.char2_parallel_loops(3))
    assert rep.key_tuple() == (3, 2, 1, 0, 2)
    assert rep.topological_cycle_dim == 2


def test_analyze_empty_hypergraph():
    h = hg.build(["a"], [], QQ)
    rep = hg.analyze(h)
    assert rep.key_tuple() == (0, 0, 0, 0, 0)


def test_analyze_zero_boundary_edges():
    """Raw edges with equal sides are loops at one macro vertex."""
    h = hg.build(["a"], [hg.RawEdge((), ()), hg.RawEdge((), ())], QQ)
    rep = hg.analyze(h)
    assert rep.key_tuple() == (2, 1, 1, 0, 2)


# ---------------------------------------------------------------------------
# cycle decomposition
# ---------------------------------------------------------------------------

def test_decomposition_standard_has_no_algebraic_part():
    dec = hg.cycle_decomposition(instances.triangle(QQ))
    assert dec.algebraic_space.dim == 0 and dec.lifts == ()


def test_decomposition_alg_cycle():
    dec = hg.cycle_decomposition(instances.alg_cycle(QQ))
    assert dec.topological_space.dim == 0
    assert dec.algebraic_space.dim == 1
    assert len(dec.lifts) == 1
    span = Subspace.from_vectors(QQ, 2, [list(dec.lifts[0])])
    assert span == Subspace.from_vectors(QQ, 2, [[Fraction(1), Fraction(1)]])


def test_decomposition_parallel_edges():
    h = instances.parallel_directed(3, QQ)
    dec = hg.cycle_decomposition(h)
    assert dec.topological_space.dim == 2 and dec.lifts == ()
    # the pairwise differences against the first edge are topological cycles
    for i in (1, 2):
        xi = [Fraction(0)] * 3
        xi[0], xi[i] = Fraction(1), Fraction(-1)
        assert dec.topological_space.member(xi)


def test_lifts_map_onto_algebraic_basis():
    h = instances.alg_cycle(QQ)
    dec = hg.cycle_decomposition(h)
    incidence = h.coords.incidence
    for lift, row in zip(dec.lifts, dec.algebraic_space.basis):
        assert incidence.apply(list(lift)) == list(row)


# ---------------------------------------------------------------------------
# vanishing audit
# ---------------------------------------------------------------------------

def test_vanishing_on_random_multiset_instances():
    rng = random.Random(71)
    for _ in range(30):
        h = instances.random_standard_instance(rng, GF3, hg.MULTISET)
        assert hg.vanishing_audit(h).status == hg.VANISHES


def test_vanishing_not_claimed_for_raw():
    assert hg.vanishing_audit(instances.alg_cycle(QQ)).status == hg.NOT_STANDARD


def test_vanishing_not_claimed_for_mixed():
    """An ordered pair (v, v) and a quadratic loop at v are linearly
    dependent boundary tensors; mixing the constructions voids the claim."""
    h = hg.build(
        ["v", "w"],
        [hg.OrderedEdge(("v", "v")), hg.SymQuadEdge(("v",)), hg.SymQuadEdge(("v", "w"))],
        QQ,
    )
    assert not h.is_standard()
    assert hg.vanishing_audit(h).status == hg.NOT_STANDARD


def test_dependent_boundary_tensors_can_have_positive_defect():
    """Once constructions are mixed, collinear boundary tensors (v x v and
    its scalings) support an algebraic cycle out of a common source."""
    h = hg.build(
        ["v", "c"],
        [
            hg.DirectedOrderedEdge(("c",), ("v", "v")),
            hg.RawEdge(((("c",), 1),), ((("v", "v"), 2),)),
            hg.RawEdge(((("c",), 1),), ((("v", "v"), 3),)),
        ],
        QQ,
    )
    rep = hg.analyze(h)
    assert not rep.standard
    assert rep.defect == 1
    res = hg.star_defect(h)
    assert list(res.witness) == [Fraction(1), Fraction(-2), Fraction(1)]


# ---------------------------------------------------------------------------
# star defect and minimality
# ---------------------------------------------------------------------------

def test_star_defect_alg_cycle():
    res = hg.star_defect(instances.alg_cycle(QQ))
    assert res is not None
    assert res.defect_lower_bound == 1
    assert list(res.witness) == [Fraction(1), Fraction(1)]


def test_star_defect_oh_example():
    from tensorcycles import ohg

    h = ohg.to_tensor_hg(instances.oh_defect_example(), QQ)
    res = hg.star_defect(h)
    assert res.defect_lower_bound == 1
    span = Subspace.from_vectors(QQ, 4, [list(res.witness)])
    want = Subspace.from_vectors(
        QQ, 4, [[Fraction(1), Fraction(-1), Fraction(-1), Fraction(1)]]
    )
    assert span == want


def test_star_defect_none_for_independent_targets():
    h = hg.build(
        ["a", "b", "c"],
        [hg.DirectedEdge("a", "b"), hg.DirectedEdge("a", "c")],
        QQ,
    )
    assert hg.star_defect(h) is None


def test_star_defect_requires_star_shape():
    with pytest.raises(NotStarShaped):
        hg.star_defect(instances.directed_path(3, QQ))
    with pytest.raises(NotStarShaped):
        hg.star_defect(instances.parallel_directed(2, QQ))


def test_minimality_on_small_instances():
    assert hg.minimality_check(hg.build(["a", "b"], [hg.DirectedEdge("a", "b")], QQ))
    assert hg.minimality_check(instances.parallel_directed(4, QQ))  # |V_macro| = 2
    assert hg.minimality_check(instances.alg_cycle(QQ))


# ---------------------------------------------------------------------------
# randomized invariants
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("spec", FIELDS, ids=lambda s: s.name())
def test_dimension_formula_random(spec):
    """analyze() itself asserts the identities; this drives it across every
    generator kind."""
    rng = random.Random(spec.characteristic() + 101)
    for kind in hg.STANDARD_TAGS + (hg.RAW, "mixed"):
        for _ in range(10):
            rep = hg.analyze(instances.random_instance(rng, spec, kind))
            assert rep.cycle_dim == (
                rep.edge_count
                - rep.macro_vertex_count
                + rep.macro_component_count
                + rep.defect
            )


@pytest.mark.parametrize("spec", FIELDS, ids=lambda s: s.name())
def test_standard_instances_have_zero_defect(spec):
    rng = random.Random(spec.characteristic() + 7)
    for tag in hg.STANDARD_TAGS:
        for _ in range(10):
            h = instances.random_standard_instance(rng, spec, tag)
            assert hg.analyze(h).defect == 0


def test_isomorphism_invariance_random():
    rng = random.Random(83)
    for _ in range(15):
        spec = rng.choice(FIELDS)
        h = instances.random_instance(rng, spec)
        rep = hg.analyze(h)
        for _ in range(3):
            other = hg.analyze(instances.relabeled(h, rng))
            assert other.key_tuple() == rep.key_tuple()
            assert other.construction_profile == rep.construction_profile
            assert other.standard == rep.standard


def test_exhaustive_f2_kernel_count_random():
    rng = random.Random(89)
    for _ in range(25):
        h = instances.random_instance(rng, GF2)
        if h.edge_count > 12:
            continue
        rep = hg.analyze(h)
        count = verify.exhaustive_kernel_count_f2(h.coords.boundary)
        assert count == 2**rep.cycle_dim


def test_minimality_random():
    rng = random.Random(97)
    for _ in range(40):
        spec = rng.choice(FIELDS)
        h = instances.random_instance(rng, spec)
        assert hg.minimality_check(h)
