"""Named worked instances and seeded random instance generators.

The named builders reproduce the structured cases used throughout the test
suite and the CLI fixture corpus; the random generators drive the
property-style self checks.  Everything is deterministic given the Random
instance passed in.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .field import GF2, FieldSpec, PrimeField, QQ, Rationals
from .hypergraph import (
    DIRECTED,
    DIRECTED_MULTISET,
    DIRECTED_ORDERED,
    MULTISET,
    ORDERED,
    RAW,
    SYM_QUAD,
    STANDARD_TAGS,
    DirectedEdge,
    DirectedMultisetEdge,
    DirectedOrderedEdge,
    MultisetEdge,
    OrderedEdge,
    RawEdge,
    SymQuadEdge,
    TensorHypergraph,
    build,
)
from .ohg import OrientedHypergraph, from_side_sets

FIELD_CYCLE = (QQ, GF2, PrimeField(3), PrimeField(5))


# ---------------------------------------------------------------------------
# Named instances
# ---------------------------------------------------------------------------

def _names(n: int) -> list:
    return [f"v{i}" for i in range(n)]


def triangle(spec: FieldSpec = QQ) -> TensorHypergraph:
    """K_3 in the symmetric quadratic encoding."""
    return build(
        ["a", "b", "c"],
        [SymQuadEdge(("a", "b")), SymQuadEdge(("b", "c")), SymQuadEdge(("c", "a"))],
        spec,
        ["e_ab", "e_bc", "e_ca"],
    )


def complete_graph(n: int, spec: FieldSpec = QQ) -> TensorHypergraph:
    names = _names(n)
    edges = []
    ids = []
    for i in range(n):
        for j in range(i + 1, n):
            edges.append(SymQuadEdge((names[i], names[j])))
            ids.append(f"e{i}{j}")
    return build(names, edges, spec, ids)


def path_graph(n: int, spec: FieldSpec = QQ) -> TensorHypergraph:
    names = _names(n)
    edges = [SymQuadEdge((names[i], names[i + 1])) for i in range(n - 1)]
    return build(names, edges, spec)


def cycle_graph(n: int, spec: FieldSpec = QQ) -> TensorHypergraph:
    names = _names(n)
    edges = [SymQuadEdge((names[i], names[(i + 1) % n])) for i in range(n)]
    return build(names, edges, spec)


def alg_cycle(spec: FieldSpec = QQ) -> TensorHypergraph:
    """Two raw edges from a to a+b and a-b; the minimal positive-defect case."""
    return build(
        ["a", "b"],
        [
            RawEdge(((("a",), 1),), ((("a",), 1), (("b",), 1))),
            RawEdge(((("a",), 1),), ((("a",), 1), (("b",), -1))),
        ],
        spec,
        ["e1", "e2"],
    )


def char2_parallel_loops(k: int) -> TensorHypergraph:
    """k parallel symmetric-quadratic loops at one vertex over F_2; every
    source tensor collapses to zero."""
    return build(["v"], [SymQuadEdge(("v",)) for _ in range(k)], GF2)


def directed_path(n: int = 3, spec: FieldSpec = QQ) -> TensorHypergraph:
    names = _names(n)
    edges = [DirectedEdge(names[i], names[i + 1]) for i in range(n - 1)]
    return build(names, edges, spec)


def parallel_directed(k: int = 3, spec: FieldSpec = QQ) -> TensorHypergraph:
    """k parallel directed edges; k-1 independent topological cycles."""
    return build(["u", "w"], [DirectedEdge("u", "w") for _ in range(k)], spec)


def sym_degenerate_multisets(spec: FieldSpec) -> TensorHypergraph:
    """Multiset hyperedges whose symmetrizations collapse in small
    characteristic ({v,v} over F_2, {v,v,v} over F_3)."""
    return build(
        ["u", "v", "w"],
        [
            MultisetEdge(("v", "v")),
            MultisetEdge(("v", "v", "v")),
            MultisetEdge(("u", "v", "w")),
            MultisetEdge(("u",)),
        ],
        spec,
    )


def oh_defect_example() -> OrientedHypergraph:
    """Four hyperedges out of d whose targets realize an inclusion-exclusion
    relation; the minimal positive-defect oriented instance."""
    return from_side_sets(
        ["a", "b", "c", "d"],
        [
            (("d",), ("c",)),
            (("d",), ("a", "c")),
            (("d",), ("b", "c")),
            (("d",), ("a", "b", "c")),
        ],
        ["e0", "e1", "e2", "e3"],
    )


# ---------------------------------------------------------------------------
# Random generators
# ---------------------------------------------------------------------------

def _random_multiset(rng: random.Random, names: Sequence[str], max_degree: int) -> tuple:
    k = rng.randint(1, max_degree)
    if k >= 2 and rng.random() < 0.5:
        # concentrate multiplicity to exercise the characteristic-p collapses
        v = rng.choice(names)
        out = [v] * rng.randint(2, k)
        while len(out) < k:
            out.append(rng.choice(names))
        return tuple(out)
    return tuple(rng.choice(names) for _ in range(k))


def _random_tuple(rng: random.Random, names: Sequence[str], max_degree: int) -> tuple:
    return tuple(rng.choice(names) for _ in range(rng.randint(1, max_degree)))


def _random_edge(rng: random.Random, tag: str, names: Sequence[str], max_degree: int):
    loop = rng.random() < 0.2
    if tag == SYM_QUAD:
        if loop or len(names) == 1:
            return SymQuadEdge((rng.choice(names),))
        u, w = rng.sample(list(names), 2)
        return SymQuadEdge((u, w))
    if tag == DIRECTED:
        s = rng.choice(names)
        t = s if loop else rng.choice(names)
        return DirectedEdge(s, t)
    if tag == MULTISET:
        return MultisetEdge(_random_multiset(rng, names, max_degree))
    if tag == ORDERED:
        return OrderedEdge(_random_tuple(rng, names, max_degree))
    if tag == DIRECTED_MULTISET:
        sources = _random_multiset(rng, names, max_degree)
        targets = sources if loop else _random_multiset(rng, names, max_degree)
        return DirectedMultisetEdge(sources, targets)
    if tag == DIRECTED_ORDERED:
        sources = _random_tuple(rng, names, max_degree)
        targets = sources if loop else _random_tuple(rng, names, max_degree)
        return DirectedOrderedEdge(sources, targets)
    raise ValueError(f"unknown construction tag {tag!r}")


def _random_raw_tensor_terms(
    rng: random.Random, spec: FieldSpec, names: Sequence[str], max_degree: int
) -> tuple:
    terms = []
    for _ in range(rng.randint(0, 3)):
        word = tuple(rng.choice(names) for _ in range(rng.randint(0, max_degree)))
        if isinstance(spec, Rationals):
            coeff = str(rng.randint(-2, 2))
        else:
            coeff = str(rng.randrange(spec.characteristic()))
        terms.append((word, coeff))
    return tuple(terms)


def random_standard_instance(
    rng: random.Random,
    spec: FieldSpec,
    tag: str,
    max_vertices: int = 6,
    max_edges: int = 10,
    max_degree: int = 3,
) -> TensorHypergraph:
    """One single-construction instance; parallel edges appear with
    probability 0.2 and loop-like edges with probability 0.2."""
    names = _names(rng.randint(1, max_vertices))
    edge_count = rng.randint(1, max_edges)
    specs: list = []
    for _ in range(edge_count):
        if specs and rng.random() < 0.2:
            specs.append(rng.choice(specs))  # parallel duplicate
        else:
            specs.append(_random_edge(rng, tag, names, max_degree))
    return build(names, specs, spec)


def random_raw_instance(
    rng: random.Random,
    spec: FieldSpec,
    max_vertices: int = 6,
    max_edges: int = 8,
    max_degree: int = 3,
) -> TensorHypergraph:
    names = _names(rng.randint(1, max_vertices))
    specs = []
    for _ in range(rng.randint(1, max_edges)):
        specs.append(
            RawEdge(
                _random_raw_tensor_terms(rng, spec, names, max_degree),
                _random_raw_tensor_terms(rng, spec, names, max_degree),
            )
        )
    return build(names, specs, spec)


def random_mixed_instance(
    rng: random.Random,
    spec: FieldSpec,
    max_vertices: int = 6,
    max_edges: int = 8,
    max_degree: int = 3,
) -> TensorHypergraph:
    names = _names(rng.randint(1, max_vertices))
    specs = []
    for _ in range(rng.randint(2, max_edges)):
        tag = rng.choice(STANDARD_TAGS)
        specs.append(_random_edge(rng, tag, names, max_degree))
    return build(names, specs, spec)


def random_instance(rng: random.Random, spec: FieldSpec, kind: Optional[str] = None) -> TensorHypergraph:
    """Dispatch over the generator kinds; `kind` may be a construction tag,
    "raw" or "mixed" (None picks one at random)."""
    if kind is None:
        kind = rng.choice(STANDARD_TAGS + (RAW, "mixed"))
    if kind == RAW:
        return random_raw_instance(rng, spec)
    if kind == "mixed":
        return random_mixed_instance(rng, spec)
    return random_standard_instance(rng, spec, kind)


def random_oriented_hypergraph(
    rng: random.Random, max_vertices: int = 6, max_edges: int = 8
) -> OrientedHypergraph:
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(1, max_edges)
    rows = tuple(
        tuple(rng.choice((-1, 0, 1)) for _ in range(ne)) for _ in range(nv)
    )
    return OrientedHypergraph(tuple(_names(nv)), tuple(f"e{j}" for j in range(ne)), rows)


def random_undirected_graph(
    rng: random.Random, max_vertices: int = 6, max_edges: int = 10
) -> TensorHypergraph:
    """Random symmetric-quadratic instance over F_2, loops allowed."""
    names = _names(rng.randint(1, max_vertices))
    specs = []
    for _ in range(rng.randint(1, max_edges)):
        if rng.random() < 0.25 or len(names) == 1:
            specs.append(SymQuadEdge((rng.choice(names),)))
        else:
            u, w = rng.sample(list(names), 2)
            specs.append(SymQuadEdge((u, w)))
    return build(names, specs, GF2)


# ---------------------------------------------------------------------------
# Relabeling (isomorphism invariance support)
# ---------------------------------------------------------------------------

def _map_edge(es, mapping: dict):
    if es.tag == SYM_QUAD:
        return SymQuadEdge(tuple(mapping[v] for v in es.members))
    if es.tag == DIRECTED:
        return DirectedEdge(mapping[es.source], mapping[es.target])
    if es.tag == MULTISET:
        return MultisetEdge(tuple(mapping[v] for v in es.members))
    if es.tag == ORDERED:
        return OrderedEdge(tuple(mapping[v] for v in es.letters))
    if es.tag == DIRECTED_MULTISET:
        return DirectedMultisetEdge(
            tuple(mapping[v] for v in es.sources),
            tuple(mapping[v] for v in es.targets),
        )
    if es.tag == DIRECTED_ORDERED:
        return DirectedOrderedEdge(
            tuple(mapping[v] for v in es.sources),
            tuple(mapping[v] for v in es.targets),
        )
    if es.tag == RAW:
        return RawEdge(
            tuple((tuple(mapping[v] for v in w), c) for w, c in es.source_terms),
            tuple((tuple(mapping[v] for v in w), c) for w, c in es.target_terms),
        )
    raise ValueError(f"unknown edge tag {es.tag!r}")


def relabeled(h: TensorHypergraph, rng: random.Random) -> TensorHypergraph:
    """Rename the vertices through a random permutation and shuffle the
    edge order; every analysis invariant must be unchanged."""
    names = list(h.vertex_names)
    shuffled = names[:]
    rng.shuffle(shuffled)
    mapping = dict(zip(names, shuffled))
    specs = [_map_edge(es, mapping) for es in h.edge_specs]
    order = list(range(len(specs)))
    rng.shuffle(order)
    new_order = list(h.vertex_names)
    rng.shuffle(new_order)
    return build(new_order, [specs[i] for i in order], h.spec)
