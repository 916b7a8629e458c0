"""Sparse elements of the tensor algebra on a finite vertex set.

An element is a finitely-supported map from words (tuples of vertex
indices; the empty word is the unit) to field scalars.  Normalization —
dropping zero coefficients — is enforced by every constructor, so
structural equality doubles as mathematical equality.  Word order is
graded-lex (by length, then letterwise), which makes every coordinate
matrix derived from a family of elements deterministic.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Sequence

from .errors import EmptyMultiset, FieldMismatch
from .exactla import Matrix
from .field import FieldSpec, Rationals

Word = tuple  # tuple of vertex indices; () is the unit of degree 0


def word_key(word: Word) -> tuple:
    return (len(word), word)


class TensorElem:
    """Finitely-supported word-to-scalar map over one field."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: FieldSpec, terms: dict):
        self.spec = spec
        self.terms = {w: c for w, c in terms.items() if c}

    @classmethod
    def zero(cls, spec: FieldSpec) -> "TensorElem":
        return cls(spec, {})

    @classmethod
    def unit(cls, spec: FieldSpec) -> "TensorElem":
        return cls(spec, {(): spec.one})

    @classmethod
    def basis_word(cls, spec: FieldSpec, letters: Sequence[int]) -> "TensorElem":
        return cls(spec, {tuple(letters): spec.one})

    @classmethod
    def from_terms(cls, spec: FieldSpec, terms: Iterable) -> "TensorElem":
        """Accumulate (word, coefficient) pairs, coercing the coefficients."""
        acc: dict = {}
        add, coerce = spec.add, spec.coerce
        for word, coeff in terms:
            w = tuple(word)
            c = coerce(coeff)
            if w in acc:
                acc[w] = add(acc[w], c)
            else:
                acc[w] = c
        return cls(spec, acc)

    def _check_spec(self, other: "TensorElem") -> None:
        if self.spec != other.spec:
            raise FieldMismatch("tensor elements over different fields")

    def __add__(self, other: "TensorElem") -> "TensorElem":
        self._check_spec(other)
        add = self.spec.add
        out = dict(self.terms)
        for w, c in other.terms.items():
            if w in out:
                out[w] = add(out[w], c)
            else:
                out[w] = c
        return TensorElem(self.spec, out)

    def __sub__(self, other: "TensorElem") -> "TensorElem":
        self._check_spec(other)
        sub, neg = self.spec.sub, self.spec.neg
        out = dict(self.terms)
        for w, c in other.terms.items():
            if w in out:
                out[w] = sub(out[w], c)
            else:
                out[w] = neg(c)
        return TensorElem(self.spec, out)

    def __neg__(self) -> "TensorElem":
        neg = self.spec.neg
        return TensorElem(self.spec, {w: neg(c) for w, c in self.terms.items()})

    def scale(self, coeff) -> "TensorElem":
        mul = self.spec.mul
        return TensorElem(self.spec, {w: mul(coeff, c) for w, c in self.terms.items()})

    def concat_mul(self, other: "TensorElem") -> "TensorElem":
        """Concatenation (tensor) product.  Present for completeness; the
        analysis pipeline relies only on the graded structure."""
        self._check_spec(other)
        acc: dict = {}
        add, mul = self.spec.add, self.spec.mul
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = mul(c1, c2)
                if w in acc:
                    acc[w] = add(acc[w], c)
                else:
                    acc[w] = c
        return TensorElem(self.spec, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def degree_component(self, k: int) -> "TensorElem":
        return TensorElem(self.spec, {w: c for w, c in self.terms.items() if len(w) == k})

    def truncate_le(self, k: int) -> "TensorElem":
        return TensorElem(self.spec, {w: c for w, c in self.terms.items() if len(w) <= k})

    @property
    def max_degree(self) -> int:
        """Largest word length in the support; 0 for the zero element."""
        if not self.terms:
            return 0
        return max(len(w) for w in self.terms)

    def support(self) -> list:
        return sorted(self.terms, key=word_key)

    def sort_key(self) -> tuple:
        """Total deterministic order: zero element first, then graded-lex."""
        return tuple((len(w), w, self.terms[w]) for w in self.support())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorElem)
            and self.spec == other.spec
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "TensorElem(0)"
        body = " + ".join(
            f"{self.spec.render_scalar(self.terms[w])}*{'*'.join(map(str, w)) if w else '1'}"
            for w in self.support()
        )
        return f"TensorElem({body})"


def _distinct_arrangements(counts: Counter) -> Iterator[Word]:
    """All distinct orderings of a multiset, lexicographically, without
    touching the k! permutations individually."""
    total = sum(counts.values())
    letters = sorted(counts)

    def rec(remaining: int, prefix: tuple) -> Iterator[Word]:
        if remaining == 0:
            yield prefix
            return
        for v in letters:
            if counts[v]:
                counts[v] -= 1
                yield from rec(remaining - 1, prefix + (v,))
                counts[v] += 1

    yield from rec(total, ())


def sym(spec: FieldSpec, multiset: Sequence[int]) -> TensorElem:
    """Symmetrization of a pure tensor given by a multiset of vertices.

    Computed in closed form: every distinct arrangement of the multiset,
    each with coefficient prod_v m_v! reduced into the field.  Vanishes
    exactly when the characteristic divides some multiplicity factorial.
    """
    if not multiset:
        raise EmptyMultiset("sym of the empty multiset")
    counts = Counter(multiset)
    coeff = 1
    for mult in counts.values():
        coeff *= factorial(mult)
    c = spec.coerce(coeff)
    if not c:
        return TensorElem.zero(spec)
    return TensorElem(spec, {w: c for w in _distinct_arrangements(counts)})


def sym_vanishes(spec: FieldSpec, multiset: Sequence[int]) -> bool:
    """True iff the symmetrization of the multiset is zero over `spec`."""
    if not multiset:
        raise EmptyMultiset("sym of the empty multiset")
    p = spec.characteristic()
    if p == 0:
        return False
    return max(Counter(multiset).values()) >= p


def inner_product(s: TensorElem, t: TensorElem) -> Fraction:
    """Standard inner product with the word basis orthonormal (over Q only)."""
    if not isinstance(s.spec, Rationals) or not isinstance(t.spec, Rationals):
        raise FieldMismatch("the tensor inner product is computed over Q")
    small, large = (s.terms, t.terms) if len(s.terms) <= len(t.terms) else (t.terms, s.terms)
    total = Fraction(0)
    for w, c in small.items():
        d = large.get(w)
        if d:
            total += c * d
    return total


def basis_of_span(spec: FieldSpec, elems: Sequence[TensorElem]) -> tuple[list, Matrix]:
    """Coordinatize a family of elements over the union of their supports.

    Returns the graded-lex ordered word index and the matrix whose row i is
    the coordinate vector of elems[i].
    """
    words: set = set()
    for t in elems:
        if t.spec != spec:
            raise FieldMismatch("element over a different field")
        words.update(t.terms)
    index = sorted(words, key=word_key)
    return basis_of_span_over(spec, elems, index)


def basis_of_span_over(
    spec: FieldSpec, elems: Sequence[TensorElem], words: Sequence[Word]
) -> tuple[list, Matrix]:
    """Coordinatize elements over a fixed word index (which must cover them)."""
    index = list(words)
    pos = {w: j for j, w in enumerate(index)}
    z = spec.zero
    rows = []
    for t in elems:
        row = [z] * len(index)
        for w, c in t.terms.items():
            row[pos[w]] = c
        rows.append(row)
    return index, Matrix(spec, rows, len(index))
