"""Exact linear algebra: echelon forms, subspaces, certificates, spectra."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tensorcycles import exactla
from tensorcycles.errors import AmbientMismatch, FieldMismatch, NotSymmetric
from tensorcycles.exactla import Matrix, Subspace
from tensorcycles.field import GF2, GF3, PrimeField, QQ

FIELDS = [QQ, GF2, GF3, PrimeField(5)]


def mat(spec, rows, ncols=None):
    return Matrix.from_rows(spec, rows, ncols)


# ---------------------------------------------------------------------------
# rref / rank / kernel / image
# ---------------------------------------------------------------------------

def test_rref_identity():
    res = exactla.rref(Matrix.identity(QQ, 3))
    assert res.rank == 3
    assert res.matrix == Matrix.identity(QQ, 3)


def test_rref_proportional_rows():
    res = exactla.rref(mat(QQ, [[1, 2], [2, 4]]))
    assert res.rank == 1
    assert res.pivots == (0,)
    assert res.matrix.rows == [[1, 2], [0, 0]]


def test_rref_mod2():
    res = exactla.rref(mat(GF2, [[1, 1], [1, 1]]))
    assert res.rank == 1


def test_kernel_identity_is_zero():
    assert exactla.kernel_basis(Matrix.identity(QQ, 4)).dim == 0


def test_kernel_of_zero_matrix_is_full():
    k = exactla.kernel_basis(Matrix.zeros(QQ, 2, 3))
    assert k == Subspace.full(QQ, 3)


def test_kernel_parity_check_by_enumeration():
    """Kernel of a sum-parity row over F_2, checked against all 8 vectors."""
    m = mat(GF2, [[1, 1, 1]])
    kernel = exactla.kernel_basis(m)
    members = [v for v in itertools.product((0, 1), repeat=3) if sum(v) % 2 == 0]
    assert kernel.dim == 2
    assert len(members) == 2**kernel.dim
    for v in members:
        assert kernel.member(list(v))


def test_image_basis():
    assert exactla.image_basis(Matrix.identity(GF3, 3)) == Subspace.full(GF3, 3)
    img = exactla.image_basis(mat(QQ, [[1, 2], [2, 4]]))
    assert img.basis == ((Fraction(1), Fraction(2)),)


def test_image_of_single_edge_incidence_column():
    # one edge u -> v: column is -1 at u, +1 at v
    img = exactla.image_basis(mat(QQ, [[-1], [1]]))
    assert img.basis == ((Fraction(1), Fraction(-1)),)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

def test_intersect_self():
    a = Subspace.from_vectors(QQ, 3, [[Fraction(1), Fraction(1), Fraction(0)]])
    assert exactla.intersect(a, a) == a


def test_intersect_transverse_lines():
    a = Subspace.from_vectors(QQ, 2, [[Fraction(1), Fraction(0)]])
    b = Subspace.from_vectors(QQ, 2, [[Fraction(0), Fraction(1)]])
    assert exactla.intersect(a, b).dim == 0


def test_intersect_planes():
    """(1,1,0) - (0,1,1) = (1,0,-1), so the line lies in the plane."""
    a = Subspace.from_vectors(
        QQ, 3, [[Fraction(1), Fraction(1), Fraction(0)], [Fraction(0), Fraction(1), Fraction(1)]]
    )
    b = Subspace.from_vectors(QQ, 3, [[Fraction(1), Fraction(0), Fraction(-1)]])
    inter = exactla.intersect(a, b)
    assert inter == b
    assert a.member([Fraction(1), Fraction(0), Fraction(-1)])


def test_member():
    s = Subspace.from_vectors(QQ, 2, [[Fraction(1), Fraction(1)]])
    assert s.member([Fraction(0), Fraction(0)])
    assert s.member([Fraction(2), Fraction(2)])
    assert not s.member([Fraction(1), Fraction(0)])
    line = Subspace.from_vectors(QQ, 2, [[Fraction(0), Fraction(1)]])
    assert not line.member([Fraction(1), Fraction(0)])


def test_ambient_mismatch():
    a = Subspace.from_vectors(QQ, 2, [[Fraction(1), Fraction(0)]])
    b = Subspace.from_vectors(QQ, 3, [[Fraction(1), Fraction(0), Fraction(0)]])
    with pytest.raises(AmbientMismatch):
        exactla.intersect(a, b)
    with pytest.raises(AmbientMismatch):
        a.member([Fraction(1)])


# ---------------------------------------------------------------------------
# PSD certification
# ---------------------------------------------------------------------------

def test_psd_identity():
    cert = exactla.psd_certificate(Matrix.identity(QQ, 3))
    assert cert.psd
    assert list(cert.pivots) == [Fraction(1)] * 3


def test_not_psd_hyperbolic():
    cert = exactla.psd_certificate(mat(QQ, [[0, 1], [1, 0]]))
    assert not cert.psd
    assert cert.witness == (Fraction(1), Fraction(-1))
    assert cert.witness_value == Fraction(-2)


def test_psd_two_i_plus_j():
    cert = exactla.psd_certificate(mat(QQ, [[3, 1, 1], [1, 3, 1], [1, 1, 3]]))
    assert cert.psd
    prod = Fraction(1)
    for p in cert.pivots:
        prod *= p
    assert prod == 20


def test_psd_requires_symmetry_and_rationals():
    with pytest.raises(NotSymmetric):
        exactla.psd_certificate(mat(QQ, [[1, 2], [0, 1]]))
    with pytest.raises(FieldMismatch):
        exactla.psd_certificate(mat(GF3, [[1, 0], [0, 1]]))


def test_psd_semidefinite_with_zero_block():
    cert = exactla.psd_certificate(mat(QQ, [[1, 0], [0, 0]]))
    assert cert.psd
    assert list(cert.pivots) == [Fraction(1), Fraction(0)]


def test_not_psd_negative_semidefinite():
    cert = exactla.psd_certificate(mat(QQ, [[-1, 0], [0, 0]]))
    assert not cert.psd
    value = exactla.quadratic_form(mat(QQ, [[-1, 0], [0, 0]]), cert.witness)
    assert value == cert.witness_value < 0


# ---------------------------------------------------------------------------
# char poly and spectra
# ---------------------------------------------------------------------------

def test_char_poly_identity():
    assert exactla.char_poly(Matrix.identity(QQ, 2)) == [
        Fraction(1), Fraction(-2), Fraction(1)
    ]


def test_char_poly_zero():
    assert exactla.char_poly(Matrix.zeros(QQ, 2, 2)) == [
        Fraction(1), Fraction(0), Fraction(0)
    ]


def test_char_poly_two_i_plus_j():
    # (x - 5)(x - 2)^2 = x^3 - 9x^2 + 24x - 20
    assert exactla.char_poly(mat(QQ, [[3, 1, 1], [1, 3, 1], [1, 1, 3]])) == [
        Fraction(1), Fraction(-9), Fraction(24), Fraction(-20)
    ]


def test_rational_spectrum_full():
    res = exactla.rational_spectrum(mat(QQ, [[3, 1, 1], [1, 3, 1], [1, 1, 3]]))
    assert res.eigenvalues == ((Fraction(2), 2), (Fraction(5), 1))
    res = exactla.rational_spectrum(mat(QQ, [[0, 0, 0], [0, 0, 0], [0, 0, 7]]))
    assert res.eigenvalues == ((Fraction(0), 2), (Fraction(7), 1))
    res = exactla.rational_spectrum(mat(QQ, [[2, -1], [-1, 2]]))
    assert res.eigenvalues == ((Fraction(1), 1), (Fraction(3), 1))


def test_rational_spectrum_partial_when_irrational():
    # eigenvalues 1 +- sqrt(2): not rational, fall back to rank + psd
    res = exactla.rational_spectrum(mat(QQ, [[1, 1], [1, 1]]) + mat(QQ, [[0, 0], [0, 0]]))
    assert res.full  # [[1,1],[1,1]] has eigenvalues 0 and 2
    res = exactla.rational_spectrum(mat(QQ, [[1, 1], [1, -1]]))
    assert not res.full
    assert res.rank == 2 and res.psd is False


def test_determinant_bareiss():
    assert exactla.determinant_bareiss(mat(QQ, [[3, 1, 1], [1, 3, 1], [1, 1, 3]])) == 20
    assert exactla.determinant_bareiss(mat(QQ, [[1, 2], [2, 4]])) == 0


def test_solve():
    m = mat(QQ, [[2, 0], [0, 4]])
    assert exactla.solve(m, [Fraction(2), Fraction(8)]) == [Fraction(1), Fraction(2)]
    inconsistent = mat(QQ, [[1, 1], [1, 1]])
    assert exactla.solve(inconsistent, [Fraction(0), Fraction(1)]) is None


# ---------------------------------------------------------------------------
# randomized invariants
# ---------------------------------------------------------------------------

def random_matrix(spec, rng, nrows, ncols):
    if spec.characteristic() == 0:
        entry = lambda: Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    else:
        entry = lambda: rng.randrange(spec.characteristic())
    return Matrix(spec, [[entry() for _ in range(ncols)] for _ in range(nrows)], ncols)


@pytest.mark.parametrize("spec", FIELDS, ids=lambda s: s.name())
def test_rank_transpose_and_rank_nullity(spec):
    rng = random.Random(11)
    for _ in range(40):
        m = random_matrix(spec, rng, rng.randint(0, 5), rng.randint(1, 5))
        rk = exactla.rank(m)
        assert rk == exactla.rank(m.transpose())
        assert exactla.kernel_basis(m).dim + rk == m.ncols


def test_gauss_rank_matches_bareiss_rank():
    rng = random.Random(5)
    for _ in range(60):
        m = random_matrix(QQ, rng, rng.randint(1, 5), rng.randint(1, 5))
        assert exactla.rank(m) == exactla.rank_bareiss(m)


@pytest.mark.parametrize("spec", FIELDS, ids=lambda s: s.name())
def test_rref_is_fixed_point_on_subspace_bases(spec):
    rng = random.Random(3)
    for _ in range(25):
        m = random_matrix(spec, rng, rng.randint(1, 4), rng.randint(1, 5))
        s = Subspace.from_vectors(spec, m.ncols, m.rows)
        again = Subspace.from_vectors(spec, m.ncols, [list(r) for r in s.basis])
        assert again == s


@pytest.mark.parametrize("spec", FIELDS, ids=lambda s: s.name())
def test_intersection_dimension_identity(spec):
    rng = random.Random(17)
    for _ in range(30):
        n = rng.randint(1, 5)
        a = Subspace.from_vectors(
            spec, n, random_matrix(spec, rng, rng.randint(0, 3), n).rows
        )
        b = Subspace.from_vectors(
            spec, n, random_matrix(spec, rng, rng.randint(0, 3), n).rows
        )
        inter = exactla.intersect(a, b)
        total = exactla.subspace_sum(a, b)
        assert a.contains(inter) and b.contains(inter)
        assert a.dim + b.dim == total.dim + inter.dim


def test_psd_randomized_quadratic_forms():
    """A PSD certificate implies nonnegative quadratic forms; a NotPSD
    witness is exactly negative."""
    rng = random.Random(23)
    for _ in range(30):
        n = rng.randint(1, 4)
        b = random_matrix(QQ, rng, rng.randint(0, n), n)
        gram_psd = b.transpose() @ b  # always PSD
        cert = exactla.psd_certificate(gram_psd)
        assert cert.psd
        for _ in range(10):
            v = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
            assert exactla.quadratic_form(gram_psd, v) >= 0
        m = random_matrix(QQ, rng, n, n)
        sym = m + m.transpose()
        cert = exactla.psd_certificate(sym)
        if not cert.psd:
            assert exactla.quadratic_form(sym, cert.witness) == cert.witness_value < 0


def test_cayley_hamilton_random():
    rng = random.Random(31)
    for _ in range(20):
        n = rng.randint(1, 5)
        m = random_matrix(QQ, rng, n, n)
        coeffs = exactla.char_poly(m)
        acc = Matrix.zeros(QQ, n, n)
        for c in coeffs:
            acc = acc @ m + Matrix.identity(QQ, n).scale(c)
        assert acc == Matrix.zeros(QQ, n, n)


@given(st.integers(0, 3), st.integers(1, 4), st.integers(0, 1))
@settings(max_examples=25, deadline=None)
def test_kernel_vectors_annihilate(nrows, ncols, field_pick):
    spec = [QQ, GF2][field_pick]
    rng = random.Random(nrows * 13 + ncols)
    m = random_matrix(spec, rng, nrows, ncols)
    for row in exactla.kernel_basis(m).basis:
        assert not any(m.apply(list(row)))
