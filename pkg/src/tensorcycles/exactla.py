"""Dense exact linear algebra over a FieldSpec.

Echelon forms, rank, kernel/image bases, subspace intersection and, over Q,
PSD certification, characteristic polynomials and rational spectra.  All
pivoting is deterministic (leftmost column, topmost row) so every reduced
form — and hence every Subspace identity — is reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .errors import (
    AmbientMismatch,
    FieldMismatch,
    InternalInconsistency,
    NotSquare,
    NotSymmetric,
)
from .field import FieldSpec, Rationals


class Matrix:
    """Immutable-by-convention dense matrix with raw scalar entries."""

    __slots__ = ("spec", "nrows", "ncols", "rows")

    def __init__(self, spec: FieldSpec, rows: list, ncols: Optional[int] = None):
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
        self.spec = spec
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Sequence[Sequence], ncols: Optional[int] = None) -> "Matrix":
        """Build a matrix, coercing every entry (ints, strings, fractions) into the field."""
        coerce = spec.coerce
        return cls(spec, [[coerce(x) for x in row] for row in rows], ncols)

    @classmethod
    def zeros(cls, spec: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        z = spec.zero
        return cls(spec, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "Matrix":
        z, o = spec.zero, spec.one
        return cls(spec, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    def copy_rows(self) -> list:
        return [row[:] for row in self.rows]

    def transpose(self) -> "Matrix":
        rows = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return Matrix(self.spec, rows, self.nrows)

    def column(self, j: int) -> list:
        return [row[j] for row in self.rows]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.spec == other.spec
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.spec, self.nrows, self.ncols, tuple(tuple(r) for r in self.rows)))

    def __repr__(self) -> str:
        return f"Matrix({self.spec.name()}, {self.nrows}x{self.ncols})"

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.spec != other.spec:
            raise FieldMismatch("matrices over different fields")
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise AmbientMismatch("matrix shapes differ")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        add = self.spec.add
        rows = [
            [add(a, b) for a, b in zip(ra, rb)]
            for ra, rb in zip(self.rows, other.rows)
        ]
        return Matrix(self.spec, rows, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        sub = self.spec.sub
        rows = [
            [sub(a, b) for a, b in zip(ra, rb)]
            for ra, rb in zip(self.rows, other.rows)
        ]
        return Matrix(self.spec, rows, self.ncols)

    def scale(self, c) -> "Matrix":
        mul = self.spec.mul
        return Matrix(self.spec, [[mul(c, x) for x in row] for row in self.rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.spec != other.spec:
            raise FieldMismatch("matrices over different fields")
        if self.ncols != other.nrows:
            raise AmbientMismatch("inner dimensions differ")
        spec = self.spec
        add, mul, z = spec.add, spec.mul, spec.zero
        out = [[z] * other.ncols for _ in range(self.nrows)]
        for i in range(self.nrows):
            row = self.rows[i]
            out_i = out[i]
            for k in range(self.ncols):
                a = row[k]
                if a:
                    brow = other.rows[k]
                    for j in range(other.ncols):
                        b = brow[j]
                        if b:
                            out_i[j] = add(out_i[j], mul(a, b))
        return Matrix(spec, out, other.ncols)

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product."""
        if len(vec) != self.ncols:
            raise AmbientMismatch("vector length differs from column count")
        spec = self.spec
        add, mul, z = spec.add, spec.mul, spec.zero
        out = []
        for row in self.rows:
            acc = z
            for a, x in zip(row, vec):
                if a and x:
                    acc = add(acc, mul(a, x))
            out.append(acc)
        return out

    def is_symmetric(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self.ncols)
        )


@dataclass(frozen=True)
class RrefResult:
    matrix: Matrix
    rank: int
    pivots: tuple


def _rref_rows(spec: FieldSpec, rows: list, ncols: int) -> tuple[list, int, tuple]:
    """In-place Gauss-Jordan, returning (rows, rank, pivot columns)."""
    nrows = len(rows)
    sub, mul, inv, one = spec.sub, spec.mul, spec.inv, spec.one
    pivots = []
    pr = 0
    for pc in range(ncols):
        pivot_row = -1
        for i in range(pr, nrows):
            if rows[i][pc]:
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        if pivot_row != pr:
            rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        head = rows[pr]
        pval = head[pc]
        if pval != one:
            factor = inv(pval)
            for j in range(pc, ncols):
                if head[j]:
                    head[j] = mul(head[j], factor)
        for i in range(nrows):
            if i == pr:
                continue
            f = rows[i][pc]
            if f:
                target = rows[i]
                for j in range(pc, ncols):
                    h = head[j]
                    if h:
                        target[j] = sub(target[j], mul(f, h))
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return rows, pr, tuple(pivots)


def rref(m: Matrix) -> RrefResult:
    """Reduced row echelon form with deterministic leftmost/topmost pivoting."""
    rows, rank, pivots = _rref_rows(m.spec, m.copy_rows(), m.ncols)
    return RrefResult(Matrix(m.spec, rows, m.ncols), rank, pivots)


def rank(m: Matrix) -> int:
    return _rref_rows(m.spec, m.copy_rows(), m.ncols)[1]


class Subspace:
    """A subspace of F^n identified by its RREF row basis.

    Two subspaces are equal iff their RREF basis matrices are entrywise
    equal, so no further canonicalization is ever needed.
    """

    __slots__ = ("spec", "ambient_dim", "basis")

    def __init__(self, spec: FieldSpec, ambient_dim: int, basis: tuple):
        self.spec = spec
        self.ambient_dim = ambient_dim
        self.basis = basis  # tuple of row tuples, already in RREF, no zero rows

    @classmethod
    def from_vectors(cls, spec: FieldSpec, ambient_dim: int, vectors: Sequence[Sequence]) -> "Subspace":
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch("vector length differs from ambient dimension")
        rows, rk, _ = _rref_rows(spec, [list(v) for v in vectors], ambient_dim)
        return cls(spec, ambient_dim, tuple(tuple(r) for r in rows[:rk]))

    @classmethod
    def zero(cls, spec: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(spec, ambient_dim, ())

    @classmethod
    def full(cls, spec: FieldSpec, ambient_dim: int) -> "Subspace":
        ident = Matrix.identity(spec, ambient_dim)
        return cls(spec, ambient_dim, tuple(tuple(r) for r in ident.rows))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        return Matrix(self.spec, [list(r) for r in self.basis], self.ambient_dim)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.spec == other.spec
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.spec, self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce(self, vec: Sequence) -> list:
        """Residual of `vec` after elimination against the RREF basis."""
        if len(vec) != self.ambient_dim:
            raise AmbientMismatch("vector length differs from ambient dimension")
        spec = self.spec
        sub, mul = spec.sub, spec.mul
        v = list(vec)
        for row in self.basis:
            pivot = next(j for j, x in enumerate(row) if x)
            f = v[pivot]
            if f:
                for j in range(pivot, self.ambient_dim):
                    r = row[j]
                    if r:
                        v[j] = sub(v[j], mul(f, r))
        return v

    def member(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def contains(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch("subspaces in different ambient spaces")
        return all(self.member(row) for row in other.basis)


def kernel_basis(m: Matrix) -> Subspace:
    """The kernel of `m` acting on column vectors, as a subspace of F^ncols."""
    spec = m.spec
    res = rref(m)
    piv = res.pivots
    piv_set = set(piv)
    free = [j for j in range(m.ncols) if j not in piv_set]
    neg, z, o = spec.neg, spec.zero, spec.one
    vectors = []
    for f in free:
        v = [z] * m.ncols
        v[f] = o
        for r, c in enumerate(piv):
            val = res.matrix.rows[r][f]
            if val:
                v[c] = neg(val)
        vectors.append(v)
    return Subspace.from_vectors(spec, m.ncols, vectors)


def image_basis(m: Matrix) -> Subspace:
    """The column space of `m`, as a subspace of F^nrows."""
    columns = [m.column(j) for j in range(m.ncols)]
    return Subspace.from_vectors(m.spec, m.nrows, columns)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.spec != b.spec:
        raise FieldMismatch("subspaces over different fields")
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch("subspaces in different ambient spaces")
    return Subspace.from_vectors(a.spec, a.ambient_dim, list(a.basis) + list(b.basis))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the Zassenhaus stacked-block elimination.

    Rows [v | v] for v in a's basis and [w | 0] for w in b's basis are
    reduced; the right halves of the rows whose left half vanished span
    the intersection.  Works uniformly over every field.
    """
    if a.spec != b.spec:
        raise FieldMismatch("subspaces over different fields")
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch("subspaces in different ambient spaces")
    spec, n = a.spec, a.ambient_dim
    z = spec.zero
    stacked = [list(v) + list(v) for v in a.basis]
    stacked += [list(w) + [z] * n for w in b.basis]
    rows, rk, _ = _rref_rows(spec, stacked, 2 * n)
    vectors = [row[n:] for row in rows[:rk] if not any(row[:n])]
    return Subspace.from_vectors(spec, n, vectors)


def solve(m: Matrix, rhs: Sequence) -> Optional[list]:
    """One solution of m @ x = rhs, or None when the system is inconsistent."""
    if len(rhs) != m.nrows:
        raise AmbientMismatch("right-hand side length differs from row count")
    spec = m.spec
    if m.nrows == 0:
        return [spec.zero] * m.ncols
    aug_rows = [list(row) + [r] for row, r in zip(m.rows, rhs)]
    rows, rk, pivots = _rref_rows(spec, aug_rows, m.ncols + 1)
    if m.ncols in pivots:
        return None
    x = [spec.zero] * m.ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][m.ncols]
    return x


# ---------------------------------------------------------------------------
# Fraction-free elimination over Q (independent cross-check route)
# ---------------------------------------------------------------------------

def _integer_rows(m: Matrix) -> list:
    """Scale each row by the lcm of its denominators; rank is unchanged."""
    out = []
    for row in m.rows:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * mult) for x in row])
    return out


def rank_bareiss(m: Matrix) -> int:
    """Rank over Q by Bareiss fraction-free elimination on integer rows."""
    if not isinstance(m.spec, Rationals):
        raise FieldMismatch("Bareiss elimination is the rational cross-check route")
    rows = _integer_rows(m)
    nrows, ncols = m.nrows, m.ncols
    prev = 1
    pr = 0
    for pc in range(ncols):
        pivot_row = -1
        for i in range(pr, nrows):
            if rows[i][pc]:
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        if pivot_row != pr:
            rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        pivot = rows[pr][pc]
        for i in range(pr + 1, nrows):
            ri = rows[i]
            head = rows[pr]
            f = ri[pc]
            for j in range(pc, ncols):
                ri[j] = (ri[j] * pivot - f * head[j]) // prev
        prev = pivot
        pr += 1
        if pr == nrows:
            break
    return pr


def determinant_bareiss(m: Matrix) -> Fraction:
    """Exact determinant over Q via fraction-free elimination."""
    if not isinstance(m.spec, Rationals):
        raise FieldMismatch("determinant is computed over Q")
    if m.nrows != m.ncols:
        raise NotSquare("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    rows = []
    scaling = Fraction(1)
    for row in m.rows:
        mult = lcm(*(x.denominator for x in row))
        scaling *= mult
        rows.append([int(x * mult) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        pivot_row = -1
        for i in range(k, n):
            if rows[i][k]:
                pivot_row = i
                break
        if pivot_row < 0:
            return Fraction(0)
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri = rows[i]
            f = ri[k]
            for j in range(k, n):
                ri[j] = (ri[j] * pivot - f * rows[k][j]) // prev
        prev = pivot
    return Fraction(sign * rows[n - 1][n - 1], 1) / scaling


# ---------------------------------------------------------------------------
# PSD certification over Q
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PsdCertificate:
    psd: bool
    pivots: tuple = ()
    witness: Optional[tuple] = None
    witness_value: Optional[Fraction] = None


def quadratic_form(m: Matrix, vec: Sequence) -> Fraction:
    spec = m.spec
    total = spec.zero
    for i, row in enumerate(m.rows):
        xi = vec[i]
        if not xi:
            continue
        for j, a in enumerate(row):
            if a and vec[j]:
                total = spec.add(total, spec.mul(xi, spec.mul(a, vec[j])))
    return total


def psd_certificate(m: Matrix) -> PsdCertificate:
    """LDL^T with greedy largest-diagonal pivoting over Q.

    Declares NotPSD on a negative residual diagonal, or on a zero residual
    diagonal whose row is nonzero; either case yields an explicit witness
    vector with exactly negative quadratic form.  Otherwise the nonnegative
    pivot sequence certifies positive semi-definiteness.
    """
    if not isinstance(m.spec, Rationals):
        raise FieldMismatch("PSD certification is defined over Q only")
    if not m.is_symmetric():
        raise NotSymmetric("psd_certificate requires a symmetric matrix")
    n = m.nrows
    S = m.copy_rows()
    active = list(range(n))
    order: list[int] = []             # original indices in pivot order
    multipliers: list[dict] = []      # per pivot: {original index: l value}
    pivots: list[Fraction] = []

    def witness_from(x_by_index: dict) -> PsdCertificate:
        # Solve L^T z = y where y is supported on the active block, then
        # scatter back through the pivot order.  The factored block is unit
        # lower triangular, so this is a plain backward substitution.
        k = len(order)
        zs = [Fraction(0)] * k
        for i in range(k - 1, -1, -1):
            acc = Fraction(0)
            for j in range(i + 1, k):
                l = multipliers[i].get(order[j])
                if l:
                    acc += l * zs[j]
            for idx, xv in x_by_index.items():
                l = multipliers[i].get(idx)
                if l:
                    acc += l * xv
            zs[i] = -acc
        v = [Fraction(0)] * n
        for i, idx in enumerate(order):
            v[idx] = zs[i]
        for idx, xv in x_by_index.items():
            v[idx] = xv
        value = quadratic_form(m, v)
        if value >= 0:
            raise InternalInconsistency("PSD witness has nonnegative quadratic form")
        return PsdCertificate(False, tuple(pivots), tuple(v), value)

    while active:
        q = max(active, key=lambda i: (S[i][i], -i))
        d = S[q][q]
        if d < 0:
            return witness_from({q: Fraction(1)})
        if d == 0:
            j = next((c for c in active if c != q and S[q][c]), None)
            if j is None:
                # Row of the best-diagonal index vanished; retire it with a
                # zero pivot and keep sweeping the residual.
                pivots.append(Fraction(0))
                order.append(q)
                multipliers.append({})
                active.remove(q)
                continue
            c = S[q][j]
            t = Fraction(-1) if c > 0 else Fraction(1)
            return witness_from({q: Fraction(1), j: t})
        pivots.append(d)
        order.append(q)
        active.remove(q)
        col = {}
        for i in active:
            f = S[i][q]
            if f:
                col[i] = f / d
        multipliers.append(col)
        for i in active:
            li = col.get(i)
            if not li:
                continue
            Si = S[i]
            for j in active:
                lj = col.get(j)
                if lj:
                    Si[j] -= li * (d * lj)
    return PsdCertificate(True, tuple(pivots))


# ---------------------------------------------------------------------------
# Characteristic polynomial and rational spectra over Q
# ---------------------------------------------------------------------------

def char_poly(m: Matrix) -> list:
    """Monic characteristic polynomial by the Faddeev-LeVerrier recurrence.

    Returns coefficients in descending degree: [1, c_{n-1}, ..., c_0].
    """
    if not isinstance(m.spec, Rationals):
        raise FieldMismatch("characteristic polynomial is computed over Q")
    if m.nrows != m.ncols:
        raise NotSquare("characteristic polynomial of a non-square matrix")
    n = m.nrows
    coeffs = [Fraction(1)]
    mk = Matrix.identity(m.spec, n)
    for k in range(1, n + 1):
        am = m @ mk
        trace = sum((am.rows[i][i] for i in range(n)), Fraction(0))
        ck = -trace / k
        coeffs.append(ck)
        if k < n:
            mk = Matrix(
                m.spec,
                [
                    [am.rows[i][j] + (ck if i == j else 0) for j in range(n)]
                    for i in range(n)
                ],
                n,
            )
    return coeffs


def _poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _synthetic_divide(coeffs: list, root: Fraction) -> list:
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + out[-1] * root)
    return out


def _divisors(n: int, bound: int = 10**12) -> Optional[list]:
    n = abs(n)
    if n > bound:
        return None
    divs = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            divs.append(d)
            divs.append(n // d)
        d += 1
    return sorted(set(divs))


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalue report: full rational spectrum, or exact rank + PSD flag."""

    eigenvalues: Optional[tuple]  # ascending tuple of (eigenvalue, multiplicity)
    rank: int
    psd: bool

    @property
    def full(self) -> bool:
        return self.eigenvalues is not None


def rational_spectrum(m: Matrix) -> SpectrumResult:
    """Factor the characteristic polynomial over Q by rational-root search."""
    if not isinstance(m.spec, Rationals):
        raise FieldMismatch("rational spectra are computed over Q")
    if not m.is_symmetric():
        raise NotSymmetric("rational_spectrum requires a symmetric matrix")
    cert = psd_certificate(m)
    rk = rank(m)
    poly = char_poly(m)
    roots: list[Fraction] = []
    while len(poly) > 1 and poly[-1] == 0:
        roots.append(Fraction(0))
        poly = poly[:-1]
    if len(poly) > 1:
        denom = lcm(*(c.denominator for c in poly))
        ipoly = [int(c * denom) for c in poly]
        num_divs = _divisors(ipoly[-1])
        den_divs = _divisors(ipoly[0])
        if num_divs is None or den_divs is None:
            return SpectrumResult(None, rk, cert.psd)
        candidates = sorted(
            {Fraction(s * p, q) for p in num_divs for q in den_divs for s in (1, -1)}
        )
        for cand in candidates:
            while len(poly) > 1 and _poly_eval(poly, cand) == 0:
                poly = _synthetic_divide(poly, cand)
                roots.append(cand)
            if len(poly) == 1:
                break
    if len(poly) > 1:
        return SpectrumResult(None, rk, cert.psd)
    pairs = []
    for r in sorted(set(roots)):
        pairs.append((r, roots.count(r)))
    return SpectrumResult(tuple(pairs), rk, cert.psd)
