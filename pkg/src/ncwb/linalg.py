"""Exact dense linear algebra over the rationals.

The scalar type is fractions.Fraction throughout; nothing here ever rounds.
Vectors are tuples of Fractions, matrices are immutable row-major tuples of
such tuples.  Row reduction runs on integer-scaled rows (cross multiplication
with gcd renormalisation when entries grow) and converts back to Fractions at
the end, which keeps Fraction gcd churn out of the elimination inner loop.

Every subspace is stored in fully reduced row echelon form, so two subspaces
are equal exactly when their stored bases are equal componentwise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

Vector = tuple

ZERO = Fraction(0)
ONE = Fraction(1)

# entries past this size trigger a gcd pass during elimination
_GCD_TRIGGER = 1 << 96


def frac(x) -> Fraction:
    """Coerce int, Fraction or a string like '2/3' to Fraction.  Floats are
    rejected: they have no business in an exact computation."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("not an exact scalar: %r" % (x,))


def vector(xs) -> Vector:
    return tuple(frac(x) for x in xs)


def vzero(n: int) -> Vector:
    return (ZERO,) * n


def vadd(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v) -> Vector:
    c = frac(c)
    return tuple(c * a for a in v)


def is_zero_vector(v) -> bool:
    return all(a == 0 for a in v)


def dot(u, v) -> Fraction:
    s = ZERO
    for a, b in zip(u, v):
        s += a * b
    return s


class Matrix:
    """Immutable exact matrix.  rows is a tuple of equal-length tuples."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols: Optional[int] = None):
        rows = tuple(tuple(frac(x) for x in r) for r in rows)
        if rows:
            w = len(rows[0])
            for r in rows:
                assert len(r) == w, "ragged matrix"
            if ncols is not None:
                assert ncols == w
        else:
            assert ncols is not None, "empty matrix needs explicit ncols"
            w = ncols
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", w)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(n))
                         for i in range(n)), ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(((ZERO,) * ncols,) * nrows, ncols=ncols)

    @classmethod
    def from_cols(cls, cols: Sequence[Vector], nrows: Optional[int] = None) -> "Matrix":
        cols = [tuple(frac(x) for x in c) for c in cols]
        if cols:
            nrows = len(cols[0])
        assert nrows is not None, "empty column list needs explicit nrows"
        return cls(tuple(tuple(c[i] for c in cols) for i in range(nrows)),
                   ncols=len(cols))

    @classmethod
    def from_flat(cls, flat: Sequence, nrows: int, ncols: int) -> "Matrix":
        flat = list(flat)
        assert len(flat) == nrows * ncols
        return cls(tuple(tuple(frac(flat[i * ncols + j]) for j in range(ncols))
                         for i in range(nrows)), ncols=ncols)

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def flatten(self) -> Vector:
        return tuple(x for r in self.rows for x in r)

    def apply(self, v: Sequence) -> Vector:
        assert len(v) == self.ncols, "shape mismatch"
        return tuple(dot(r, v) for r in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        assert self.ncols == other.nrows, "shape mismatch"
        ocols = list(zip(*other.rows)) if other.rows else []
        if not ocols:
            return Matrix.zeros(self.nrows, other.ncols)
        return Matrix(tuple(tuple(dot(r, c) for c in ocols) for r in self.rows),
                      ncols=other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        assert self.nrows == other.nrows and self.ncols == other.ncols
        return Matrix(tuple(tuple(a + b for a, b in zip(r, s))
                            for r, s in zip(self.rows, other.rows)),
                      ncols=self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = frac(c)
        return Matrix(tuple(tuple(c * x for x in r) for r in self.rows),
                      ncols=self.ncols)

    def transpose(self) -> "Matrix":
        return Matrix.from_cols(list(self.rows), nrows=self.ncols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.ncols == other.ncols \
            and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        return "Matrix(%dx%d)" % (self.nrows, self.ncols)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; index (i,k),(j,l) -> (i*b.nrows+k, j*b.ncols+l)."""
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(x * y for x in ra for y in rb))
    return Matrix(tuple(rows), ncols=a.ncols * b.ncols)


def _scale_to_int(row: Sequence[Fraction]) -> list:
    den = 1
    for x in row:
        d = x.denominator
        den = den * d // math.gcd(den, d)
    out = [x.numerator * (den // x.denominator) for x in row]
    g = 0
    for v in out:
        g = math.gcd(g, v)
    if g > 1:
        out = [v // g for v in out]
    return out


def _gcd_normalize(row: list) -> list:
    g = 0
    for v in row:
        g = math.gcd(g, v)
    if g > 1:
        row = [v // g for v in row]
    return row


class Echelon:
    """Incremental integer row echelon.

    With back_reduce=True the stored rows are a full reduced echelon at every
    moment, so membership coordinates can be read off row by row.  Without it
    rows are only reduced against earlier pivots and finalize() runs the
    single backward pass; that is the cheap mode for batch reductions.
    """

    def __init__(self, width: int, back_reduce: bool = False):
        self.width = width
        self.back_reduce = back_reduce
        self.rows: list = []      # integer rows, sorted by pivot column
        self.pivots: list = []
        self._finalized = False

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduced(self, introw: list) -> list:
        row = list(introw)
        for prow, pc in zip(self.rows, self.pivots):
            c = row[pc]
            if c:
                p = prow[pc]
                row = [p * a - c * b for a, b in zip(row, prow)]
                if max(map(abs, row)) > _GCD_TRIGGER:
                    row = _gcd_normalize(row)
        return row

    def insert(self, fracrow: Sequence[Fraction]) -> bool:
        """Add a vector to the span; True if the dimension grew."""
        assert len(fracrow) == self.width
        row = self._reduced(_scale_to_int(fracrow))
        piv = None
        for j, v in enumerate(row):
            if v:
                piv = j
                break
        if piv is None:
            return False
        row = _gcd_normalize(row)
        if row[piv] < 0:
            row = [-v for v in row]
        if self.back_reduce:
            p = row[piv]
            for k in range(len(self.rows)):
                c = self.rows[k][piv]
                if c:
                    # the stored pivot entry only gets scaled here, never hit:
                    # row has a zero at every stored pivot column
                    self.rows[k] = _gcd_normalize(
                        [p * a - c * b for a, b in zip(self.rows[k], row)])
        at = 0
        while at < len(self.pivots) and self.pivots[at] < piv:
            at += 1
        self.rows.insert(at, row)
        self.pivots.insert(at, piv)
        self._finalized = False
        return True

    def finalize(self):
        """Backward pass; afterwards rows form the reduced echelon."""
        if self._finalized:
            return
        if not self.back_reduce:
            for k in range(len(self.rows) - 1, -1, -1):
                row, piv = self.rows[k], self.pivots[k]
                p = row[piv]
                for j in range(k):
                    c = self.rows[j][piv]
                    if c:
                        self.rows[j] = _gcd_normalize(
                            [p * a - c * b for a, b in zip(self.rows[j], row)])
        self._finalized = True

    def frac_rows(self) -> tuple:
        """Canonical basis: reduced rows scaled to pivot 1."""
        self.finalize()
        out = []
        for row, piv in zip(self.rows, self.pivots):
            p = Fraction(row[piv])
            out.append(tuple(Fraction(v) / p for v in row))
        return tuple(out)

    def residual(self, v: Sequence[Fraction]) -> Vector:
        """Reduce v against the current rows (Fraction arithmetic)."""
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                q = c / row[pc]
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero_vector(self.residual(v))

    def coords(self, v: Sequence[Fraction]) -> Optional[list]:
        """Coefficients of v over frac_rows(), or None if v is outside.

        Requires reduced state (back_reduce mode, or after finalize).
        """
        if not self.back_reduce:
            self.finalize()
        v = list(v)
        out = []
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            out.append(c * Fraction(1) if isinstance(c, Fraction) else Fraction(c))
            if c:
                q = c / row[pc]
                v = [a - q * b for a, b in zip(v, row)]
        if not is_zero_vector(v):
            return None
        return out


class Subspace:
    """A subspace of Q^n held by its reduced-echelon basis (canonical)."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis, pivots):
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(x for x in r) for r in basis)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable) -> "Subspace":
        ech = Echelon(ambient_dim)
        for v in vectors:
            ech.insert(vector(v))
        return cls(ambient_dim, ech.frac_rows(), ech.pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim).rows,
                   range(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, v) -> bool:
        return self.coords(v) is not None

    def coords(self, v) -> Optional[list]:
        """Coefficients over self.basis, or None if v lies outside."""
        v = list(vector(v))
        assert len(v) == self.ambient_dim
        out = []
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            out.append(c)
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        if not is_zero_vector(v):
            return None
        return out

    def element(self, coeffs) -> Vector:
        v = vzero(self.ambient_dim)
        for c, b in zip(coeffs, self.basis):
            v = vadd(v, vscale(c, b))
        return v

    def sum(self, other: "Subspace") -> "Subspace":
        assert self.ambient_dim == other.ambient_dim
        return Subspace.from_vectors(self.ambient_dim,
                                     list(self.basis) + list(other.basis))

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) \
            and self.ambient_dim == other.ambient_dim \
            and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return "Subspace(dim %d in Q^%d)" % (self.dim, self.ambient_dim)


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    """Canonical bases make this a plain comparison."""
    return a == b


def rref(m: Matrix):
    """Reduced row echelon form of m, as (Matrix, pivot columns)."""
    ech = Echelon(m.ncols)
    for r in m.rows:
        ech.insert(r)
    return Matrix(ech.frac_rows(), ncols=m.ncols), tuple(ech.pivots)


def rank(m: Matrix) -> int:
    ech = Echelon(m.ncols)
    for r in m.rows:
        ech.insert(r)
    return ech.dim


def kernel(m: Matrix) -> Subspace:
    """Null space {v : m v = 0} with canonical basis."""
    ech = Echelon(m.ncols)
    for r in m.rows:
        ech.insert(r)
    rows = ech.frac_rows()
    pivset = set(ech.pivots)
    free = [j for j in range(m.ncols) if j not in pivset]
    basis = []
    for f in free:
        v = [ZERO] * m.ncols
        v[f] = ONE
        for row, pc in zip(rows, ech.pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return Subspace.from_vectors(m.ncols, basis)


def solve(m: Matrix, b) -> Optional[Vector]:
    """One exact solution of m x = b (free variables zero), or None."""
    b = vector(b)
    assert len(b) == m.nrows
    ech = Echelon(m.ncols + 1)
    for r, bi in zip(m.rows, b):
        ech.insert(tuple(r) + (bi,))
    if m.ncols in ech.pivots:
        return None
    rows = ech.frac_rows()
    x = [ZERO] * m.ncols
    for row, pc in zip(rows, ech.pivots):
        x[pc] = row[-1]
    return tuple(x)


def restrict_to_kernel(space: Subspace, m: Matrix) -> Subspace:
    """{v in space : m v = 0}."""
    assert m.ncols == space.ambient_dim
    if space.is_zero():
        return space
    imgs = [m.apply(bv) for bv in space.basis]
    coeffs = kernel(Matrix.from_cols(imgs, nrows=m.nrows))
    return Subspace.from_vectors(space.ambient_dim,
                                 [space.element(c) for c in coeffs.basis])


class SpanBuilder:
    """Fraction-facing incremental span with membership coordinates."""

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self._ech = Echelon(ambient_dim, back_reduce=True)

    @property
    def dim(self) -> int:
        return self._ech.dim

    def insert(self, v) -> bool:
        return self._ech.insert(vector(v))

    def contains(self, v) -> bool:
        return self._ech.contains(vector(v))

    def coords(self, v) -> Optional[list]:
        return self._ech.coords(vector(v))

    def basis(self) -> tuple:
        return self._ech.frac_rows()

    def subspace(self) -> Subspace:
        return Subspace(self.ambient_dim, self._ech.frac_rows(),
                        self._ech.pivots)


def span_closure(seed: Iterable, step: Callable, ambient_dim: int) -> Subspace:
    """Smallest subspace containing seed and closed under the bilinear step.

    Closure under a bilinear map only needs to be checked on spanning
    vectors, so a worklist over generator pairs terminates once the
    dimension stops growing.
    """
    sb = SpanBuilder(ambient_dim)
    gens = []
    work = []
    for v in seed:
        v = vector(v)
        if sb.insert(v):
            gens.append(v)
            work.append(v)
    while work:
        g = work.pop()
        for h in list(gens):
            for prod in (step(g, h), step(h, g)):
                prod = vector(prod)
                if sb.insert(prod):
                    gens.append(prod)
                    work.append(prod)
    return sb.subspace()


def closure_under_maps(seed: Iterable, mats: Sequence[Matrix],
                       ambient_dim: int) -> Subspace:
    """Smallest subspace containing seed and stable under the given maps."""
    sb = SpanBuilder(ambient_dim)
    work = []
    for v in seed:
        v = vector(v)
        if sb.insert(v):
            work.append(v)
    while work:
        g = work.pop()
        for m in mats:
            img = m.apply(g)
            if sb.insert(img):
                work.append(img)
    return sb.subspace()
