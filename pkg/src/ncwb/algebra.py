"""Finite dimensional associative algebras and their bimodules.

An algebra is given by structure constants over a fixed basis, a bimodule by
one left and one right action matrix per algebra basis vector.  All laws
(associativity, unit, action compatibilities) are checked exhaustively on
basis vectors; linearity does the rest.

Duals of a bimodule are taken inside Hom(M, A): the right dual consists of
right module maps, the left dual of left module maps.  A dual element is
stored as its evaluation matrix, a linear map from module coordinates to
algebra coordinates, and the dual carries its own bimodule structure
transported through evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .linalg import (
    Matrix, SpanBuilder, Subspace, frac, is_zero_vector, kernel, kron,
    vadd, vector, vscale, vzero,
)
from .reporting import CheckReport


def format_element(names: Sequence[str], coords) -> str:
    """Render a coordinate vector over named basis elements."""
    parts = []
    for name, c in zip(names, coords):
        if c == 0:
            continue
        if name == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(name)
        elif c == -1:
            parts.append("-" + name)
        else:
            parts.append("%s*%s" % (c, name))
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
    return out


class Algebra:
    """Associative unital algebra from structure constants.

    sc[i][j] is the coordinate vector of e_i * e_j.  Only shapes are
    enforced here; run check_algebra for the actual laws so that broken
    tables can still be constructed and reported on.
    """

    def __init__(self, basis_names: Sequence[str], structure_constants,
                 unit):
        self.basis_names = tuple(str(s) for s in basis_names)
        n = len(self.basis_names)
        assert n >= 1, "algebra needs at least the unit"
        self.dim = n
        sc = tuple(tuple(vector(v) for v in row) for row in structure_constants)
        if len(sc) != n or any(len(row) != n for row in sc) \
                or any(len(v) != n for row in sc for v in row):
            raise ValueError("structure constant table must be n x n vectors of length n")
        self.sc = sc
        self.unit = vector(unit)
        if len(self.unit) != n:
            raise ValueError("unit vector has wrong length")
        # matrices of left/right multiplication by each basis vector
        self.lmul = tuple(
            Matrix.from_cols([sc[i][j] for j in range(n)], nrows=n)
            for i in range(n))
        self.rmul = tuple(
            Matrix.from_cols([sc[j][i] for j in range(n)], nrows=n)
            for i in range(n))

    @property
    def unit_index(self) -> Optional[int]:
        """Index i when the unit is exactly the basis vector e_i."""
        hits = [i for i, c in enumerate(self.unit) if c != 0]
        if len(hits) == 1 and self.unit[hits[0]] == 1:
            return hits[0]
        return None

    def multiply(self, f, g):
        out = vzero(self.dim)
        for i, a in enumerate(f):
            if a == 0:
                continue
            for j, b in enumerate(g):
                if b == 0:
                    continue
                out = vadd(out, vscale(a * b, self.sc[i][j]))
        return out

    def left_mult_matrix(self, f) -> Matrix:
        out = Matrix.zeros(self.dim, self.dim)
        for i, c in enumerate(f):
            if c != 0:
                out = out + self.lmul[i].scale(c)
        return out

    def right_mult_matrix(self, f) -> Matrix:
        out = Matrix.zeros(self.dim, self.dim)
        for i, c in enumerate(f):
            if c != 0:
                out = out + self.rmul[i].scale(c)
        return out

    def mult_matrix(self) -> Matrix:
        """Multiplication A (x) A -> A as a dim x dim^2 matrix; tensor basis
        e_i (x) e_j sits at column i*dim + j."""
        n = self.dim
        return Matrix.from_cols([self.sc[i][j] for i in range(n)
                                 for j in range(n)], nrows=n)

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.sc[i][j] == self.sc[j][i]
                   for i in range(n) for j in range(n))

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, vector(coords))

    def basis_element(self, i: int) -> "AlgebraElement":
        return self.element(tuple(1 if j == i else 0 for j in range(self.dim)))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit)

    def format(self, coords) -> str:
        return format_element(self.basis_names, coords)

    def __repr__(self):
        return "Algebra(%s)" % ", ".join(self.basis_names)


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords):
        self.algebra = algebra
        self.coords = vector(coords)
        assert len(self.coords) == algebra.dim

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            assert other.algebra is self.algebra
            return AlgebraElement(self.algebra,
                                  self.algebra.multiply(self.coords, other.coords))
        return AlgebraElement(self.algebra, vscale(frac(other), self.coords))

    def __rmul__(self, other):
        return AlgebraElement(self.algebra, vscale(frac(other), self.coords))

    def __add__(self, other):
        assert isinstance(other, AlgebraElement) and other.algebra is self.algebra
        return AlgebraElement(self.algebra, vadd(self.coords, other.coords))

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def is_zero(self) -> bool:
        return is_zero_vector(self.coords)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) \
            and other.algebra is self.algebra and other.coords == self.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return self.algebra.format(self.coords)


def check_algebra(a: Algebra) -> CheckReport:
    """Exhaustive associativity and two-sided unit check."""
    rep = CheckReport("algebra")
    n = a.dim
    for i in range(n):
        for j in range(n):
            u = a.sc[i][j]
            for k in range(n):
                left = a.multiply(u, tuple(1 if t == k else 0 for t in range(n)))
                right = a.multiply(tuple(1 if t == i else 0 for t in range(n)),
                                   a.sc[j][k])
                if left != right:
                    rep.add("associativity", (i, j, k),
                            "(%s*%s)*%s != %s*(%s*%s)" % (
                                a.basis_names[i], a.basis_names[j],
                                a.basis_names[k], a.basis_names[i],
                                a.basis_names[j], a.basis_names[k]))
    for j in range(n):
        ej = tuple(1 if t == j else 0 for t in range(n))
        if a.multiply(a.unit, ej) != vector(ej):
            rep.add("left-unit", (j,), "1*%s" % a.basis_names[j])
        if a.multiply(ej, a.unit) != vector(ej):
            rep.add("right-unit", (j,), "%s*1" % a.basis_names[j])
    return rep


class Bimodule:
    """Bimodule over an algebra: left[i], right[i] act for basis vector e_i."""

    def __init__(self, algebra: Algebra, dim: int, left: Sequence[Matrix],
                 right: Sequence[Matrix]):
        self.algebra = algebra
        self.dim = dim
        self.left = tuple(left)
        self.right = tuple(right)
        assert len(self.left) == algebra.dim and len(self.right) == algebra.dim
        for m in self.left + self.right:
            assert m.nrows == dim and m.ncols == dim

    @classmethod
    def regular(cls, a: Algebra) -> "Bimodule":
        return cls(a, a.dim, a.lmul, a.rmul)

    @classmethod
    def zero(cls, a: Algebra) -> "Bimodule":
        z = Matrix((), ncols=0)
        return cls(a, 0, (z,) * a.dim, (z,) * a.dim)

    def left_of(self, f) -> Matrix:
        out = Matrix.zeros(self.dim, self.dim)
        for i, c in enumerate(f):
            if c != 0:
                out = out + self.left[i].scale(c)
        return out

    def right_of(self, f) -> Matrix:
        out = Matrix.zeros(self.dim, self.dim)
        for i, c in enumerate(f):
            if c != 0:
                out = out + self.right[i].scale(c)
        return out

    def act_left(self, f, m):
        return self.left_of(f).apply(m)

    def act_right(self, m, f):
        return self.right_of(f).apply(m)

    def is_symmetric(self) -> bool:
        return all(l == r for l, r in zip(self.left, self.right))

    def __repr__(self):
        return "Bimodule(dim %d over %r)" % (self.dim, self.algebra)


def direct_sum(m: Bimodule, n: Bimodule) -> Bimodule:
    assert m.algebra is n.algebra
    d = m.dim + n.dim

    def block(a: Matrix, b: Matrix) -> Matrix:
        rows = []
        for r in a.rows:
            rows.append(tuple(r) + vzero(n.dim))
        for r in b.rows:
            rows.append(vzero(m.dim) + tuple(r))
        return Matrix(rows, ncols=d)

    return Bimodule(m.algebra, d,
                    tuple(block(a, b) for a, b in zip(m.left, n.left)),
                    tuple(block(a, b) for a, b in zip(m.right, n.right)))


def check_bimodule(m: Bimodule) -> CheckReport:
    """Left action is a unital homomorphism, right action a unital
    antihomomorphism, and the two commute; all on basis vectors."""
    rep = CheckReport("bimodule")
    a = m.algebra
    n = a.dim
    for i in range(n):
        for j in range(n):
            lij = Matrix.zeros(m.dim, m.dim)
            rij = Matrix.zeros(m.dim, m.dim)
            for k, c in enumerate(a.sc[i][j]):
                if c != 0:
                    lij = lij + m.left[k].scale(c)
                    rij = rij + m.right[k].scale(c)
            if lij != m.left[i] @ m.left[j]:
                rep.add("left-action-product", (i, j))
            if rij != m.right[j] @ m.right[i]:
                rep.add("right-action-product", (i, j))
            if m.left[i] @ m.right[j] != m.right[j] @ m.left[i]:
                rep.add("action-commutation", (i, j))
    ident = Matrix.identity(m.dim)
    if m.left_of(a.unit) != ident:
        rep.add("left-unital", ())
    if m.right_of(a.unit) != ident:
        rep.add("right-unital", ())
    return rep


class LeftModule:
    """Left module: one action matrix per algebra basis vector."""

    def __init__(self, algebra: Algebra, dim: int, left: Sequence[Matrix]):
        self.algebra = algebra
        self.dim = dim
        self.left = tuple(left)
        assert len(self.left) == algebra.dim
        for m in self.left:
            assert m.nrows == dim and m.ncols == dim

    @classmethod
    def free(cls, a: Algebra, rank_: int) -> "LeftModule":
        """A^rank with componentwise left multiplication."""
        mats = []
        for i in range(a.dim):
            mats.append(kron(Matrix.identity(rank_), a.lmul[i]))
        return cls(a, a.dim * rank_, mats)

    def left_of(self, f) -> Matrix:
        out = Matrix.zeros(self.dim, self.dim)
        for i, c in enumerate(f):
            if c != 0:
                out = out + self.left[i].scale(c)
        return out

    def __repr__(self):
        return "LeftModule(dim %d over %r)" % (self.dim, self.algebra)


def check_left_module(e: LeftModule) -> CheckReport:
    rep = CheckReport("left module")
    a = e.algebra
    for i in range(a.dim):
        for j in range(a.dim):
            lij = Matrix.zeros(e.dim, e.dim)
            for k, c in enumerate(a.sc[i][j]):
                if c != 0:
                    lij = lij + e.left[k].scale(c)
            if lij != e.left[i] @ e.left[j]:
                rep.add("left-action-product", (i, j))
    if e.left_of(a.unit) != Matrix.identity(e.dim):
        rep.add("left-unital", ())
    return rep


@dataclass
class BimoduleMap:
    """Linear map source -> target intended to intertwine both actions."""
    source: Bimodule
    target: Bimodule
    matrix: Matrix

    def __post_init__(self):
        assert self.matrix.nrows == self.target.dim
        assert self.matrix.ncols == self.source.dim

    def apply(self, m):
        return self.matrix.apply(m)


def check_bimodule_map(alpha: BimoduleMap) -> CheckReport:
    rep = CheckReport("bimodule map")
    src, tgt = alpha.source, alpha.target
    for i in range(src.algebra.dim):
        if alpha.matrix @ src.left[i] != tgt.left[i] @ alpha.matrix:
            rep.add("left-intertwine", (i,))
        if alpha.matrix @ src.right[i] != tgt.right[i] @ alpha.matrix:
            rep.add("right-intertwine", (i,))
    return rep


def bimodule_map_space(m: Bimodule, n: Bimodule) -> Subspace:
    """All bimodule maps m -> n, as flattened (n.dim x m.dim) matrices.

    Row-major flattening: a map phi obeys vec(A phi) = kron(A, I) vec(phi)
    and vec(phi B) = kron(I, B^T) vec(phi).
    """
    assert m.algebra is n.algebra
    p, q = n.dim, m.dim
    rows = []
    iq = Matrix.identity(q)
    ip = Matrix.identity(p)
    for i in range(m.algebra.dim):
        c1 = kron(ip, m.left[i].transpose()) - kron(n.left[i], iq)
        c2 = kron(ip, m.right[i].transpose()) - kron(n.right[i], iq)
        rows.extend(c1.rows)
        rows.extend(c2.rows)
    if not rows:
        return Subspace.full(p * q)
    return kernel(Matrix(rows, ncols=p * q))


class DualBimodule:
    """Dual of a bimodule inside Hom(M, A).

    side 'right': right module maps X(m.g) = X(m) g, carrying
        (f.X.g)(m) = f X(g.m).
    side 'left': left module maps X(f.m) = f X(m), carrying
        (f.X.g)(m) = X(m.f) g.

    basis element k is stored as its evaluation matrix eval_mats[k], mapping
    module coordinates to algebra coordinates.
    """

    def __init__(self, base: Bimodule, side: str, bimodule: Bimodule,
                 eval_mats: Sequence[Matrix]):
        assert side in ("right", "left")
        self.base = base
        self.side = side
        self.bimodule = bimodule
        self.eval_mats = tuple(eval_mats)
        a = base.algebra
        for e in self.eval_mats:
            assert e.nrows == a.dim and e.ncols == base.dim
        self._span = SpanBuilder(a.dim * base.dim)
        for e in self.eval_mats:
            grew = self._span.insert(e.flatten())
            assert grew, "evaluation matrices must be independent"

    @property
    def dim(self) -> int:
        return self.bimodule.dim

    def eval_of(self, xcoords) -> Matrix:
        a = self.base.algebra
        out = Matrix.zeros(a.dim, self.base.dim)
        for k, c in enumerate(xcoords):
            if c != 0:
                out = out + self.eval_mats[k].scale(c)
        return out

    def pairing(self, xcoords, mcoords) -> AlgebraElement:
        """<X, m> = X(m) in the base algebra."""
        return self.base.algebra.element(self.eval_of(xcoords).apply(mcoords))

    def coords_of_map(self, e: Matrix) -> Optional[list]:
        return self._span.coords(e.flatten())

    def __repr__(self):
        return "DualBimodule(%s, dim %d)" % (self.side, self.dim)


def _dual(m: Bimodule, side: str) -> DualBimodule:
    a = m.algebra
    n, md = a.dim, m.dim
    rows = []
    im = Matrix.identity(md)
    i_n = Matrix.identity(n)
    for j in range(n):
        if side == "right":
            # X (m.g) = X(m) g  <=>  X R_j = Rr_j X
            c = kron(i_n, m.right[j].transpose()) - kron(a.rmul[j], im)
        else:
            # X (f.m) = f X(m)  <=>  X L_j = Ll_j X
            c = kron(i_n, m.left[j].transpose()) - kron(a.lmul[j], im)
        rows.extend(c.rows)
    if rows:
        sol = kernel(Matrix(rows, ncols=n * md))
    else:
        sol = Subspace.full(n * md)
    eval_mats = [Matrix.from_flat(v, n, md) for v in sol.basis]
    span = SpanBuilder(n * md)
    for e in eval_mats:
        span.insert(e.flatten())

    def express(img: Matrix):
        c = span.coords(img.flatten())
        assert c is not None, "dual is closed under its actions"
        return tuple(c)

    d = len(eval_mats)
    left_mats, right_mats = [], []
    for i in range(n):
        lcols, rcols = [], []
        for e in eval_mats:
            if side == "right":
                limg = a.lmul[i] @ e          # (f.X)(m) = f X(m)
                rimg = e @ m.left[i]          # (X.g)(m) = X(g.m)
            else:
                limg = e @ m.right[i]         # (f.X)(m) = X(m.f)
                rimg = a.rmul[i] @ e          # (X.g)(m) = X(m) g
            lcols.append(express(limg))
            rcols.append(express(rimg))
        left_mats.append(Matrix.from_cols(lcols, nrows=d))
        right_mats.append(Matrix.from_cols(rcols, nrows=d))
    dual_bim = Bimodule(a, d, left_mats, right_mats)
    return DualBimodule(m, side, dual_bim, eval_mats)


def right_dual(m: Bimodule) -> DualBimodule:
    """Right module maps M -> A with (f.X.g)(m) = f X(g.m)."""
    return _dual(m, "right")


def left_dual(m: Bimodule) -> DualBimodule:
    """Left module maps M -> A with (f.X.g)(m) = X(m.f) g."""
    return _dual(m, "left")


def transpose(alpha: BimoduleMap, source_dual: DualBimodule,
              target_dual: DualBimodule) -> BimoduleMap:
    """Dual map: alpha^T sends Y in the target dual to Y o alpha.

    The duals must be of the same side and taken over alpha's source and
    target; the composite lands in the source dual exactly when alpha is a
    bimodule map.
    """
    assert source_dual.base is alpha.source
    assert target_dual.base is alpha.target
    assert source_dual.side == target_dual.side
    cols = []
    for e in target_dual.eval_mats:
        c = source_dual.coords_of_map(e @ alpha.matrix)
        if c is None:
            raise ValueError("composite is not a module map; "
                             "transpose undefined")
        cols.append(tuple(c))
    mat = Matrix.from_cols(cols, nrows=source_dual.dim)
    return BimoduleMap(target_dual.bimodule, source_dual.bimodule, mat)


@dataclass
class TensorProductOverA:
    """M (x)_A E: quotient of the plain tensor product by balancing."""
    factors: tuple
    module: LeftModule
    projection: Matrix     # ambient (M x E) coords -> quotient coords
    lift: Matrix           # section of projection
    relations: Subspace


def tensor_over_A(m: Bimodule, e: LeftModule) -> TensorProductOverA:
    """Balanced tensor product with its canonical coordinates.

    Ambient basis (s, a) -> s * e.dim + a; relations are spanned by
    (m_s.f_j) (x) xi_a - m_s (x) (f_j.xi_a).  Quotient coordinates are the
    ambient coordinates away from the relation pivots.
    """
    a = m.algebra
    assert e.algebra is a
    amb = m.dim * e.dim
    rels = []
    for j in range(a.dim):
        for s in range(m.dim):
            rcol = m.right[j].col(s)
            for t in range(e.dim):
                lcol = e.left[j].col(t)
                v = [Fraction(0)] * amb
                for s2, c in enumerate(rcol):
                    if c != 0:
                        v[s2 * e.dim + t] += c
                for t2, c in enumerate(lcol):
                    if c != 0:
                        v[s * e.dim + t2] -= c
                if not is_zero_vector(v):
                    rels.append(tuple(v))
    rel = Subspace.from_vectors(amb, rels)
    pivset = set(rel.pivots)
    qcols = [j for j in range(amb) if j not in pivset]
    qdim = len(qcols)

    def project_vec(v):
        v = list(v)
        for row, pc in zip(rel.basis, rel.pivots):
            c = v[pc]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return tuple(v[j] for j in qcols)

    proj_cols = []
    for t in range(amb):
        unit_vec = tuple(1 if j == t else 0 for j in range(amb))
        proj_cols.append(project_vec(unit_vec))
    projection = Matrix.from_cols(proj_cols, nrows=qdim)
    lift_cols = [tuple(1 if j == qc else 0 for j in range(amb))
                 for qc in qcols]
    lift = Matrix.from_cols(lift_cols, nrows=amb)

    ir = Matrix.identity(e.dim)
    left_mats = []
    for i in range(a.dim):
        amb_act = kron(m.left[i], ir)
        # balancing is stable under the left action, else the quotient
        # action would be ill defined
        for rv in rel.basis:
            assert rel.contains(amb_act.apply(rv)), \
                "left action does not preserve balancing relations"
        left_mats.append(projection @ amb_act @ lift)
    quotient = LeftModule(a, qdim, left_mats)
    return TensorProductOverA((m, e), quotient, projection, lift, rel)
