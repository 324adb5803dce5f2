"""Left connections on a module, with respect to a differential calculus.

A connection sends the module E into the balanced tensor product M (x)_A E
and obeys the Leibniz rule nabla(f.xi) = f.nabla(xi) + df (x) xi.  Pairing
the M leg against a right dual vector field turns nabla into a covariant
derivative, one endomorphism of E per field; the two covariant-derivative
laws checked here extend the Cartan pair laws from A to E.

Contraction against the M leg is well defined on the balanced quotient
because right dual elements are right module maps; the construction still
asserts that fact numerically on the relation subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .linalg import (
    Matrix, Subspace, is_zero_vector, kernel, kron, solve, vector,
)
from .algebra import (
    DualBimodule, LeftModule, TensorProductOverA, tensor_over_A,
)
from .calculus import DifferentialCalculus
from .cartan import CartanPair
from .reporting import CheckReport


class Connection:
    """A linear map E -> M (x)_A E in tensor-quotient coordinates."""

    def __init__(self, calculus: DifferentialCalculus, module: LeftModule,
                 tensor: TensorProductOverA, matrix: Matrix):
        assert module.algebra is calculus.algebra
        assert tensor.factors[0] is calculus.bimodule
        assert tensor.factors[1] is module
        assert matrix.nrows == tensor.module.dim
        assert matrix.ncols == module.dim
        self.calculus = calculus
        self.module = module
        self.tensor = tensor
        self.matrix = matrix

    def apply(self, xi):
        return self.matrix.apply(xi)

    def __repr__(self):
        return "Connection(E dim %d, target dim %d)" % (
            self.module.dim, self.tensor.module.dim)


def simple_tensor(t: TensorProductOverA, mcoords, ecoords):
    """Quotient coordinates of m (x) xi."""
    m, e = t.factors
    v = [Fraction(0)] * (m.dim * e.dim)
    for s, c in enumerate(vector(mcoords)):
        if c != 0:
            for a2, c2 in enumerate(vector(ecoords)):
                if c2 != 0:
                    v[s * e.dim + a2] += c * c2
    return t.projection.apply(v)


def contraction_matrix(dual: DualBimodule, t: TensorProductOverA,
                       xcoords) -> Matrix:
    """The map <X, .>.(.) : M (x)_A E -> E in quotient coordinates.

    On a simple tensor m (x) xi this is <X, m>.xi.  The ambient version
    must kill every balancing relation, which comes down to X being a
    right module map; asserted below rather than trusted.
    """
    m, e = t.factors
    assert dual.side == "right" and dual.base is m
    ev = dual.eval_of(xcoords)
    cols = []
    for s in range(m.dim):
        block = e.left_of(ev.col(s))
        for a2 in range(e.dim):
            cols.append(block.col(a2))
    ambient = Matrix.from_cols(cols, nrows=e.dim)
    for rv in t.relations.basis:
        assert is_zero_vector(ambient.apply(rv)), \
            "contraction is not balanced"
    return ambient @ t.lift


def contract(dual: DualBimodule, t: TensorProductOverA, xcoords, tcoords):
    return contraction_matrix(dual, t, xcoords).apply(tcoords)


def check_connection(conn: Connection) -> CheckReport:
    """Leibniz law nabla(f.xi) = f.nabla(xi) + df (x) xi on all basis
    pairs."""
    rep = CheckReport("connection")
    a = conn.calculus.algebra
    e = conn.module
    tmod = conn.tensor.module
    for i in range(a.dim):
        shifted = conn.matrix @ e.left[i]
        scaled = tmod.left[i] @ conn.matrix
        for t in range(e.dim):
            basis_xi = tuple(1 if s == t else 0 for s in range(e.dim))
            extra = simple_tensor(conn.tensor, conn.calculus.d.col(i),
                                  basis_xi)
            lhs = shifted.col(t)
            rhs = tuple(x + y for x, y in zip(scaled.col(t), extra))
            if lhs != rhs:
                rep.add("connection-leibniz", (i, t))
    return rep


def _pair_matches(conn: Connection, pair: CartanPair) -> bool:
    if pair.dual is None or pair.dual.side != "right":
        return False
    if pair.source_calculus is conn.calculus:
        return True
    c = pair.source_calculus
    return c is not None and c.algebra is conn.calculus.algebra \
        and c.bimodule is conn.calculus.bimodule \
        and c.d == conn.calculus.d


def covariant_derivative(conn: Connection, pair: CartanPair,
                         xcoords) -> Matrix:
    """The endomorphism of E obtained by pairing X against the M leg of
    nabla."""
    if not _pair_matches(conn, pair):
        raise ValueError("pair is not derived from the connection's calculus")
    return contraction_matrix(pair.dual, conn.tensor, xcoords) @ conn.matrix


def check_covariant_axioms(conn: Connection, pair: CartanPair) -> CheckReport:
    """The covariant derivative versions of the pair laws, on all basis
    triples: direction linearity nabla_{f.X} = f.nabla_X and the twisted
    Leibniz rule nabla_X(f.xi) = X(f).xi + nabla_{X.f}(xi)."""
    if not _pair_matches(conn, pair):
        raise ValueError("pair is not derived from the connection's calculus")
    rep = CheckReport("covariant axioms")
    a = conn.calculus.algebra
    e = conn.module
    nb = pair.bimodule
    for t in range(nb.dim):
        xt = tuple(1 if s == t else 0 for s in range(nb.dim))
        dx = covariant_derivative(conn, pair, xt)
        for i in range(a.dim):
            dfx = covariant_derivative(conn, pair, nb.left[i].col(t))
            scaled = e.left[i] @ dx
            for a2 in range(e.dim):
                if dfx.col(a2) != scaled.col(a2):
                    rep.add("action-linearity", (i, t, a2))
            dxf = covariant_derivative(conn, pair, nb.right[i].col(t))
            shifted = dx @ e.left[i]
            mult = e.left_of(pair.action[t].col(i))
            for a2 in range(e.dim):
                rhs = tuple(x + y for x, y in
                            zip(mult.col(a2), dxf.col(a2)))
                if shifted.col(a2) != rhs:
                    rep.add("twisted-leibniz", (t, i, a2))
    return rep


def trivial_connection(c: DifferentialCalculus, rank_: int = 1) -> Connection:
    """On the free module A^r: nabla(f.e_a) = df (x) e_a."""
    assert rank_ >= 0
    a = c.algebra
    e = LeftModule.free(a, rank_)
    t = tensor_over_A(c.bimodule, e)
    cols = []
    for blk in range(rank_):
        for i in range(a.dim):
            gen = [Fraction(0)] * e.dim
            for k, uk in enumerate(a.unit):
                gen[blk * a.dim + k] = uk
            cols.append(simple_tensor(t, c.d.col(i), gen))
    return Connection(c, e, t, Matrix.from_cols(cols, nrows=t.module.dim))


@dataclass
class ConnectionSpace:
    """Affine solution set of the connection Leibniz constraint."""
    tensor: TensorProductOverA
    exists: bool
    particular: Optional[Connection]
    homogeneous: Subspace       # flattened maps E -> M (x)_A E

    def element(self, coeffs) -> Connection:
        """particular plus a combination of the homogeneous basis."""
        assert self.particular is not None
        flat = list(self.particular.matrix.flatten())
        for c, b in zip(coeffs, self.homogeneous.basis):
            for j, x in enumerate(b):
                flat[j] += c * x
        p = self.particular
        q = self.tensor.module.dim
        return Connection(p.calculus, p.module, self.tensor,
                          Matrix.from_flat(flat, q, p.module.dim))


def connection_space(c: DifferentialCalculus, e: LeftModule) -> ConnectionSpace:
    """Solve the Leibniz constraint for all maps E -> M (x)_A E.

    The unknown matrix enters linearly once the df (x) xi term is moved to
    the right hand side; the homogeneous solutions are exactly the left
    module maps.
    """
    a = c.algebra
    t = tensor_over_A(c.bimodule, e)
    q = t.module.dim
    unknowns = q * e.dim
    rows = []
    rhs = []
    iq = Matrix.identity(q)
    ie = Matrix.identity(e.dim)
    for i in range(a.dim):
        block = kron(iq, e.left[i].transpose()) - kron(t.module.left[i], ie)
        rows.extend(block.rows)
        target = []
        for a2 in range(e.dim):
            basis_xi = tuple(1 if s == a2 else 0 for s in range(e.dim))
            target.append(simple_tensor(t, c.d.col(i), basis_xi))
        # row-major flatten of the matrix whose columns are the targets
        rhs.extend(target[a2][r] for r in range(q) for a2 in range(e.dim))
    big = Matrix(rows, ncols=unknowns)
    sol = solve(big, rhs)
    homog = kernel(big)
    if sol is None:
        return ConnectionSpace(t, False, None, homog)
    part = Connection(c, e, t, Matrix.from_flat(sol, q, e.dim))
    return ConnectionSpace(t, True, part, homog)
