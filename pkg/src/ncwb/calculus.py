"""First order differential calculi and the universal one.

A calculus is a bimodule M together with a linear map d: A -> M satisfying
the Leibniz law d(fg) = df.g + f.dg.  The universal calculus lives on the
kernel of the multiplication map A (x) A -> A with du f = 1 (x) f - f (x) 1;
every calculus factors through it by a unique bimodule map, and that map is
computed here together with an explicit uniqueness certificate.
"""

from __future__ import annotations

from typing import Optional

from .linalg import (
    Matrix, Subspace, closure_under_maps, kernel, kron, restrict_to_kernel,
    vadd, vscale, vzero,
)
from .algebra import Algebra, Bimodule, BimoduleMap, bimodule_map_space, \
    check_bimodule_map
from .reporting import CheckReport


class DifferentialCalculus:
    """d maps algebra coordinates to module coordinates, column per basis."""

    def __init__(self, algebra: Algebra, bimodule: Bimodule, d: Matrix):
        assert bimodule.algebra is algebra
        assert d.nrows == bimodule.dim and d.ncols == algebra.dim
        self.algebra = algebra
        self.bimodule = bimodule
        self.d = d

    def differential(self, f):
        return self.d.apply(f)

    def __repr__(self):
        return "DifferentialCalculus(module dim %d over %r)" % (
            self.bimodule.dim, self.algebra)


class UniversalCalculus(DifferentialCalculus):
    """The universal calculus realised on kernel-of-multiplication coords.

    one_forms is the kernel subspace of A (x) A (basis e_i (x) e_j at
    i*n+j); the bimodule actions and du are written on its canonical basis.
    """

    def __init__(self, algebra: Algebra, bimodule: Bimodule, d: Matrix,
                 one_forms: Subspace):
        super().__init__(algebra, bimodule, d)
        self.one_forms = one_forms

    def ambient(self, w):
        """Kernel coordinates -> A (x) A coordinates."""
        return self.one_forms.element(w)

    def from_ambient(self, v):
        """A (x) A coordinates -> kernel coordinates (None if outside)."""
        return self.one_forms.coords(v)


def check_leibniz(c: DifferentialCalculus) -> CheckReport:
    """d(e_i e_j) = d(e_i).e_j + e_i.d(e_j) for every basis pair."""
    rep = CheckReport("calculus")
    a = c.algebra
    for i in range(a.dim):
        di = c.d.col(i)
        for j in range(a.dim):
            lhs = c.d.apply(a.sc[i][j])
            rhs = vadd(c.bimodule.right[j].apply(di),
                       c.bimodule.left[i].apply(c.d.col(j)))
            if lhs != rhs:
                rep.add("leibniz", (i, j), "d(%s*%s)" % (
                    a.basis_names[i], a.basis_names[j]))
    return rep


def universal_calculus(a: Algebra) -> UniversalCalculus:
    """Kernel of multiplication with du f = 1 (x) f - f (x) 1."""
    n = a.dim
    ker = kernel(a.mult_matrix())
    k = ker.dim
    i_n = Matrix.identity(n)

    def restricted(amb_act: Matrix) -> Matrix:
        cols = []
        for b in ker.basis:
            c = ker.coords(amb_act.apply(b))
            assert c is not None, "kernel of multiplication is a sub-bimodule"
            cols.append(tuple(c))
        return Matrix.from_cols(cols, nrows=k)

    left = tuple(restricted(kron(a.lmul[i], i_n)) for i in range(n))
    right = tuple(restricted(kron(i_n, a.rmul[i])) for i in range(n))
    bim = Bimodule(a, k, left, right)

    d_cols = []
    for j in range(n):
        v = list(vzero(n * n))
        for i, u in enumerate(a.unit):
            if u != 0:
                v[i * n + j] += u      # 1 (x) e_j
                v[j * n + i] -= u      # e_j (x) 1
        c = ker.coords(v)
        assert c is not None, "du lands in the kernel of multiplication"
        d_cols.append(tuple(c))
    du = Matrix.from_cols(d_cols, nrows=k)
    return UniversalCalculus(a, bim, du, ker)


def factor_through_universal(c: DifferentialCalculus,
                             universal: Optional[UniversalCalculus] = None):
    """The bimodule map phi with phi o du = d, plus its certificate.

    Returns (phi, report).  The report lists factorisation or intertwining
    failures (none are expected for a Leibniz calculus) and certifies
    uniqueness by solving for the full space of candidate maps.
    """
    a = c.algebra
    u = universal if universal is not None else universal_calculus(a)
    m = c.bimodule
    # phi(f (x) g) = f.dg, restricted to the kernel
    amb_cols = []
    for i in range(a.dim):
        li = m.left[i]
        for j in range(a.dim):
            amb_cols.append(li.apply(c.d.col(j)))
    phi_amb = Matrix.from_cols(amb_cols, nrows=m.dim)
    phi = Matrix.from_cols([phi_amb.apply(b) for b in u.one_forms.basis],
                           nrows=m.dim)
    phi_map = BimoduleMap(u.bimodule, m, phi)

    rep = CheckReport("factorization through universal one-forms")
    rep.extend(check_bimodule_map(phi_map))
    if phi @ u.d != c.d:
        rep.add("factorization-equation", (),
                "phi o du differs from d")
    # uniqueness: any bimodule map psi with psi o du = d differs from phi
    # by a map killing du; solve for that space explicitly
    maps = bimodule_map_space(u.bimodule, m)
    du_constraint = kron(Matrix.identity(m.dim), u.d.transpose())
    null_maps = restrict_to_kernel(maps, du_constraint)
    if null_maps.dim != 0:
        rep.add("factorization-uniqueness", (),
                "solution space has dimension %d" % null_maps.dim)
    return phi_map, rep


def is_spanned_by_differential(c: DifferentialCalculus) -> bool:
    """Does the image of d generate the bimodule under both actions?"""
    m = c.bimodule
    seed = [c.d.col(j) for j in range(c.algebra.dim)]
    closure = closure_under_maps(seed, list(m.left) + list(m.right), m.dim)
    return closure.dim == m.dim
