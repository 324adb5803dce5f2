"""Cartan pairs: bimodules acting on their algebra by twisted derivations.

A pair is a bimodule N together with one operator on A per basis vector of
N, subject to two laws checked on basis vectors:

    (f.X)(g)  = f (X(g))                      action linearity
    X(fg)     = X(f) g + (X.f)(g)             twisted Leibniz

Pairs and calculi convert into each other through duals: the right dual of
a calculus bimodule acts by X -> <X, d(.)>, and a pair induces a calculus
valued in the left dual of N.  The co-universal pair is the one derived
from the universal calculus; factorization of arbitrary pairs through it
is solved for explicitly and reported, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .linalg import (
    Matrix, Subspace, is_zero_vector, kernel, rank, restrict_to_kernel,
    solve, vsub,
)
from .algebra import (
    Algebra, Bimodule, BimoduleMap, DualBimodule, bimodule_map_space,
    check_bimodule_map, left_dual, right_dual,
)
from .calculus import (
    DifferentialCalculus, UniversalCalculus, is_spanned_by_differential,
    universal_calculus,
)
from .reporting import CheckReport


class CartanPair:
    """action[t] is the operator of the t-th basis vector of the bimodule."""

    def __init__(self, algebra: Algebra, bimodule: Bimodule, action,
                 source_calculus: Optional[DifferentialCalculus] = None,
                 dual: Optional[DualBimodule] = None):
        assert bimodule.algebra is algebra
        self.algebra = algebra
        self.bimodule = bimodule
        self.action = tuple(action)
        assert len(self.action) == bimodule.dim
        for m in self.action:
            assert m.nrows == algebra.dim and m.ncols == algebra.dim
        # provenance when derived from a calculus; purely informational
        self.source_calculus = source_calculus
        self.dual = dual

    def action_of(self, xcoords) -> Matrix:
        out = Matrix.zeros(self.algebra.dim, self.algebra.dim)
        for t, c in enumerate(xcoords):
            if c != 0:
                out = out + self.action[t].scale(c)
        return out

    def act(self, xcoords, fcoords):
        return self.action_of(xcoords).apply(fcoords)

    def __repr__(self):
        return "CartanPair(bimodule dim %d over %r)" % (
            self.bimodule.dim, self.algebra)


def check_cartan(p: CartanPair) -> CheckReport:
    """Both pair laws plus annihilation of the unit, exhaustively."""
    rep = CheckReport("cartan pair")
    a = p.algebra
    nb = p.bimodule
    n, m = a.dim, nb.dim
    for i in range(n):
        for t in range(m):
            lhs = Matrix.zeros(n, n)
            for s, c in enumerate(nb.left[i].col(t)):
                if c != 0:
                    lhs = lhs + p.action[s].scale(c)
            if lhs != a.lmul[i] @ p.action[t]:
                rep.add("action-linearity", (i, t),
                        "(%s.X_%d) acts wrong" % (a.basis_names[i], t))
    for t in range(m):
        at = p.action[t]
        for i in range(n):
            ai = at.col(i)
            for j in range(n):
                lhs = at.apply(a.sc[i][j])
                rhs = a.rmul[j].apply(ai)
                for s, c in enumerate(nb.right[i].col(t)):
                    if c != 0:
                        rhs = tuple(x + c * y for x, y in
                                    zip(rhs, p.action[s].col(j)))
                if lhs != rhs:
                    defect = vsub(lhs, rhs)
                    rep.add("twisted-leibniz", (t, i, j),
                            "X_%d(%s*%s) defect %s" % (
                                t, a.basis_names[i], a.basis_names[j],
                                a.format(defect)))
    for t in range(m):
        if not is_zero_vector(p.action[t].apply(a.unit)):
            rep.add("unit-annihilation", (t,),
                    "X_%d(1) = %s" % (t, a.format(p.action[t].apply(a.unit))))
    return rep


def pair_from_calculus(c: DifferentialCalculus) -> CartanPair:
    """Right dual of the calculus bimodule acting through X -> X(d(.))."""
    d = right_dual(c.bimodule)
    action = tuple(e @ c.d for e in d.eval_mats)
    return CartanPair(c.algebra, d.bimodule, action,
                      source_calculus=c, dual=d)


def calculus_from_pair(p: CartanPair):
    """Differential into the left dual of the pair bimodule.

    d(f) is the functional X -> X(f); its evaluation matrix always lies in
    the left dual span.  Returns (calculus, left dual of N).
    """
    a = p.algebra
    ld = left_dual(p.bimodule)
    cols = []
    for j in range(a.dim):
        ev = Matrix.from_cols([p.action[t].col(j) for t in range(p.bimodule.dim)],
                              nrows=a.dim)
        c = ld.coords_of_map(ev)
        assert c is not None, "evaluation of the action is left linear"
        cols.append(tuple(c))
    d = Matrix.from_cols(cols, nrows=ld.dim)
    return DifferentialCalculus(a, ld.bimodule, d), ld


def action_kernel(p: CartanPair) -> Subspace:
    """Bimodule vectors acting by zero."""
    cols = [m.flatten() for m in p.action]
    if not cols:
        return Subspace.zero(0)
    return kernel(Matrix.from_cols(cols, nrows=p.algebra.dim ** 2))


@dataclass
class SpanKernelDiagnostic:
    spanned: bool
    kernel_trivial: bool

    @property
    def agree(self) -> bool:
        return self.spanned == self.kernel_trivial


def spanning_kernel_diagnostic(p: CartanPair) -> SpanKernelDiagnostic:
    """Reports, side by side, whether the induced calculus is spanned by
    differentials and whether the action kernel vanishes.  No implication
    between the two is asserted."""
    calc, _ = calculus_from_pair(p)
    return SpanKernelDiagnostic(
        spanned=is_spanned_by_differential(calc),
        kernel_trivial=action_kernel(p).dim == 0)


class CoUniversalPair(CartanPair):
    """Pair derived from the universal calculus."""

    def __init__(self, universal: UniversalCalculus, dual: DualBimodule,
                 action):
        super().__init__(universal.algebra, dual.bimodule, action,
                         source_calculus=universal, dual=dual)
        self.universal = universal


def co_universal_pair(a: Algebra,
                      universal: Optional[UniversalCalculus] = None
                      ) -> CoUniversalPair:
    u = universal if universal is not None else universal_calculus(a)
    d = right_dual(u.bimodule)
    action = tuple(e @ u.d for e in d.eval_mats)
    return CoUniversalPair(u, d, action)


@dataclass
class CoUniversalFactorization:
    """Solution of action = action_u o Phi over bimodule maps N -> X_u."""
    phi: Optional[BimoduleMap]
    exists: bool
    unique: bool
    homogeneous_dim: int
    report: CheckReport


def co_universal_factorization(p: CartanPair,
                               couniv: Optional[CoUniversalPair] = None
                               ) -> CoUniversalFactorization:
    """Search for the unique bimodule map into the co-universal pair.

    The candidate space is the full space of bimodule maps N -> X_u; the
    action equation is imposed on it as an affine system.  Existence is a
    finding, not an assumption: for pairs not derived from a calculus the
    general existence question is open machinery, so the computed answer
    is simply reported.
    """
    cu = couniv if couniv is not None else co_universal_pair(p.algebra)
    rep = CheckReport("co-universal factorization")
    maps = bimodule_map_space(p.bimodule, cu.bimodule)
    q, pn = cu.bimodule.dim, p.bimodule.dim
    n2 = p.algebra.dim ** 2
    # action_u o Phi = action, as linear conditions on flattened Phi
    cond_cols = []
    for flat_idx in range(q * pn):
        k, t = divmod(flat_idx, pn)
        v = [0] * (n2 * pn)
        for r, x in enumerate(cu.action[k].flatten()):
            v[t * n2 + r] = x
        cond_cols.append(tuple(v))
    cond = Matrix.from_cols(cond_cols, nrows=n2 * pn)
    target = []
    for t in range(pn):
        target.extend(p.action[t].flatten())
    if maps.dim == 0:
        if is_zero_vector(target):
            phi_flat = (0,) * (q * pn)
        else:
            phi_flat = None
    else:
        basis_mat = Matrix.from_cols(
            [maps.element(tuple(1 if s == r else 0 for s in range(maps.dim)))
             for r in range(maps.dim)], nrows=q * pn)
        coeffs = solve(cond @ basis_mat, target)
        phi_flat = basis_mat.apply(coeffs) if coeffs is not None else None
    hom = restrict_to_kernel(maps, cond)
    exists = phi_flat is not None
    if not exists:
        rep.add("factorization-exists", (),
                "no bimodule map matches the action")
        phi_map = None
    else:
        phi_map = BimoduleMap(p.bimodule, cu.bimodule,
                              Matrix.from_flat(phi_flat, q, pn))
        rep.extend(check_bimodule_map(phi_map))
        for t in range(pn):
            xt = tuple(1 if s == t else 0 for s in range(pn))
            if cu.action_of(phi_map.apply(xt)) != p.action[t]:
                rep.add("factorization-equation", (t,))
    unique = exists and hom.dim == 0
    if exists and hom.dim != 0:
        rep.add("factorization-uniqueness", (),
                "homogeneous solutions of dimension %d" % hom.dim)
    return CoUniversalFactorization(phi_map, exists, unique, hom.dim, rep)


@dataclass
class ReflexiveRoundtrip:
    """Canonical map of a calculus bimodule into the double dual."""
    kappa: BimoduleMap
    injective: bool
    surjective: bool
    intertwines: bool
    map_report: CheckReport
    derived: DifferentialCalculus


def reflexive_roundtrip(c: DifferentialCalculus) -> ReflexiveRoundtrip:
    """Right dual then left dual; m goes to evaluation-at-m.

    Everything is computed from the exhaustive solves and reported; no
    reflexivity is assumed.
    """
    p = pair_from_calculus(c)
    derived, ld = calculus_from_pair(p)
    md = p.dual
    a = c.algebra
    cols = []
    for j in range(c.bimodule.dim):
        ev = Matrix.from_cols([md.eval_mats[t].col(j) for t in range(md.dim)],
                              nrows=a.dim)
        coords = ld.coords_of_map(ev)
        assert coords is not None, "evaluation at a module vector is left linear"
        cols.append(tuple(coords))
    kappa_mat = Matrix.from_cols(cols, nrows=ld.dim)
    kappa = BimoduleMap(c.bimodule, ld.bimodule, kappa_mat)
    r = rank(kappa_mat)
    return ReflexiveRoundtrip(
        kappa=kappa,
        injective=(r == c.bimodule.dim),
        surjective=(r == ld.dim),
        intertwines=(kappa_mat @ c.d == derived.d),
        map_report=check_bimodule_map(kappa),
        derived=derived)
