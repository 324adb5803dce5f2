"""Hand-written structure tables used as oracles across the test suite.

These are deliberately written out by hand (not imported from the package's
catalog) so that catalog bundles can be cross-checked against an independent
transcription.
"""

from fractions import Fraction

from ncwb.algebra import Algebra

F = Fraction


def dual_numbers() -> Algebra:
    # basis 1, x with x^2 = 0
    sc = [
        [(1, 0), (0, 1)],
        [(0, 1), (0, 0)],
    ]
    return Algebra(("1", "x"), sc, (1, 0))


def z2_group_algebra() -> Algebra:
    # basis 1, g with g^2 = 1
    sc = [
        [(1, 0), (0, 1)],
        [(0, 1), (1, 0)],
    ]
    return Algebra(("1", "g"), sc, (1, 0))


def truncated_polynomials(n: int) -> Algebra:
    # basis 1, x, ..., x^(n-1) with x^n = 0
    def zero():
        return [0] * n

    sc = []
    for i in range(n):
        row = []
        for j in range(n):
            v = zero()
            if i + j < n:
                v[i + j] = 1
            row.append(tuple(v))
        sc.append(row)
    unit = zero()
    unit[0] = 1
    return Algebra(tuple("1" if k == 0 else "x^%d" % k if k > 1 else "x"
                         for k in range(n)), sc, tuple(unit))


def matrix_2() -> Algebra:
    # matrix units e11, e12, e21, e22; E_ab E_cd = delta_bc E_ad
    idx = {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}
    pairs = [(0, 0), (0, 1), (1, 0), (1, 1)]
    sc = []
    for (a, b) in pairs:
        row = []
        for (c, d) in pairs:
            v = [0, 0, 0, 0]
            if b == c:
                v[idx[(a, d)]] = 1
            row.append(tuple(v))
        sc.append(row)
    return Algebra(("e11", "e12", "e21", "e22"), sc, (1, 0, 0, 1))


def upper_triangular_2() -> Algebra:
    # basis e11, e12, e22 inside 2x2 matrices
    names = ("e11", "e12", "e22")
    pairs = [(0, 0), (0, 1), (1, 1)]
    idx = {p: k for k, p in enumerate(pairs)}
    sc = []
    for (a, b) in pairs:
        row = []
        for (c, d) in pairs:
            v = [0, 0, 0]
            if b == c:
                v[idx[(a, d)]] = 1
            row.append(tuple(v))
        sc.append(row)
    return Algebra(names, sc, (1, 0, 1))


def quantum_plane(q=F(2), deg=2) -> Algebra:
    # monomials x^a y^b with a+b <= deg, y x = q x y, top degree truncated
    monos = [(a, b) for total in range(deg + 1)
             for a in range(total, -1, -1) for b in [total - a]]
    idx = {m: k for k, m in enumerate(monos)}
    n = len(monos)

    def name(m):
        a, b = m
        if a == 0 and b == 0:
            return "1"
        part = []
        if a:
            part.append("x" if a == 1 else "x^%d" % a)
        if b:
            part.append("y" if b == 1 else "y^%d" % b)
        return "*".join(part)

    sc = []
    for (a, b) in monos:
        row = []
        for (c, d) in monos:
            v = [F(0)] * n
            if a + b + c + d <= deg:
                v[idx[(a + c, b + d)]] = F(q) ** (b * c)
            row.append(tuple(v))
        sc.append(row)
    unit = [0] * n
    unit[idx[(0, 0)]] = 1
    return Algebra(tuple(name(m) for m in monos), sc, tuple(unit))


# ---- calculi ----------------------------------------------------------

from ncwb.algebra import Bimodule  # noqa: E402
from ncwb.calculus import DifferentialCalculus  # noqa: E402
from ncwb.linalg import Matrix  # noqa: E402


def kahler_dual_numbers() -> DifferentialCalculus:
    # one-forms A dx / (x dx); single basis vector w with x.w = w.x = 0
    a = dual_numbers()
    one, zero = Matrix([[1]]), Matrix([[0]])
    m = Bimodule(a, 1, (one, zero), (one, zero))
    return DifferentialCalculus(a, m, Matrix([[0, 1]]))


def kahler_truncated(n: int) -> DifferentialCalculus:
    # basis w_k ~ x^k dx for k < n-1, x^p shifts, d(x^j) = j w_(j-1)
    a = truncated_polynomials(n)
    dim = n - 1

    def shift(p):
        return Matrix([[1 if i == j + p else 0 for j in range(dim)]
                       for i in range(dim)])

    left = tuple(shift(p) for p in range(n))
    m = Bimodule(a, dim, left, left)
    d = Matrix([[j if i == j - 1 else 0 for j in range(n)]
                for i in range(dim)])
    return DifferentialCalculus(a, m, d)


def theta_z2() -> DifferentialCalculus:
    # one dimensional module with g.theta = theta, theta.g = -theta,
    # d(g) = 2 theta; Leibniz needs the sign twist
    a = z2_group_algebra()
    m = Bimodule(a, 1, (Matrix([[1]]), Matrix([[1]])),
                 (Matrix([[1]]), Matrix([[-1]])))
    return DifferentialCalculus(a, m, Matrix([[0, 2]]))


def inner_calculus(a, u_coords) -> DifferentialCalculus:
    # d f = u f - f u on the regular bimodule
    m = Bimodule.regular(a)
    d = a.left_mult_matrix(u_coords) - a.right_mult_matrix(u_coords)
    return DifferentialCalculus(a, m, d)


def zero_calculus(a) -> DifferentialCalculus:
    return DifferentialCalculus(a, Bimodule.zero(a),
                                Matrix((), ncols=a.dim))


# ---- pairs ------------------------------------------------------------

from ncwb.cartan import CartanPair  # noqa: E402


def quantum_plane_pair() -> CartanPair:
    # two generators X, Y; scalars act from the left through the constant
    # term, the right action feeds Y into X along x, and the action raises
    # degree: X: x -> y^2, Y: x -> x^2, x^2 -> y^2
    a = quantum_plane()
    ident, z = Matrix.identity(2), Matrix.zeros(2, 2)
    left = (ident, z, z, z, z, z)
    right = (ident, Matrix([[0, 1], [0, 0]]), z, z, z, z)
    nb = Bimodule(a, 2, left, right)

    def emat(entries):
        m = [[0] * 6 for _ in range(6)]
        for r, c in entries:
            m[r][c] = 1
        return Matrix(m)

    return CartanPair(a, nb, (emat([(5, 1)]), emat([(3, 1), (5, 3)])))


def naive_derivative_pair(n: int) -> CartanPair:
    # formal d/dx scaled by powers of x on the regular bimodule; the
    # truncation x^n = 0 breaks the twisted Leibniz law at total degree n
    a = truncated_polynomials(n)
    ddx = Matrix([[j if i == j - 1 else 0 for j in range(n)]
                  for i in range(n)])
    acts = tuple(a.lmul[t] @ ddx for t in range(n))
    return CartanPair(a, Bimodule.regular(a), acts)


def zero_action_pair_z2() -> CartanPair:
    a = z2_group_algebra()
    z = Matrix.zeros(2, 2)
    return CartanPair(a, Bimodule.regular(a), (z, z))
