"""Leibniz checks, universal one-forms, factorization, generation."""

import pytest

from ncwb.algebra import Bimodule, check_bimodule, direct_sum
from ncwb.calculus import (
    DifferentialCalculus, check_leibniz, factor_through_universal,
    is_spanned_by_differential, universal_calculus,
)
from ncwb.linalg import Matrix, is_zero_vector

from helpers import (
    dual_numbers, inner_calculus, kahler_dual_numbers, kahler_truncated,
    matrix_2, quantum_plane, theta_z2, truncated_polynomials,
    upper_triangular_2, z2_group_algebra, zero_calculus,
)


def all_calculi():
    return [
        kahler_dual_numbers(),
        kahler_truncated(4),
        theta_z2(),
        inner_calculus(upper_triangular_2(), (1, 0, 0)),
        inner_calculus(matrix_2(), (1, 0, 0, 0)),
        zero_calculus(z2_group_algebra()),
    ]


@pytest.mark.parametrize("c", all_calculi(), ids=lambda c: repr(c.algebra))
def test_leibniz_holds(c):
    assert check_bimodule(c.bimodule).ok
    assert check_leibniz(c).ok


@pytest.mark.parametrize("c", all_calculi(), ids=lambda c: repr(c.algebra))
def test_differential_kills_unit(c):
    assert is_zero_vector(c.d.apply(c.algebra.unit))


def test_planted_d_of_unit_nonzero_is_reported():
    good = kahler_dual_numbers()
    bad = DifferentialCalculus(good.algebra, good.bimodule, Matrix([[1, 0]]))
    rep = check_leibniz(bad)
    assert not rep.ok
    assert (0, 0) in [f.witness for f in rep.findings]


@pytest.mark.parametrize("make,expect", [
    (dual_numbers, 2),
    (z2_group_algebra, 2),
    (lambda: truncated_polynomials(4), 12),
    (upper_triangular_2, 6),
    (matrix_2, 12),
    (quantum_plane, 30),
])
def test_universal_one_form_dimension(make, expect):
    a = make()
    u = universal_calculus(a)
    assert u.bimodule.dim == expect == a.dim * a.dim - a.dim


def test_universal_dual_numbers_basis():
    # kernel of multiplication: span of 1(x)x - x(x)1 and x(x)x
    u = universal_calculus(dual_numbers())
    assert u.one_forms.basis == ((0, 1, -1, 0), (0, 0, 0, 1))
    assert u.d.col(1) == (1, 0)
    assert u.d.col(0) == (0, 0)


@pytest.mark.parametrize("make", [dual_numbers, z2_group_algebra,
                                  upper_triangular_2, matrix_2])
def test_universal_is_a_leibniz_calculus(make):
    u = universal_calculus(make())
    assert check_bimodule(u.bimodule).ok
    assert check_leibniz(u).ok
    assert is_spanned_by_differential(u)


def test_factor_through_universal_dual_numbers():
    c = kahler_dual_numbers()
    phi, rep = factor_through_universal(c)
    assert rep.ok
    assert phi.matrix == Matrix([[1, 0]])


@pytest.mark.parametrize("c", all_calculi(), ids=lambda c: repr(c.algebra))
def test_factorization_certificate(c):
    u = universal_calculus(c.algebra)
    phi, rep = factor_through_universal(c, universal=u)
    assert rep.ok
    assert phi.matrix @ u.d == c.d


@pytest.mark.parametrize("c", [kahler_dual_numbers(), theta_z2(),
                               inner_calculus(matrix_2(), (1, 0, 0, 0))],
                         ids=["dual-numbers", "z2-theta", "matrix2-inner"])
def test_spanned_by_differential(c):
    assert is_spanned_by_differential(c)


def test_unreached_summand_detected():
    # add a trivial summand the differential never reaches
    c = kahler_dual_numbers()
    a = c.algebra
    one, zero = Matrix([[1]]), Matrix([[0]])
    trivial = Bimodule(a, 1, (one, zero), (one, zero))
    bigger = direct_sum(c.bimodule, trivial)
    d2 = Matrix([[0, 1], [0, 0]])
    c2 = DifferentialCalculus(a, bigger, d2)
    assert check_leibniz(c2).ok
    assert not is_spanned_by_differential(c2)


def test_zero_calculus_spans_trivially():
    c = zero_calculus(z2_group_algebra())
    assert is_spanned_by_differential(c)
    phi, rep = factor_through_universal(c)
    assert rep.ok and phi.matrix.nrows == 0
