"""Connections on a free module and their covariant derivatives.

A connection sends a module element to a one-form tensor a module
element, twisted by the Leibniz rule.  Contracting with a vector field
is well defined exactly because dual fields are right-module maps, and
the resulting covariant derivative is tensorial in X and twisted in the
argument.  A planted map that drops the df (x) xi term is caught with a
witness.
"""

from ncwb.cartan import pair_from_calculus
from ncwb.catalog import broken_connection_fixture, builtin
from ncwb.connections import (
    check_connection, check_covariant_axioms, connection_space,
    covariant_derivative, trivial_connection,
)


def main():
    b = builtin("truncated_poly", (3,))
    c = b.calculus
    p = pair_from_calculus(c)

    conn = trivial_connection(c)
    print("trivial connection on a rank-1 free module")
    print("  connection law:", check_connection(conn))
    print("  covariant axioms:", check_covariant_axioms(conn, p))

    for t in range(p.bimodule.dim):
        x = [0] * p.bimodule.dim
        x[t] = 1
        nabla = covariant_derivative(conn, p, x)
        print("  covariant derivative along X_%d equals the action: %s"
              % (t, nabla == p.action[t]))

    space = connection_space(c, conn.module)
    print("\nall connections on that module: affine space of dimension",
          space.homogeneous.dim)

    bad = broken_connection_fixture()
    rep = check_connection(bad)
    print("\nplanted violator:", rep)


if __name__ == "__main__":
    main()
