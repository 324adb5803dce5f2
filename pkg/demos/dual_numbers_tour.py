"""Tour of the smallest interesting example: the dual numbers.

The algebra is spanned by 1 and x with x^2 = 0.  Its one-forms are a
single dx with x.dx = 0, the differential sends f to its x-coefficient,
and the matching vector field X0 differentiates by x.  The two
directions of the calculus/pair correspondence are run and checked.
"""

from ncwb.calculus import check_leibniz
from ncwb.cartan import calculus_from_pair, check_cartan, pair_from_calculus
from ncwb.catalog import builtin


def main():
    b = builtin("dual_numbers")
    a = b.algebra
    print("algebra basis:", ", ".join(a.basis_names))
    print("x*x =", a.format(a.sc[1][1]))

    c = b.calculus
    print("\none-form module dimension:", c.bimodule.dim)
    for i in range(a.dim):
        coeffs = ", ".join(str(v) for v in c.d.col(i))
        print("d(%s) has one-form coordinates (%s)"
              % (a.basis_names[i], coeffs))
    print("Leibniz check:", check_leibniz(c))

    p = pair_from_calculus(c)
    print("\nderived pair: %d field(s)" % p.bimodule.dim)
    for i in range(a.dim):
        print("X0(%s) = %s" % (a.basis_names[i],
                               a.format(p.action[0].col(i))))
    print("pair laws:", check_cartan(p))

    c2, _ = calculus_from_pair(p)
    print("\nround trip back to a calculus of dimension", c2.bimodule.dim)
    print("Leibniz check:", check_leibniz(c2))


if __name__ == "__main__":
    main()
