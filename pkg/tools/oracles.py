"""Independent reference values, computed with sympy only.

Nothing here imports ``rta``. Running the script regenerates
``tests/frozen_oracles.py``; the tests compare the library against that file.

    python tools/oracles.py > tests/frozen_oracles.py
"""

from __future__ import annotations

import pprint

import sympy as sp

q, h, K, x = sp.symbols("q h K x")
N_SCAN = 50


def text(expr) -> str:
    """A string the library's expression parser reads back."""
    expr = sp.factor(sp.cancel(sp.together(expr)))
    return str(expr).replace("**", "^")


# ---------------------------------------------------------------- dispin: theta(h) = h - 1, z0 = h, z1 = 1


def dispin_ztilde(n: int):
    return sp.expand(sum(h.subs(h, h - j) for j in range(n)))


def dispin_zeros(a):
    pos = [n for n in range(1, N_SCAN + 1) if dispin_ztilde(n).subs(h, a) == 0]
    # z~_(-n) = theta^(-n)(z~_n) and theta^(-1)(h) = h + 1
    neg = [n for n in range(1, N_SCAN + 1) if dispin_ztilde(n).subs(h, h + n).subs(h, a) == 0]
    return pos, neg


# ---------------------------------------------------------------- U_q(sl2): theta(K) = q^-2 K, z0 = (K - 1/K)/(q - 1/q)


Z0_UQ = (K - 1 / K) / (q - 1 / q)


def uq_theta(expr, j: int):
    return expr.subs(K, q ** (-2 * j) * K)


def uq_ztilde(n: int):
    return sum(uq_theta(Z0_UQ, j) for j in range(n))


def uq_ztilde_coeffs(n: int):
    """Coefficients of K and K^-1 in z~_n."""
    num, den = sp.fraction(sp.cancel(uq_ztilde(n) * K))
    assert not den.has(K)
    poly = sp.Poly(num, K)
    return text(poly.coeff_monomial(K**2) / den), text(poly.coeff_monomial(1) / den)


def uq_zeros(kval):
    pos, neg = [], []
    for n in range(1, N_SCAN + 1):
        zt = uq_ztilde(n)
        if sp.cancel(zt.subs(K, kval)) == 0:
            pos.append(n)
        if sp.cancel(uq_theta(zt, -n).subs(K, kval)) == 0:
            neg.append(n)
    return pos, neg


def uq_casimir():
    c1, c2 = sp.symbols("c1 c2")
    zeta = c1 * K + c2 / K
    eq = sp.expand((zeta - uq_theta(zeta, 1) - Z0_UQ) * K)
    sol = sp.solve([eq.coeff(K, 2), eq.coeff(K, 0)], [c1, c2])
    return text(sol[c1]), text(sol[c2])


# ---------------------------------------------------------------- Weyl algebra as differential operators


def weyl_products(limit: int = 4):
    """PBW coefficients of u^m d^n with u = d/dx and d = multiplication by x."""
    f = sp.Function("f")
    out = {}
    for m in range(limit + 1):
        for n in range(limit + 1):
            expr = sp.expand(sp.diff(x**n * f(x), x, m))
            coeffs = {}
            for b in range(m + 1):
                deriv = f(x) if b == 0 else sp.Derivative(f(x), (x, b))
                c = sp.expand(expr.coeff(deriv))
                if c != 0:
                    poly = sp.Poly(c, x)
                    (a,), lead = poly.terms()[0]
                    assert len(poly.terms()) == 1
                    coeffs[(a, b)] = int(lead)
            out[(m, n)] = coeffs
    return out


# ---------------------------------------------------------------- classical limit of W_q(2, 0, 0), f = h, gamma = -1, s = 1


def classical_limit_rows(xval, k_max: int = 6, l: int = 2, gamma: int = -1):
    z0 = (-sp.Rational(gamma, l)) * (K - 1) / (q - 1)
    lam_k = 1 - xval * l * (q - 1) / gamma
    rows = []
    for k in range(1, k_max + 1):
        quantum = sum(z0.subs(K, q ** (-l * j) * K) for j in range(k)).subs(K, lam_k)
        specialized = sp.limit(sp.cancel(quantum), q, 1)
        # classical down-up algebra: theta(h) = h + gamma, z~_k = sum_j theta^j(h)
        classical = sum(xval + j * gamma for j in range(k))
        rows.append((k, str(sp.nsimplify(specialized)), str(sp.nsimplify(classical))))
    return rows


# ---------------------------------------------------------------- Kronecker products of Cartan matrices


def kron(a, b):
    from sympy.matrices import kronecker_product

    return [[int(v) for v in row] for row in kronecker_product(sp.Matrix(a), sp.Matrix(b)).tolist()]


def main() -> None:
    data = {
        "DISPIN_ZTILDE": {n: [int(dispin_ztilde(n).coeff(h, 0)), int(dispin_ztilde(n).coeff(h, 1))] for n in range(1, 9)},
        "DISPIN_ZEROS": {str(a): dispin_zeros(a) for a in (1, 2, 0, -1, -2, sp.Rational(1, 2), sp.Rational(-3, 2), 5)},
        "UQ_ZTILDE2": uq_ztilde_coeffs(2),
        "UQ_ZEROS": {m: uq_zeros(q**m) for m in range(0, 7)},
        "UQ_ZEROS_OTHER": {"q^-2": uq_zeros(q**-2), "-q^3": uq_zeros(-(q**3)), "2": uq_zeros(2)},
        "UQ_CASIMIR": uq_casimir(),
        "WEYL_PRODUCTS": weyl_products(),
        "CLASSICAL_ROWS": {str(v): classical_limit_rows(v) for v in (sp.Rational(1, 2), 1, sp.Rational(3, 2), 2)},
        "KRON_DISPIN": kron([[1, 1], [1, 2]], [[1, 1], [1, 2]]),
        "KRON_DISPIN_D": kron([[1, 1], [0, 1]], [[1, 1], [0, 1]]),
    }
    print('"""Reference values generated by tools/oracles.py (sympy); do not edit by hand."""')
    print()
    for name, value in data.items():
        print(f"{name} = {pprint.pformat(value, width=100, sort_dicts=True)}")
        print()


if __name__ == "__main__":
    main()
