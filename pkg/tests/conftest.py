"""Shared fixtures and independent oracles (sympy, brute-force semigroup counts)."""

from math import gcd

import pytest
import sympy

from sympow.groebner import Ideal
from sympow.poly import Polynomial, Ring


def to_sympy(f: Polynomial, symbols):
    expr = sympy.Integer(0)
    for exp, c in f.as_dict().items():
        term = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "denominator") else sympy.Integer(c)
        for s, k in zip(symbols, exp):
            term *= s**k
        expr += term
    return expr


def sympy_reduced_gb(I: Ideal, order="grevlex"):
    """Reduced basis from sympy, each element scaled to a primitive integer polynomial."""
    syms = sympy.symbols(I.ring.var_names)
    G = sympy.groebner([to_sympy(g, syms) for g in I.generators], *syms, order=order)
    out = set()
    for g in G.exprs:
        p = sympy.Poly(g, *syms)
        _, prim = p.primitive()
        terms = {m: int(c) for m, c in prim.terms()}
        lead = prim.terms(order=order)[0][1]
        if lead < 0:
            terms = {m: -c for m, c in terms.items()}
        out.add(Polynomial(I.ring, terms))
    return out


def semigroup_members(gens, limit):
    ok = [False] * (limit + 1)
    ok[0] = True
    for m in range(1, limit + 1):
        ok[m] = any(g <= m and ok[m - g] for g in gens)
    return ok


def pseudo_frobenius_count(gens):
    """Number of x outside S with x + s in S for every nonzero s in S.

    For a monomial curve this is the Cohen-Macaulay type of its coordinate ring.
    """
    top = 4 * max(gens) ** 2
    ok = semigroup_members(gens, top + max(gens) + 1)
    conductor = max(i for i in range(top) if not ok[i]) + 1
    return sum(
        1
        for x in range(1, conductor)
        if not ok[x] and all(ok[x + g] for g in gens)
    )


def arith_grid(a_lo=4, a_hi=12, r_lo=1, r_hi=3):
    return [(a, r) for a in range(a_lo, a_hi + 1) for r in range(r_lo, r_hi + 1) if gcd(a, r) == 1]


@pytest.fixture
def ring4():
    return Ring(["x", "y", "z", "w"])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
