"""Groebner bases and the ideal calculus built on them.

The engine works on integer-coefficient dictionaries ``{exponent: int}``
(fraction-free reduction, content removed after every completed reduction)
and converts to :class:`~sympow.poly.Polynomial` only at the boundary.
Pair selection follows the sugar strategy with the ring weights, which for
weighted-homogeneous input is plain degree-by-degree completion.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement
from math import gcd
from typing import Iterable, Sequence

from .errors import InhomogeneousIdeal, NotZeroDimensional, RingMismatch, ZeroPolynomialError
from .poly import (
    INHOMOGENEOUS,
    Exponent,
    MonomialOrder,
    Polynomial,
    Ring,
    block,
    revlex_last,
    weighted,
)

IntPoly = dict  # exponent tuple -> int


# ---------------------------------------------------------------------------
# low-level kernels


class _Keys:
    """Memoised order keys for one (order, nvars) pair."""

    __slots__ = ("f", "memo")

    def __init__(self, order: MonomialOrder, nvars: int):
        self.f = order.key_function(nvars)
        self.memo: dict = {}

    def __call__(self, e):
        try:
            return self.memo[e]
        except KeyError:
            k = self.memo[e] = self.f(e)
            return k


_KEY_CACHE: dict = {}
_KEY_LOCK = threading.Lock()


def _keys(order: MonomialOrder, nvars: int) -> _Keys:
    with _KEY_LOCK:
        k = _KEY_CACHE.get((order, nvars))
        if k is None:
            k = _KEY_CACHE[(order, nvars)] = _Keys(order, nvars)
        return k


def _to_int(f: Polynomial) -> IntPoly:
    coeffs = [Fraction(c) for c in f._terms.values()]
    den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in coeffs), 1)
    out = {e: int(Fraction(c) * den) for e, c in f._terms.items()}
    g = reduce(gcd, out.values(), 0)
    if g > 1:
        out = {e: c // g for e, c in out.items()}
    return out


def _primitive(f: IntPoly, lead_coeff: int) -> IntPoly:
    g = reduce(gcd, f.values(), 0)
    if lead_coeff < 0:
        g = -g
    if g == 1:
        return f
    return {e: c // g for e, c in f.items()}


def _divides(a: Exponent, b: Exponent) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _coprime(a: Exponent, b: Exponent) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _support(e: Exponent) -> int:
    m = 0
    for i, x in enumerate(e):
        if x:
            m |= 1 << i
    return m


class _Elem:
    """A basis element: leading monomial, leading coefficient, polynomial."""

    __slots__ = ("lt", "lc", "poly", "sugar", "mask")

    def __init__(self, poly: IntPoly, key: _Keys, sugar: int):
        self.lt = max(poly, key=key)
        self.lc = poly[self.lt]
        self.poly = poly
        self.sugar = sugar
        self.mask = _support(self.lt)


def _reduce(f: IntPoly, basis: Sequence[_Elem], key: _Keys, full: bool = True):
    """Fraction-free division of ``f`` by ``basis``.

    Returns ``(r, s)`` with ``s*f - r`` in the ideal of ``basis`` and no
    term of ``r`` divisible by a leading monomial (only the leading term
    of ``r`` when ``full`` is false).
    """
    f = dict(f)
    rem: IntPoly = {}
    scale = 1
    while f:
        e = max(f, key=key)
        c = f[e]
        emask = _support(e)
        for g in basis:
            if g.mask & ~emask or not _divides(g.lt, e):
                continue
            m = tuple([b - a for a, b in zip(g.lt, e)])
            gg = gcd(g.lc, c)
            mf, mg = g.lc // gg, c // gg
            if mf < 0:
                mf, mg = -mf, -mg
            if mf != 1:
                for k in f:
                    f[k] *= mf
                for k in rem:
                    rem[k] *= mf
                scale *= mf
            for ge, gcoef in g.poly.items():
                t = tuple([a + b for a, b in zip(ge, m)])
                v = f.get(t, 0) - mg * gcoef
                if v:
                    f[t] = v
                else:
                    del f[t]
            break
        else:
            if not full:
                rem.update(f)
                return rem, scale
            rem[e] = f.pop(e)
        if len(rem) + len(f) > 8 and scale != 1:
            # keep coefficients small: divide out common content
            g = reduce(gcd, f.values(), reduce(gcd, rem.values(), 0))
            g = gcd(g, scale)
            if g > 1:
                f = {k: v // g for k, v in f.items()}
                rem = {k: v // g for k, v in rem.items()}
                scale //= g
    return rem, scale


def _spoly(g1: _Elem, g2: _Elem) -> IntPoly:
    lcm = _lcm(g1.lt, g2.lt)
    m1 = tuple([a - b for a, b in zip(lcm, g1.lt)])
    m2 = tuple([a - b for a, b in zip(lcm, g2.lt)])
    gg = gcd(g1.lc, g2.lc)
    c1, c2 = g2.lc // gg, g1.lc // gg
    out: IntPoly = {}
    for e, c in g1.poly.items():
        out[tuple([a + b for a, b in zip(e, m1)])] = c * c1
    for e, c in g2.poly.items():
        t = tuple([a + b for a, b in zip(e, m2)])
        v = out.get(t, 0) - c * c2
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _wdeg(e: Exponent, weights: Sequence[int]) -> int:
    return sum([a * b for a, b in zip(weights, e)])


def _sugar(f: IntPoly, weights) -> int:
    return max(_wdeg(e, weights) for e in f)


def buchberger(polys: Iterable[IntPoly], order: MonomialOrder, weights: Sequence[int]) -> list[IntPoly]:
    """Reduced Groebner basis of integer polynomials (primitive, positive lead)."""
    n = len(weights)
    key = _keys(order, n)
    elems: list[_Elem] = []
    active: list[int] = []
    pairs: list[tuple[int, int]] = []

    def update(h: int) -> None:
        nonlocal active, pairs
        H = elems[h]
        lcms = {g: _lcm(H.lt, elems[g].lt) for g in active}
        C = list(active)
        D: list[int] = []
        while C:
            g1 = C.pop(0)
            l1 = lcms[g1]
            if _coprime(H.lt, elems[g1].lt) or (
                not any(_divides(lcms[g2], l1) for g2 in C)
                and not any(_divides(lcms[g2], l1) for g2 in D)
            ):
                D.append(g1)
        E = [g for g in D if not _coprime(H.lt, elems[g].lt)]
        kept = []
        for i, j in pairs:
            lij = _lcm(elems[i].lt, elems[j].lt)
            if (
                _divides(H.lt, lij)
                and _lcm(elems[i].lt, H.lt) != lij
                and _lcm(H.lt, elems[j].lt) != lij
            ):
                continue
            kept.append((i, j))
        pairs = kept + [(g, h) for g in E]
        active = [g for g in active if not _divides(H.lt, elems[g].lt)] + [h]

    def add(poly: IntPoly, sugar: int) -> None:
        el = _Elem(poly, key, sugar)
        poly = _primitive(poly, el.lc)
        el = _Elem(poly, key, sugar)
        elems.append(el)
        update(len(elems) - 1)

    inputs = [p for p in polys if p]
    inputs.sort(key=lambda p: (_sugar(p, weights), key(max(p, key=key))))
    for p in inputs:
        basis = [elems[g] for g in active]
        r, _ = _reduce(p, basis, key)
        if r:
            add(r, _sugar(p, weights))

    def pair_key(pr):
        i, j = pr
        a, b = elems[i], elems[j]
        lcm = _lcm(a.lt, b.lt)
        s = max(
            a.sugar + _wdeg(lcm, weights) - _wdeg(a.lt, weights),
            b.sugar + _wdeg(lcm, weights) - _wdeg(b.lt, weights),
        )
        return (s, key(lcm), i, j)

    while pairs:
        best = min(pairs, key=pair_key)
        pairs.remove(best)
        i, j = best
        s = pair_key(best)[0]
        sp = _spoly(elems[i], elems[j])
        if not sp:
            continue
        r, _ = _reduce(sp, [elems[g] for g in active], key)
        if r:
            add(r, s)

    return interreduce([elems[g].poly for g in active], order, n)


def interreduce(polys: Sequence[IntPoly], order: MonomialOrder, nvars: int) -> list[IntPoly]:
    """Turn a Groebner basis into the reduced one, sorted by leading monomial."""
    key = _keys(order, nvars)
    elems = [_Elem(p, key, 0) for p in polys if p]
    elems.sort(key=lambda el: (key(el.lt), len(el.poly)))
    minimal: list[_Elem] = []
    for i, el in enumerate(elems):
        if any(_divides(o.lt, el.lt) for o in elems[:i]):
            continue
        minimal.append(el)
    out = []
    for el in minimal:
        others = [o for o in minimal if o is not el]
        tail = dict(el.poly)
        lc = tail.pop(el.lt)
        r, s = _reduce(tail, others, key)
        poly = {e: c for e, c in r.items()}
        poly[el.lt] = lc * s
        out.append(_primitive(poly, lc * s))
    out.sort(key=lambda p: key(max(p, key=key)), reverse=True)
    return out


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Ideal given by generators, with reduced Groebner bases cached per order.

    The cache is write-once per order and guarded by a lock, so concurrent
    readers asking for the same order see a single computation's result.
    """

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatch(f"generator over {g.ring.var_names}, ideal over {ring.var_names}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._gb: dict[MonomialOrder, list[IntPoly]] = {}
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        return f"Ideal({', '.join(map(str, self.generators))})"

    # -- bases ---------------------------------------------------------------

    def _seed(self, order: MonomialOrder, basis: list[IntPoly]) -> None:
        with self._lock:
            self._gb.setdefault(order, basis)

    def _int_gb(self, order: MonomialOrder | None = None) -> list[IntPoly]:
        order = order or self.ring.default_order
        with self._lock:
            basis = self._gb.get(order)
            if basis is None:
                basis = buchberger([_to_int(g) for g in self.generators], order, self.ring.weights)
                self._gb[order] = basis
            return basis

    def gb(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        return [Polynomial._raw(self.ring, dict(p)) for p in self._int_gb(order)]

    def _elems(self, order: MonomialOrder) -> list[_Elem]:
        key = _keys(order, self.ring.nvars)
        return [_Elem(p, key, 0) for p in self._int_gb(order)]

    def leading_monomials(self, order: MonomialOrder | None = None) -> list[Exponent]:
        order = order or self.ring.default_order
        key = _keys(order, self.ring.nvars)
        return [max(p, key=key) for p in self._int_gb(order)]

    # -- predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.generators

    def is_homogeneous(self) -> bool:
        return all(g.weighted_degree() != INHOMOGENEOUS for g in self.generators)

    def contains(self, f: Polynomial, order: MonomialOrder | None = None) -> bool:
        return member(self, f, order)

    __contains__ = contains

    def __mul__(self, other: Ideal) -> Ideal:
        _same_ring(self, other)
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def __add__(self, other: Ideal) -> Ideal:
        _same_ring(self, other)
        return Ideal(self.ring, self.generators + other.generators)

    def __pow__(self, n: int) -> Ideal:
        return ideal_power(self, n)


def _same_ring(I: Ideal, J: Ideal) -> None:
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring.var_names} vs {J.ring.var_names}")


def reduced_gb(I: Ideal, order: MonomialOrder | None = None) -> list[Polynomial]:
    return I.gb(order)


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of ``f`` on division by ``G`` (exact over Q)."""
    ring = f.ring
    order = order or ring.default_order
    key = _keys(order, ring.nvars)
    for g in G:
        if g.ring != ring:
            raise RingMismatch("divisor over a different ring")
    if not f:
        return f
    basis = [_Elem(_to_int(g), key, 0) for g in G if g]
    # keep the rational content of f so the result is the true remainder
    content = Fraction(0)
    fi = _to_int(f)
    e0 = next(iter(fi))
    content = Fraction(f._terms[e0]) / fi[e0]
    r, s = _reduce(fi, basis, key)
    factor = content / s
    return Polynomial(ring, {e: c * factor for e, c in r.items()})


def member(I: Ideal, f: Polynomial, order: MonomialOrder | None = None) -> bool:
    if f.ring != I.ring:
        raise RingMismatch("polynomial and ideal live in different rings")
    if not f:
        return True
    order = order or I.ring.default_order
    r, _ = _reduce(_to_int(f), I._elems(order), _keys(order, I.ring.nvars))
    return not r


def ideal_equal(I: Ideal, J: Ideal, order: MonomialOrder | None = None) -> bool:
    _same_ring(I, J)
    return I._int_gb(order) == J._int_gb(order)


def is_subset(I: Ideal, J: Ideal, order: MonomialOrder | None = None) -> bool:
    """I contained in J."""
    _same_ring(I, J)
    order = order or J.ring.default_order
    key = _keys(order, J.ring.nvars)
    basis = J._elems(order)
    return all(not _reduce(_to_int(g), basis, key)[0] for g in I.generators)


def ideal_power(I: Ideal, n: int) -> Ideal:
    if not isinstance(n, int) or n < 1:
        raise ValueError("power must be a positive integer")
    if n == 1:
        return I
    prods = {}
    for combo in combinations_with_replacement(range(len(I.generators)), n):
        p = I.generators[combo[0]]
        for i in combo[1:]:
            p = p * I.generators[i]
        p = p.primitive()
        prods.setdefault(p, None)
    return Ideal(I.ring, list(prods))


def power_of_maximal(ring: Ring, n: int) -> Ideal:
    """m^n for m the ideal of all variables."""
    return ideal_power(Ideal(ring, ring.gens()), n)


# -- elimination, intersection, colon, saturation ------------------------------


def _elimination_order(ring: Ring, k: int) -> MonomialOrder:
    sub = Ring(ring.var_names[k:], ring.weights[k:])
    return block(k, weighted(ring.weights[:k]), sub.default_order)


def eliminate(I: Ideal, variables: Sequence[int | str]) -> Ideal:
    """I intersected with the subring of the remaining variables.

    The result lives in the ring without ``variables``; its generators are
    the basis elements free of them, so they form a Groebner basis there.
    """
    ring = I.ring
    idx = sorted({ring.index(v) if isinstance(v, str) else v for v in variables})
    rest = [i for i in range(ring.nvars) if i not in idx]
    perm = idx + rest
    work = Ring([ring.var_names[i] for i in perm], [ring.weights[i] for i in perm])
    pos = {old: new for new, old in enumerate(perm)}
    gens = [g.to_ring(work, [pos[i] for i in range(ring.nvars)]) for g in I.generators]
    order = _elimination_order(work, len(idx))
    basis = buchberger([_to_int(g) for g in gens], order, work.weights)
    k = len(idx)
    sub = Ring(work.var_names[k:], work.weights[k:])
    kept = [
        Polynomial._raw(sub, {e[k:]: c for e, c in p.items()})
        for p in basis
        if all(not any(e[:k]) for e in p)
    ]
    J = Ideal(sub, kept)
    # elements free of the block form a reduced basis for the inner order
    J._seed(sub.default_order, interreduce([_to_int(p) for p in J.generators], sub.default_order, sub.nvars))
    return J


def _fresh_name(ring: Ring, base: str) -> str:
    name = base
    i = 0
    while name in ring.var_names:
        i += 1
        name = f"{base}{i}"
    return name


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via t*I + (1 - t)*J, eliminating t."""
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    t = _fresh_name(ring, "t")
    ext = ring.extend([t], [1])
    T = ext.gen(0)
    lift = list(range(1, ext.nvars))
    gens = [T * f.to_ring(ext, lift) for f in I.generators]
    gens += [(1 - T) * g.to_ring(ext, lift) for g in J.generators]
    K = eliminate(Ideal(ext, gens), [0])
    return Ideal(ring, [g.to_ring(ring) for g in K.generators])


def divide_exact(g: Polynomial, f: Polynomial) -> Polynomial:
    """The quotient g/f; raises ValueError unless f divides g."""
    if not f:
        raise ZeroPolynomialError("division by zero polynomial")
    order = g.ring.default_order
    lc_f, lt_f = f.leading_term(order)
    q = g.ring.zero()
    r = g
    while r:
        c, e = r.leading_term(order)
        if not _divides(lt_f, e):
            raise ValueError(f"{f} does not divide {g}")
        m = tuple(a - b for a, b in zip(e, lt_f))
        t = g.ring.monomial(m, Fraction(c) / Fraction(lc_f))
        q = q + t
        r = r - t * f
    return q


def _single_variable(f: Polynomial) -> int | None:
    if len(f) != 1:
        return None
    (e,) = f.monomials()
    if sum(e) == 1:
        return e.index(1)
    return None


def _monomial(f: Polynomial) -> Exponent | None:
    if len(f) != 1:
        return None
    return f.monomials()[0]


def _colon_variable(I: Ideal, var: int, times: int | None = 1):
    """(I : x_var^times) for weighted-homogeneous I; ``times=None`` saturates.

    In a weighted reverse-lex order with ``x_var`` smallest, a power of
    ``x_var`` divides the leading term of a weighted-homogeneous polynomial
    only if it divides every term, so dividing the basis elements gives a
    basis of the colon ideal.  Returns (ideal, largest power removed).
    """
    ring = I.ring
    order = revlex_last(ring.weights, var)
    key = _keys(order, ring.nvars)
    out = []
    removed = 0
    for p in I._int_gb(order):
        lt = max(p, key=key)
        k = lt[var] if times is None else min(times, lt[var])
        if k:
            removed = max(removed, k)
            p = {e[:var] + (e[var] - k,) + e[var + 1:]: c for e, c in p.items()}
        out.append(p)
    basis = interreduce(out, order, ring.nvars)
    J = Ideal(ring, [Polynomial._raw(ring, dict(p)) for p in basis])
    J._seed(order, basis)
    return J, removed


def _saturate_variable(I: Ideal, var: int) -> tuple[Ideal, int]:
    order = revlex_last(I.ring.weights, var)
    J, top = _colon_variable(I, var, None)
    prev = I._int_gb(order)
    for j in range(1, top + 1):
        cur = _colon_variable(I, var, j)[0]._int_gb(order)
        if cur == prev:
            return J, j - 1
        prev = cur
    return J, top


def colon_poly(I: Ideal, f: Polynomial) -> Ideal:
    """{g : g*f in I}."""
    if f.ring != I.ring:
        raise RingMismatch("polynomial and ideal live in different rings")
    if not f:
        raise ZeroPolynomialError("colon by the zero polynomial")
    mono = _monomial(f)
    if mono is not None and I.is_homogeneous():
        J = I
        for var, k in enumerate(mono):
            if k:
                J, _ = _colon_variable(J, var, k)
        return J
    return colon_general(I, f)


def colon_general(I: Ideal, f: Polynomial) -> Ideal:
    """Colon through (I ∩ (f)) / f; valid for any nonzero f."""
    K = intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [divide_exact(g, f) for g in K.generators])


def saturate_poly(I: Ideal, f: Polynomial) -> tuple[Ideal, int]:
    """(I : f^∞, number of strict colon steps before the chain stabilises)."""
    if f.ring != I.ring:
        raise RingMismatch("polynomial and ideal live in different rings")
    if not f:
        raise ZeroPolynomialError("saturation by the zero polynomial")
    var = _single_variable(f)
    if var is not None and I.is_homogeneous():
        return _saturate_variable(I, var)
    steps = 0
    cur = I
    while True:
        nxt = colon_poly(cur, f)
        if ideal_equal(nxt, cur):
            return cur, steps
        cur = nxt
        steps += 1


# -- Artinian quotients --------------------------------------------------------


def std_monomials(I: Ideal, order: MonomialOrder | None = None) -> tuple[list[Exponent], int]:
    """Monomials outside the leading-term ideal, and their count λ(R/I)."""
    n = I.ring.nvars
    lts = I.leading_monomials(order)
    for i in range(n):
        if not any(lt[i] > 0 and sum(lt) == lt[i] for lt in lts):
            raise NotZeroDimensional(
                f"no pure power of {I.ring.var_names[i]} among the leading monomials"
            )
    seen = {(0,) * n}
    if any(_divides(lt, (0,) * n) for lt in lts):
        return [], 0
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(n):
                e2 = e[:i] + (e[i] + 1,) + e[i + 1:]
                if e2 in seen or any(_divides(lt, e2) for lt in lts):
                    continue
                seen.add(e2)
                nxt.append(e2)
        frontier = nxt
    key = _keys(order or I.ring.default_order, n)
    basis = sorted(seen, key=key)
    return basis, len(basis)


@dataclass
class ArtinianQuotient:
    """R/I for zero-dimensional I: standard-monomial basis and multiplication maps.

    ``mult_tables[i][r][c]`` is the coefficient of basis monomial ``r`` in
    the normal form of ``x_i * basis[c]``.
    """

    ideal: Ideal
    basis: list[Exponent]
    mult_tables: list[list[list[Fraction]]]

    @classmethod
    def of(cls, I: Ideal, order: MonomialOrder | None = None) -> ArtinianQuotient:
        order = order or I.ring.default_order
        basis, _ = std_monomials(I, order)
        pos = {e: i for i, e in enumerate(basis)}
        key = _keys(order, I.ring.nvars)
        elems = I._elems(order)
        n = len(basis)
        tables = []
        for var in range(I.ring.nvars):
            mat = [[Fraction(0)] * n for _ in range(n)]
            for col, b in enumerate(basis):
                e = b[:var] + (b[var] + 1,) + b[var + 1:]
                r, s = _reduce({e: 1}, elems, key)
                for t, c in r.items():
                    mat[pos[t]][col] = Fraction(c, s)
            tables.append(mat)
        return cls(I, basis, tables)

    @property
    def length(self) -> int:
        return len(self.basis)


def rank(rows: list[list[Fraction]]) -> int:
    """Exact rank by Gaussian elimination."""
    m = [list(r) for r in rows if any(r)]
    rk = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk][c]
        for i in range(rk + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


def socle_type(Q: ArtinianQuotient) -> int:
    """dim of {b : x_i b = 0 for all i}, the common kernel of the multiplication maps."""
    n = Q.length
    if n == 0:
        return 0
    stacked = [row for mat in Q.mult_tables for row in mat]
    return n - rank(stacked)


# -- minimal generators ---------------------------------------------------------


def min_generators(I: Ideal) -> tuple[list[Polynomial], int]:
    """Minimal homogeneous generators by increasing weighted degree (graded Nakayama)."""
    if not I.is_homogeneous():
        raise InhomogeneousIdeal("minimal generators need a weighted-homogeneous ideal")
    order = I.ring.default_order
    key = _keys(order, I.ring.nvars)
    cands = I.gb(order)
    cands.sort(key=lambda g: (g.weighted_degree(), tuple(-x for x in key(g.leading_monomial(order)))))
    kept: list[Polynomial] = []
    for g in cands:
        if kept and member(Ideal(I.ring, kept), g):
            continue
        kept.append(g)
    return kept, len(kept)
