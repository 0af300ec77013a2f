"""Exact sparse multivariate polynomials over the rationals.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
rational coefficients, tied to a :class:`Ring` that fixes the variable names
and the positive grading used for homogeneity checks.  Term order only
matters when terms are listed or a leading term is requested, so orders are
separate :class:`MonomialOrder` values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence

from .errors import RingMismatch, ZeroPolynomialError

Exponent = tuple[int, ...]

INHOMOGENEOUS = "inhomogeneous"


def _as_coeff(c) -> int | Fraction:
    if isinstance(c, bool):
        raise TypeError("boolean is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficient must be an exact rational, got {type(c).__name__}")


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order described by a key: bigger key means bigger monomial.

    ``kind`` is one of ``grevlex``, ``lex``, ``revlex``, ``weighted`` and
    ``block``.  ``revlex`` is not a well-order and is only accepted as the
    tie-break of a ``weighted`` order.  ``perm`` lists variable positions from
    largest to smallest; ``None`` means declaration order.
    """

    kind: str
    weights: tuple[int, ...] | None = None
    tiebreak: MonomialOrder | None = None
    block: int = 0
    inner: tuple[MonomialOrder, MonomialOrder] | None = None
    perm: tuple[int, ...] | None = None

    def key_function(self, nvars: int) -> Callable[[Exponent], tuple]:
        return _KEYS.setdefault((self, nvars), _build_key(self, nvars))

    def key(self, exp: Exponent) -> tuple:
        return self.key_function(len(exp))(exp)

    def describe(self) -> str:
        if self.kind == "weighted":
            return f"weighted({','.join(map(str, self.weights))};{self.tiebreak.describe()})"
        if self.kind == "block":
            return f"block({self.block};{self.inner[0].describe()}|{self.inner[1].describe()})"
        if self.perm is not None:
            return f"{self.kind}[{','.join(map(str, self.perm))}]"
        return self.kind


_KEYS: dict = {}


def _build_key(order: MonomialOrder, n: int) -> Callable[[Exponent], tuple]:
    perm = order.perm if order.perm is not None else tuple(range(n))
    if len(perm) != n and order.kind in ("grevlex", "lex", "revlex"):
        raise ValueError(f"order permutation has length {len(perm)}, ring has {n} variables")
    rev = tuple(reversed(perm))
    if order.kind == "lex":
        if order.perm is None:
            return lambda e: e
        return lambda e: tuple([e[i] for i in perm])
    if order.kind == "revlex":
        return lambda e: tuple([-e[i] for i in rev])
    if order.kind == "grevlex":
        return lambda e: (sum(e), *[-e[i] for i in rev])
    if order.kind == "weighted":
        w = order.weights
        if len(w) != n:
            raise ValueError("weight vector length differs from variable count")
        tie = order.tiebreak.key_function(n)
        return lambda e: (sum([a * b for a, b in zip(w, e)]), *tie(e))
    if order.kind == "block":
        k = order.block
        first = order.inner[0].key_function(k)
        second = order.inner[1].key_function(n - k)
        return lambda e: (*first(e[:k]), *second(e[k:]))
    raise ValueError(f"unknown order kind {order.kind!r}")


def grevlex(perm: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder("grevlex", perm=None if perm is None else tuple(perm))


def lex(perm: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder("lex", perm=None if perm is None else tuple(perm))


def revlex(perm: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder("revlex", perm=None if perm is None else tuple(perm))


def weighted(weights: Sequence[int], tiebreak: MonomialOrder | None = None) -> MonomialOrder:
    """Order by weighted degree first, then by ``tiebreak`` (reverse lex by default).

    With the reverse-lex tie-break the last variable of the tie-break is the
    cheapest: for weighted-homogeneous ``f`` a power of it divides the
    leading term only if it divides every term.
    """
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")
    return MonomialOrder("weighted", weights=tuple(weights), tiebreak=tiebreak or revlex())


def block(k: int, first: MonomialOrder, second: MonomialOrder) -> MonomialOrder:
    """Elimination order: the first ``k`` variables dominate the rest."""
    return MonomialOrder("block", block=k, inner=(first, second))


def revlex_last(weights: Sequence[int], var: int) -> MonomialOrder:
    """Weighted reverse-lex order in which variable ``var`` is the smallest."""
    n = len(weights)
    perm = [i for i in range(n) if i != var] + [var]
    return weighted(weights, revlex(perm))


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class Ring:
    """Polynomial ring over Q with named variables and positive weights."""

    var_names: tuple[str, ...]
    weights: tuple[int, ...]

    def __init__(self, var_names: Iterable[str], weights: Iterable[int] | None = None):
        names = tuple(var_names)
        ws = tuple(weights) if weights is not None else (1,) * len(names)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be unique: {names}")
        if len(ws) != len(names):
            raise ValueError("need one weight per variable")
        if any(not isinstance(w, int) or w <= 0 for w in ws):
            raise ValueError(f"weights must be positive integers: {ws}")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise ValueError(f"bad variable name {name!r}")
        object.__setattr__(self, "var_names", names)
        object.__setattr__(self, "weights", ws)

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    @property
    def default_order(self) -> MonomialOrder:
        """Weighted reverse-lex; with unit weights this is plain grevlex."""
        if all(w == 1 for w in self.weights):
            return grevlex()
        return weighted(self.weights)

    def index(self, name: str) -> int:
        try:
            return self.var_names.index(name)
        except ValueError:
            raise KeyError(f"no variable {name!r} in ring {self.var_names}") from None

    def gen(self, i: int | str) -> Polynomial:
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exp: Sequence[int], coeff=1) -> Polynomial:
        return Polynomial(self, {tuple(exp): coeff})

    def weighted_degree_of(self, exp: Exponent) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))

    def extend(self, names: Sequence[str], weights: Sequence[int], front: bool = True) -> Ring:
        """A ring with extra variables (placed first by default, for elimination)."""
        if front:
            return Ring((*names, *self.var_names), (*weights, *self.weights))
        return Ring((*self.var_names, *names), (*self.weights, *weights))

    def with_weights(self, weights: Sequence[int]) -> Ring:
        return Ring(self.var_names, weights)

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(self, text)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable exact polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, object] | None = None):
        self.ring = ring
        clean: dict[Exponent, int | Fraction] = {}
        n = ring.nvars
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise ValueError(f"monomial {exp} has wrong length for {n} variables")
            if any(not isinstance(e, int) or e < 0 for e in exp):
                raise ValueError(f"exponents must be non-negative integers: {exp}")
            c = _as_coeff(c)
            if c:
                clean[exp] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> Polynomial:
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # -- inspection --------------------------------------------------------

    def as_dict(self) -> dict[Exponent, int | Fraction]:
        return dict(self._terms)

    def terms(self, order: MonomialOrder | None = None) -> list[tuple[int | Fraction, Exponent]]:
        """(coefficient, exponent) pairs sorted descending under ``order``."""
        key = (order or self.ring.default_order).key_function(self.ring.nvars)
        return [(self._terms[e], e) for e in sorted(self._terms, key=key, reverse=True)]

    def monomials(self) -> list[Exponent]:
        return list(self._terms)

    def coefficient(self, exp: Sequence[int]) -> int | Fraction:
        return self._terms.get(tuple(exp), 0)

    def leading_term(self, order: MonomialOrder | None = None) -> tuple[int | Fraction, Exponent]:
        if not self._terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        key = (order or self.ring.default_order).key_function(self.ring.nvars)
        e = max(self._terms, key=key)
        return self._terms[e], e

    def leading_monomial(self, order: MonomialOrder | None = None) -> Exponent:
        return self.leading_term(order)[1]

    def leading_coefficient(self, order: MonomialOrder | None = None):
        return self.leading_term(order)[0]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Standard total degree; -1 for zero."""
        return max((sum(e) for e in self._terms), default=-1)

    def ord(self) -> int:
        """m-adic order: the least total degree of a term."""
        if not self._terms:
            raise ZeroPolynomialError("ord of the zero polynomial is undefined")
        return min(sum(e) for e in self._terms)

    def weighted_degree(self) -> int | str:
        """Common weighted degree of all terms, or :data:`INHOMOGENEOUS`."""
        if not self._terms:
            raise ZeroPolynomialError("weighted degree of the zero polynomial is undefined")
        degs = {self.ring.weighted_degree_of(e) for e in self._terms}
        if len(degs) == 1:
            return degs.pop()
        return INHOMOGENEOUS

    def is_homogeneous(self) -> bool:
        return not self._terms or self.weighted_degree() != INHOMOGENEOUS

    def variables(self) -> set[int]:
        return {i for e in self._terms for i, k in enumerate(e) if k}

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: Polynomial) -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring.var_names} vs {other.ring.var_names}")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _as_coeff(s)
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int | Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.ring, {e: _as_coeff(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> Polynomial:
        c = _as_coeff(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: _as_coeff(v * c) for e, v in self._terms.items()})

    def shift(self, exp: Sequence[int]) -> Polynomial:
        """Multiply by the monomial with exponent ``exp``."""
        return Polynomial._raw(
            self.ring, {tuple([a + b for a, b in zip(e, exp)]): c for e, c in self._terms.items()}
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- transformations ---------------------------------------------------

    def primitive(self, order: MonomialOrder | None = None) -> Polynomial:
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self._terms:
            return self
        coeffs = [Fraction(c) for c in self._terms.values()]
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in coeffs), 1)
        nums = [int(c * den) for c in coeffs]
        g = reduce(gcd, nums)
        if self.leading_coefficient(order) < 0:
            g = -g
        return Polynomial._raw(
            self.ring, {e: int(Fraction(c) * den) // g for e, c in self._terms.items()}
        )

    def substitute_power(self, var_index: int, c: int) -> Polynomial:
        """Replace ``x_i`` by ``x_i**c``."""
        if not 0 <= var_index < self.ring.nvars:
            raise IndexError(f"variable index {var_index} out of range")
        if not isinstance(c, int) or c < 1:
            raise ValueError("power must be a positive integer")
        out = {}
        for e, coef in self._terms.items():
            e2 = list(e)
            e2[var_index] *= c
            out[tuple(e2)] = coef
        return Polynomial._raw(self.ring, out)

    def to_ring(self, ring: Ring, positions: Sequence[int] | None = None) -> Polynomial:
        """Re-express in ``ring``; variable i goes to position ``positions[i]``.

        Without ``positions`` variables are matched by name.
        """
        if positions is None:
            positions = [ring.index(name) for name in self.ring.var_names]
        out = {}
        for e, c in self._terms.items():
            e2 = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    e2[positions[i]] += k
            out[tuple(e2)] = c
        return Polynomial._raw(ring, out)

    def evaluate(self, values: Sequence) -> object:
        total = 0
        for e, c in self._terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = t * v**k
            total = total + t
        return total

    def divide_monomial(self, exp: Sequence[int]) -> Polynomial:
        out = {}
        for e, c in self._terms.items():
            e2 = tuple([a - b for a, b in zip(e, exp)])
            if min(e2, default=0) < 0:
                raise ValueError("monomial does not divide every term")
            out[e2] = c
        return Polynomial._raw(self.ring, out)

    # -- text ----------------------------------------------------------------

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def ord_m(f: Polynomial) -> int:
    return f.ord()


def weighted_degree(f: Polynomial) -> int | str:
    return f.weighted_degree()


def substitute_power(f: Polynomial, var_index: int, c: int) -> Polynomial:
    return f.substitute_power(var_index, c)


def poly_arith(op: str, p: Polynomial, q: Polynomial | None = None) -> Polynomial:
    if op == "neg":
        return -p
    if q is None:
        raise ValueError(f"{op} needs two operands")
    p._check(q)
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "sub":
        return p - q
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# textual format: coef*x1^e1*...*xd^ed terms joined by + / -


def _format_coeff(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(f: Polynomial, order: MonomialOrder | None = None) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for i, (c, e) in enumerate(f.terms(order)):
        neg = c < 0
        a = -c if neg else c
        factors = []
        for name, k in zip(f.ring.var_names, e):
            if k == 1:
                factors.append(name)
            elif k:
                factors.append(f"{name}^{k}")
        if not factors:
            body = _format_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(a), *factors])
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_COEFF = re.compile(r"^\d+(?:/\d+)?$")


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    """Parse the textual format produced by :func:`format_polynomial`."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    if s[0] not in "+-":
        s = "+" + s
    pieces = _TERM_SPLIT.split(s)
    # split yields ['', sign, term, sign, term, ...]
    if pieces[0].strip():
        raise ValueError(f"cannot parse polynomial {text!r}")
    out: dict[Exponent, int | Fraction] = {}
    for sign, body in zip(pieces[1::2], pieces[2::2]):
        body = body.strip()
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff: int | Fraction = 1
        exp = [0] * ring.nvars
        for j, factor in enumerate(body.split("*")):
            factor = factor.strip()
            if j == 0 and _COEFF.match(factor):
                coeff = _as_coeff(Fraction(factor))
                continue
            name, _, power = factor.partition("^")
            try:
                idx = ring.index(name.strip())
            except KeyError:
                raise ValueError(f"unknown factor {factor!r} in {text!r}") from None
            k = int(power) if power else 1
            if k < 0:
                raise ValueError("negative exponent")
            exp[idx] += k
        if sign == "-":
            coeff = -coeff
        e = tuple(exp)
        out[e] = out.get(e, 0) + coeff
    return Polynomial(ring, out)
