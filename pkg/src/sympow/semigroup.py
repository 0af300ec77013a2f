"""Numerical semigroups generated by the exponents of a monomial curve."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Sequence

from .errors import GcdNotOne, RedundantGenerator, ValidationError


def _reachable(gens: Sequence[int], limit: int) -> list[bool]:
    ok = [False] * (limit + 1)
    ok[0] = True
    for m in range(1, limit + 1):
        ok[m] = any(g <= m and ok[m - g] for g in gens)
    return ok


def is_member(gens: Sequence[int], m: int) -> bool:
    """True iff ``m`` is a non-negative integer combination of ``gens``."""
    if not gens:
        raise ValueError("need at least one generator")
    if m < 0:
        return False
    return _reachable(gens, m)[m]


def _decompose(gens: Sequence[int], m: int) -> list[int] | None:
    """Some multiset of ``gens`` summing to ``m``, or None."""
    prev: list[int | None] = [None] * (m + 1)
    ok = [False] * (m + 1)
    ok[0] = True
    for v in range(1, m + 1):
        for g in gens:
            if g <= v and ok[v - g]:
                ok[v] = True
                prev[v] = g
                break
    if not ok[m]:
        return None
    parts = []
    while m:
        parts.append(prev[m])
        m -= prev[m]
    return sorted(parts)


def frobenius(gens: Sequence[int]) -> int:
    """Largest integer outside the semigroup (``-1`` when the semigroup is N)."""
    g = reduce(gcd, gens)
    if g != 1:
        raise GcdNotOne(gens, g)
    lo = min(gens)
    if lo == 1:
        return -1
    # a run of min(gens) consecutive members means everything above is reachable
    ok = [True]
    run, m, last_gap = 0, 0, -1
    while run < lo:
        m += 1
        ok.append(any(x <= m and ok[m - x] for x in gens))
        if ok[m]:
            run += 1
        else:
            run, last_gap = 0, m
    return last_gap


@dataclass(frozen=True)
class ArithmeticCase:
    """Exponents (a, a+r, a+2r, a+3r) with a = 3k + residue."""

    a: int
    r: int
    k: int
    residue: int


@dataclass(frozen=True)
class CurveSpec:
    exponents: tuple[int, ...]
    arithmetic_case: ArithmeticCase | None = None
    morales_history: tuple[tuple[int, int], ...] = field(default=())

    @property
    def d(self) -> int:
        return len(self.exponents)

    @property
    def a1(self) -> int:
        return self.exponents[0]

    def with_history(self, step: tuple[int, int]) -> CurveSpec:
        return replace(self, morales_history=(*self.morales_history, step))

    def label(self) -> str:
        return ",".join(map(str, self.exponents))


def detect_arithmetic_case(exponents: Sequence[int]) -> ArithmeticCase | None:
    if len(exponents) != 4:
        return None
    a, b, c, e = exponents
    r = b - a
    if r <= 0 or c - b != r or e - c != r:
        return None
    return ArithmeticCase(a=a, r=r, k=a // 3, residue=a % 3)


def validate(exponents: Sequence[int]) -> CurveSpec:
    """Check gcd 1 and non-redundancy; detect the four-term arithmetic family."""
    exps = tuple(int(x) for x in exponents)
    if len(exps) < 2:
        raise ValidationError("need at least two exponents")
    if any(x <= 0 for x in exps):
        raise ValidationError(f"exponents must be positive: {list(exps)}")
    if any(b <= a for a, b in zip(exps, exps[1:])):
        raise ValidationError(f"exponents must be strictly increasing: {list(exps)}")
    g = reduce(gcd, exps)
    if g != 1:
        raise GcdNotOne(exps, g)
    for i, ai in enumerate(exps):
        others = exps[:i] + exps[i + 1:]
        parts = _decompose(others, ai)
        if parts is not None:
            raise RedundantGenerator(exps, i, parts)
    d = len(exps)
    if exps[0] < d:
        raise ValidationError(f"smallest exponent {exps[0]} is below the embedding dimension {d}")
    return CurveSpec(exps, detect_arithmetic_case(exps))


def arith_subseq(exponents: Sequence[int], length: int) -> tuple[tuple[int, ...], int] | None:
    """Lexicographically first index tuple of an arithmetic subsequence.

    Terms need not be consecutive in ``exponents``; the difference must be
    positive.  Returns ``(indices, difference)`` or None.
    """
    if length < 3:
        raise ValueError("length must be at least 3")
    exps = list(exponents)
    pos = {v: i for i, v in enumerate(exps)}
    best = None
    for i, j in combinations(range(len(exps)), 2):
        diff = exps[j] - exps[i]
        if diff <= 0:
            continue
        idx = [i, j]
        while len(idx) < length:
            nxt = pos.get(exps[idx[-1]] + diff)
            if nxt is None or nxt <= idx[-1]:
                break
            idx.append(nxt)
        if len(idx) == length:
            cand = tuple(idx)
            if best is None or cand < best[0]:
                best = (cand, diff)
    return best
