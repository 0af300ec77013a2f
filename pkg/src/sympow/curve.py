"""Defining ideals of monomial curves and the fixed-shape witness matrices.

Variables are named x, y, z, w in embedding dimension 4 and x1..xd otherwise;
variable i carries weight a_i so that every ideal here is weighted-homogeneous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Sequence

from .errors import (
    GcdViolation,
    InvalidCase,
    NotArithmetic,
    RedundancyAfterTransform,
    ValidationError,
    WrongResidue,
)
from .groebner import Ideal, eliminate
from .poly import Polynomial, Ring
from .semigroup import CurveSpec, _decompose, validate

Matrix = tuple[tuple[Polynomial, ...], ...]


def variable_names(d: int) -> tuple[str, ...]:
    if d == 4:
        return ("x", "y", "z", "w")
    return tuple(f"x{i}" for i in range(1, d + 1))


def curve_ring(exponents: Sequence[int]) -> Ring:
    return Ring(variable_names(len(exponents)), exponents)


def _as_spec(spec) -> CurveSpec:
    return spec if isinstance(spec, CurveSpec) else validate(spec)


@lru_cache(maxsize=256)
def _toric(exponents: tuple[int, ...]) -> Ideal:
    ext = curve_ring(exponents).extend(["t"], [1])
    t, *xs = ext.gens()
    return eliminate(Ideal(ext, [x - t**a for x, a in zip(xs, exponents)]), [0])


def toric_ideal(spec) -> Ideal:
    """Kernel of x_i -> t^{a_i}, by eliminating t from (x_i - t^{a_i}).

    Ideals are shared per exponent tuple so their cached bases are reused.
    """
    return _toric(_as_spec(spec).exponents)


def _check_arithmetic(a: int, r: int) -> tuple[int, int]:
    if a < 4 or r < 1:
        raise InvalidCase(f"need a >= 4 and r >= 1, got a={a}, r={r}")
    if gcd(a, r) != 1:
        raise InvalidCase(f"gcd(a, r) = gcd({a}, {r}) = {gcd(a, r)}, not 1")
    exps = (a, a + r, a + 2 * r, a + 3 * r)
    for i, v in enumerate(exps):
        if _decompose(exps[:i] + exps[i + 1:], v) is not None:
            raise InvalidCase(f"exponent {v} is redundant in {exps}")
    k, residue = divmod(a, 3)
    if residue == 0 and k < 2:
        raise InvalidCase("a = 3k needs k >= 2")
    return k, residue


def arithmetic_generators(a: int, r: int) -> list[Polynomial]:
    """Closed-form minimal generators of the ideal of (a, a+r, a+2r, a+3r)."""
    k, residue = _check_arithmetic(a, r)
    ring = curve_ring((a, a + r, a + 2 * r, a + 3 * r))
    x, y, z, w = ring.gens()
    gens = [z**2 - y * w, y * z - x * w, y**2 - x * z]
    if residue == 0:
        gens += [x ** (k + r) - w**k]
    elif residue == 1:
        gens += [
            x ** (k + r) * z - w ** (k + 1),
            x ** (k + r) * y - z * w**k,
            x ** (k + r + 1) - y * w**k,
        ]
    else:
        gens += [x ** (k + r + 1) - z * w**k, x ** (k + r) * y - w ** (k + 1)]
    return gens


# ---------------------------------------------------------------------------
# witness matrices


def determinant_adjugate(M: Sequence[Sequence[Polynomial]]) -> tuple[Polynomial, Matrix]:
    """Cofactor determinant and adjugate of a 3x3 polynomial matrix."""
    if len(M) != 3 or any(len(row) != 3 for row in M):
        raise ValueError("determinant_adjugate expects a 3x3 matrix")

    def cof(i, j):
        r = [a for a in range(3) if a != i]
        c = [b for b in range(3) if b != j]
        minor = M[r[0]][c[0]] * M[r[1]][c[1]] - M[r[0]][c[1]] * M[r[1]][c[0]]
        return minor if (i + j) % 2 == 0 else -minor

    C = [[cof(i, j) for j in range(3)] for i in range(3)]
    det = M[0][0] * C[0][0] + M[0][1] * C[0][1] + M[0][2] * C[0][2]
    adj = tuple(tuple(C[j][i] for j in range(3)) for i in range(3))
    return det, adj


def matmul(A, B) -> Matrix:
    n, m, p = len(A), len(B), len(B[0])
    ring = A[0][0].ring
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(m)), ring.zero()) for j in range(p))
        for i in range(n)
    )


def minors2(M: Sequence[Sequence[Polynomial]]) -> list[Polynomial]:
    """All 2x2 minors."""
    rows, cols = len(M), len(M[0])
    out = []
    for r1, r2 in combinations(range(rows), 2):
        for c1, c2 in combinations(range(cols), 2):
            out.append(M[r1][c1] * M[r2][c2] - M[r1][c2] * M[r2][c1])
    return out


def pfaffian4(m: Sequence[Sequence[Polynomial]], idx: Sequence[int] = (0, 1, 2, 3)) -> Polynomial:
    """Pfaffian m12*m34 - m13*m24 + m14*m23 of the 4x4 block on ``idx``."""
    i, j, k, l = idx
    return m[i][j] * m[k][l] - m[i][k] * m[j][l] + m[i][l] * m[j][k]


@dataclass
class WitnessMatrix:
    """One of the fixed witness shapes together with its derived invariants.

    ``kind`` is ``case3k``, ``case3k1``, ``hankel5`` or ``pfaffian5x5``.  The
    3x3 kinds carry ``determinant`` and ``adjugate``; the skew kind carries
    the five 4x4 sub-Pfaffians, the i-th obtained by deleting row/column i.
    """

    kind: str
    ring: Ring
    entries: Matrix
    determinant: Polynomial | None = None
    adjugate: Matrix | None = None
    pfaffians: tuple[Polynomial, ...] = ()
    variables: tuple[int, ...] = ()
    difference: int | None = None
    params: dict = field(default_factory=dict)

    @property
    def exponents(self) -> tuple[int, ...]:
        return self.ring.weights

    def is_skew(self) -> bool:
        n = len(self.entries)
        return all(
            self.entries[i][j] == -self.entries[j][i] for i in range(n) for j in range(n)
        )


def _three_by_three(kind, ring, rows, **extra) -> WitnessMatrix:
    entries = tuple(tuple(r) for r in rows)
    det, adj = determinant_adjugate(entries)
    return WitnessMatrix(kind, ring, entries, det, adj, **extra)


def witness_matrix(a: int, r: int) -> WitnessMatrix:
    """The 3x3 matrix whose determinant lies in P^(2) but not P^2 (a = 3k, 3k+1)."""
    k, residue = _check_arithmetic(a, r)
    if residue == 2:
        raise WrongResidue(f"a = {a} ≡ 2 mod 3: Gorenstein case, use the Pfaffian system")
    ring = curve_ring((a, a + r, a + 2 * r, a + 3 * r))
    x, y, z, w = ring.gens()
    if residue == 0:
        third = (z * w ** (k - 1), x ** (k + r), y * x ** (k + r - 1))
        kind = "case3k"
    else:
        third = (z * w ** (k - 1), w**k, x ** (k + r))
        kind = "case3k1"
    return _three_by_three(
        kind, ring, [(x, y, z), (y, z, w), third], params={"a": a, "r": r, "k": k}
    )


def hankel_matrix(spec, indices: Sequence[int]) -> WitnessMatrix:
    """3x3 Hankel matrix in the variables of a 5-term arithmetic subsequence.

    ``spec`` may be a :class:`CurveSpec` or a bare exponent list; only the
    progression is checked here.
    """
    exps = tuple(spec.exponents if isinstance(spec, CurveSpec) else spec)
    idx = tuple(indices)
    if len(idx) != 5 or len(set(idx)) != 5 or any(not 0 <= i < len(exps) for i in idx):
        raise NotArithmetic(f"need five distinct indices into {list(exps)}, got {list(idx)}")
    vals = [exps[i] for i in idx]
    diff = vals[1] - vals[0]
    if diff == 0 or any(b - a != diff for a, b in zip(vals, vals[1:])):
        raise NotArithmetic(f"{vals} is not an arithmetic progression")
    ring = curve_ring(exps)
    v = [ring.gen(i) for i in idx]
    rows = [(v[0], v[1], v[2]), (v[1], v[2], v[3]), (v[2], v[3], v[4])]
    return _three_by_three("hankel5", ring, rows, variables=idx, difference=diff)


def pfaffian_system(a: int, r: int) -> WitnessMatrix:
    """The 5x5 skew matrix whose 4x4 Pfaffians generate P when a = 3k+2."""
    k, residue = _check_arithmetic(a, r)
    if residue != 2:
        raise WrongResidue(f"a = {a} ≡ {residue} mod 3: no Pfaffian presentation, use --kind 3k/3k1")
    ring = curve_ring((a, a + r, a + 2 * r, a + 3 * r))
    x, y, z, w = ring.gens()
    O = ring.zero()
    wk, xk = w**k, x ** (k + r)
    rows = (
        (O, -wk, O, x, y),
        (wk, O, xk, y, z),
        (O, -xk, O, z, w),
        (-x, -y, -z, O, O),
        (-y, -z, -w, O, O),
    )
    pfs = []
    for drop in range(5):
        keep = [i for i in range(5) if i != drop]
        pfs.append(pfaffian4(rows, keep))
    return WitnessMatrix(
        "pfaffian5x5", ring, rows, pfaffians=tuple(pfs), params={"a": a, "r": r, "k": k}
    )


# ---------------------------------------------------------------------------
# Morales modification


@dataclass(frozen=True)
class MoralesTransform:
    """x_j -> x_j^c with every other exponent multiplied by c.

    ``positions[i]`` is where old variable i sits in the re-sorted target.
    ``extension`` flags j != 0, which goes beyond the first-variable case.
    """

    source: CurveSpec
    target: CurveSpec
    index: int
    c: int
    positions: tuple[int, ...]

    @property
    def extension(self) -> bool:
        return self.index != 0

    @property
    def source_ring(self) -> Ring:
        return curve_ring(self.source.exponents)

    @property
    def target_ring(self) -> Ring:
        return curve_ring(self.target.exponents)

    def __call__(self, f: Polynomial) -> Polynomial:
        return f.substitute_power(self.index, self.c).to_ring(self.target_ring, self.positions)


def morales_transform(spec, index: int, c: int) -> MoralesTransform:
    spec = _as_spec(spec)
    exps = spec.exponents
    if not 0 <= index < len(exps):
        raise IndexError(f"index {index} out of range for {len(exps)} exponents")
    if not isinstance(c, int) or c < 1:
        raise ValueError("c must be a positive integer")
    if gcd(c, exps[index]) != 1:
        raise GcdViolation(f"gcd(c, a_{index + 1}) = gcd({c}, {exps[index]}) != 1")
    raw = [a if i == index else c * a for i, a in enumerate(exps)]
    order = sorted(range(len(raw)), key=lambda i: raw[i])
    positions = [0] * len(raw)
    for new, old in enumerate(order):
        positions[old] = new
    new_exps = [raw[i] for i in order]
    try:
        target = validate(new_exps)
    except ValidationError as err:
        raise RedundancyAfterTransform(f"{new_exps}: {err}") from err
    target = CurveSpec(
        target.exponents, target.arithmetic_case, (*spec.morales_history, (index, c))
    )
    return MoralesTransform(spec, target, index, c, tuple(positions))
