"""Decision procedures comparing ordinary and symbolic powers of curve ideals.

For a weighted-homogeneous prime P of a monomial curve, the associated
primes of P^n are among P and the maximal ideal, so saturating P^n at any
single variable (no variable lies in P) strips exactly the embedded
component.  That makes ``P^(n) = P^n : x1^∞`` and ``P^n = P^(n)`` iff x1 is
a non-zerodivisor modulo P^n.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Sequence

from .curve import (
    MoralesTransform,
    WitnessMatrix,
    minors2,
    hankel_matrix,
    pfaffian_system,
    toric_ideal,
    witness_matrix,
)
from .errors import NotCompleteIntersection, NotZeroDimensional, SoundnessAlarm, WitnessMismatch
from .groebner import (
    ArtinianQuotient,
    Ideal,
    colon_poly,
    ideal_equal,
    ideal_power,
    member,
    min_generators,
    saturate_poly,
    socle_type,
    std_monomials,
)
from .poly import Polynomial, Ring, revlex_last
from .semigroup import CurveSpec, arith_subseq, validate

_POWERS: dict = {}


def _power(P: Ideal, n: int) -> Ideal:
    # shared so that P^n's bases are computed once per ideal object
    key = (id(P), n)
    hit = _POWERS.get(key)
    if hit is None or hit[0] is not P:
        hit = _POWERS[key] = (P, ideal_power(P, n))
    return hit[1]


def symbolic_power(P: Ideal, n: int, var: int = 0) -> Ideal:
    """P^(n) as the saturation of P^n at the variable ``var`` (x1 by default)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return P
    return saturate_poly(_power(P, n), P.ring.gen(var))[0]


def powers_equal(P: Ideal, n: int, var: int = 0) -> bool:
    """P^n == P^(n), decided by (P^n : x_var) == P^n."""
    if n == 1:
        return True
    Pn = _power(P, n)
    order = revlex_last(P.ring.weights, var)
    return ideal_equal(colon_poly(Pn, P.ring.gen(var)), Pn, order)


def multiplicity(P: Ideal) -> int:
    """e(R/P) as the length of R/(P, x1)."""
    return std_monomials(P + Ideal(P.ring, [P.ring.gen(0)]))[1]


def artinian_reduction(P: Ideal) -> ArtinianQuotient:
    return ArtinianQuotient.of(P + Ideal(P.ring, [P.ring.gen(0)]))


def cm_type(P: Ideal) -> int:
    """Cohen-Macaulay type: socle dimension of R/(P, x1)."""
    return socle_type(artinian_reduction(P))


def mult_bound(n: int, d: int) -> Fraction:
    """prod_{r=0}^{d-2} (2n + r) / (n + r), exactly."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    return prod((Fraction(2 * n + r, n + r) for r in range(d - 1)), start=Fraction(1))


def length_gap(e: int, n: int, d: int) -> tuple[int, int]:
    """(lower bound for λ(R/(P^n, x)), λ(R/(P^(n), x))) for multiplicity e."""
    return comb(2 * n + d - 2, d - 1), comb(n + d - 2, d - 1) * e


def bound_predicts(e: int, n: int, d: int) -> bool:
    """True when e < mult_bound(n, d), which forces P^n != P^(n)."""
    if e < 1:
        raise ValueError("multiplicity must be positive")
    return e < mult_bound(n, d)


# ---------------------------------------------------------------------------
# witnesses


@dataclass
class WitnessVerdict:
    kind: str
    det_or_pfaffians: list[str]
    in_symbolic_square: bool | None = None
    in_ordinary_square: bool | None = None
    det_nonzero: bool | None = None
    minors_in_ideal: bool | None = None
    adj_det_is_square: bool | None = None
    adj_det_in_cube: bool | None = None
    w_times_det_in_square: bool | None = None
    degree_argument: bool | None = None
    skew_symmetric: bool | None = None
    pfaffians_generate_ideal: bool | None = None

    @property
    def passed(self) -> bool:
        if self.kind == "pfaffian5x5":
            return bool(self.skew_symmetric and self.pfaffians_generate_ideal)
        checks = [
            self.det_nonzero,
            self.in_ordinary_square is False,
            self.in_symbolic_square,
            self.minors_in_ideal,
            self.adj_det_is_square,
            self.adj_det_in_cube,
        ]
        if self.kind == "case3k":
            checks.append(self.w_times_det_in_square)
        if self.kind == "hankel5":
            checks.append(self.degree_argument)
        return all(c is True for c in checks)


def verify_witness(P: Ideal, W: WitnessMatrix) -> WitnessVerdict:
    if W.ring != P.ring:
        raise WitnessMismatch(
            f"witness built for exponents {W.ring.weights}, ideal has {P.ring.weights}"
        )
    if W.kind == "pfaffian5x5":
        return WitnessVerdict(
            kind=W.kind,
            det_or_pfaffians=[str(p) for p in W.pfaffians],
            skew_symmetric=W.is_skew(),
            pfaffians_generate_ideal=ideal_equal(Ideal(P.ring, W.pfaffians), P),
        )
    D = W.determinant
    P2 = _power(P, 2)
    v = WitnessVerdict(kind=W.kind, det_or_pfaffians=[str(D)])
    v.det_nonzero = not D.is_zero()
    v.minors_in_ideal = all(member(P, m) for m in minors2(W.entries))
    v.in_ordinary_square = member(P2, D)
    v.in_symbolic_square = member(symbolic_power(P, 2), D)
    adj_det = _det3(W.adjugate)
    v.adj_det_is_square = adj_det == D * D
    v.adj_det_in_cube = member(_power(P, 3), adj_det)
    if W.kind == "case3k":
        v.w_times_det_in_square = member(P2, P.ring.gen(P.ring.nvars - 1) * D)
    if W.kind == "hankel5":
        low = min(g.degree() for g in P2.generators)
        v.degree_argument = D.degree() == 3 and low >= 4
    return v


def _det3(M) -> Polynomial:
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def applicable_witnesses(spec: CurveSpec) -> list[WitnessMatrix]:
    out = []
    case = spec.arithmetic_case
    if case is not None:
        if case.residue == 2:
            out.append(pfaffian_system(case.a, case.r))
        else:
            out.append(witness_matrix(case.a, case.r))
    if spec.d >= 5:
        found = arith_subseq(spec.exponents, 5)
        if found is not None:
            out.append(hankel_matrix(spec, found[0]))
    return out


# ---------------------------------------------------------------------------
# reports


@dataclass
class BoundEval:
    n: int
    d: int
    value: Fraction
    predicts: bool


@dataclass
class AnalysisReport:
    spec: CurveSpec
    equality: dict[int, bool]
    multiplicity: int
    mu: int
    min_generators: list[Polynomial]
    cm_type: int
    gorenstein: bool
    witnesses: list[WitnessVerdict]
    bound_evals: list[BoundEval]
    verdict: str
    regular_sequence: bool | None = None
    timings_ms: dict[str, float] = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.spec.d


def is_regular_sequence(gens: Sequence[Polynomial], ring: Ring) -> bool:
    """d-1 homogeneous elements plus x1 form a regular sequence iff R/(gens, x1) is Artinian."""
    try:
        std_monomials(Ideal(ring, [*gens, ring.gen(0)]))
    except NotZeroDimensional:
        return False
    return len(gens) == ring.nvars - 1


def huneke_gate(spec, n_max: int | None = None, witnesses: bool = True) -> AnalysisReport:
    """Assemble the full comparison report for one curve."""
    spec = spec if isinstance(spec, CurveSpec) else validate(spec)
    d = spec.d
    n_max = d - 1 if n_max is None else n_max
    timings: dict[str, float] = {}

    def timed(label, fn, *args):
        t0 = time.perf_counter()
        out = fn(*args)
        timings[label] = round((time.perf_counter() - t0) * 1000, 3)
        return out

    P = timed("toric_ideal", toric_ideal, spec)
    e = timed("multiplicity", multiplicity, P)
    if e != spec.a1:
        raise SoundnessAlarm(f"multiplicity {e} differs from a1 = {spec.a1} for {spec.exponents}")
    gens, mu = timed("min_generators", min_generators, P)
    ctype = timed("cm_type", cm_type, P)

    equality = {}
    for n in range(2, n_max + 1):
        equality[n] = timed(f"powers_equal_{n}", powers_equal, P, n)

    bounds = []
    for n in range(2, n_max + 1):
        bv = mult_bound(n, d)
        bounds.append(BoundEval(n, d, bv, e < bv))
        if e < bv and equality[n]:
            raise SoundnessAlarm(f"bound {bv} forces P^{n} != P^({n}) but equality was computed")

    verdicts = []
    if witnesses:
        for W in applicable_witnesses(spec):
            verdicts.append(timed(f"witness_{W.kind}", verify_witness, P, W))

    regular = None
    unequal = [n for n, eq in equality.items() if not eq]
    if unequal:
        verdict = f"inequality_at({unequal[0]})"
    elif mu == d - 1:
        regular = is_regular_sequence(gens, P.ring)
        if not regular:
            raise SoundnessAlarm("d-1 minimal generators that do not form a regular sequence")
        verdict = "all_equal_complete_intersection"
    else:
        verdict = "all_equal_open"

    return AnalysisReport(
        spec=spec,
        equality=equality,
        multiplicity=e,
        mu=mu,
        min_generators=gens,
        cm_type=ctype,
        gorenstein=ctype == 1,
        witnesses=verdicts,
        bound_evals=bounds,
        verdict=verdict,
        regular_sequence=regular,
        timings_ms=timings,
    )


def ci_multiplicity_check(report: AnalysisReport) -> bool:
    """For a complete intersection inside m^2: e >= 2^(d-1) and every generator has order >= 2."""
    if report.mu != report.d - 1:
        raise NotCompleteIntersection(f"mu = {report.mu}, expected {report.d - 1}")
    return report.multiplicity >= 2 ** (report.d - 1) and all(
        g.ord() >= 2 for g in report.min_generators
    )


# ---------------------------------------------------------------------------
# membership transfer under a Morales modification


def monomials_of_weight(weights: Sequence[int], degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given weighted degree."""
    out = []

    def rec(i, left, acc):
        if i == len(weights) - 1:
            if left % weights[i] == 0:
                out.append((*acc, left // weights[i]))
            return
        for k in range(left // weights[i] + 1):
            rec(i + 1, left - k * weights[i], (*acc, k))

    rec(0, degree, ())
    return out


def random_homogeneous(ring: Ring, degree: int, rng: random.Random, terms: int = 3) -> Polynomial:
    mons = monomials_of_weight(ring.weights, degree)
    if not mons:
        return ring.zero()
    picks = rng.sample(mons, min(terms, len(mons)))
    return Polynomial(ring, {m: rng.choice([-3, -2, -1, 1, 2, 3]) for m in picks})


def random_element(I: Ideal, degree: int, rng: random.Random) -> Polynomial:
    """A random weighted-homogeneous element of I of the given degree (possibly 0)."""
    ring = I.ring
    f = ring.zero()
    gens = list(I.generators)
    for g in rng.sample(gens, min(3, len(gens))):
        dg = g.weighted_degree()
        if dg == degree:
            f = f + g.scale(rng.choice([1, -1, 2]))
        elif dg < degree:
            f = f + random_homogeneous(ring, degree - dg, rng, terms=2) * g
    return f


@dataclass
class TransferCheck:
    k: int
    kind: str  # "ordinary" or "symbolic"
    samples: int
    agreements: int
    members: int

    @property
    def passed(self) -> bool:
        return self.agreements == self.samples


def membership_transfer(
    T: MoralesTransform,
    powers: Sequence[int] = (1, 2),
    samples: int = 20,
    seed: int = 0,
    symbolic: bool = True,
) -> list[TransferCheck]:
    """Compare f in P^k (resp. P^(k)) with T(f) in the modified ideal's power."""
    rng = random.Random(seed)
    P = toric_ideal(T.source)
    Pt = toric_ideal(T.target)
    results = []
    kinds = ["ordinary", "symbolic"] if symbolic else ["ordinary"]
    for k in powers:
        for kind in kinds:
            if kind == "ordinary":
                A, B = _power(P, k), _power(Pt, k)
            else:
                A, B = symbolic_power(P, k), symbolic_power(Pt, k)
            top = max(g.weighted_degree() for g in A.generators)
            agree = members = 0
            for i in range(samples):
                f = P.ring.zero()
                while f.is_zero():
                    deg = top + rng.randint(0, min(P.ring.weights))
                    f = random_element(A, deg, rng)
                    if i % 2:
                        f = f + random_homogeneous(P.ring, deg, rng, terms=1)
                lhs = member(A, f)
                rhs = member(B, T(f))
                agree += lhs == rhs
                members += lhs
            results.append(TransferCheck(k, kind, samples, agree, members))
    return results
