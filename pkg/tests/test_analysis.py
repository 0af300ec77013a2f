import random
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import arith_grid, pseudo_frobenius_count, semigroup_members
from sympow import analysis
from sympow.analysis import (
    bound_predicts,
    ci_multiplicity_check,
    cm_type,
    huneke_gate,
    length_gap,
    monomials_of_weight,
    mult_bound,
    multiplicity,
    powers_equal,
    symbolic_power,
    verify_witness,
)
from sympow.curve import hankel_matrix, pfaffian_system, toric_ideal, witness_matrix
from sympow.errors import NotCompleteIntersection, SoundnessAlarm, ValidationError, WitnessMismatch
from sympow.groebner import ideal_equal, ideal_power, is_subset, member, min_generators
from sympow.semigroup import validate


def P(*exps):
    return toric_ideal(list(exps))


def valid_grid():
    out = []
    for a, r in arith_grid():
        exps = (a, a + r, a + 2 * r, a + 3 * r)
        try:
            validate(exps)
        except ValidationError:
            continue
        out.append(exps)
    return out


GRID = valid_grid()
SMALL_GRID = [e for e in GRID if e[0] <= 9]


# -- symbolic powers ---------------------------------------------------------


def test_symbolic_power_examples():
    I = P(6, 7, 8, 9)
    assert symbolic_power(I, 1) is I
    D = witness_matrix(6, 1).determinant
    assert member(symbolic_power(I, 2), D)
    assert not member(ideal_power(I, 2), D)
    J = P(5, 6, 7, 8)
    assert ideal_equal(symbolic_power(J, 2), ideal_power(J, 2))


def test_powers_equal_examples():
    assert powers_equal(P(5, 6, 7, 8), 2)
    assert not powers_equal(P(5, 6, 7, 8), 3)
    assert not powers_equal(P(4, 5, 6, 7), 2)
    assert powers_equal(P(4, 5, 6, 7), 1)


@pytest.mark.parametrize("exps", SMALL_GRID)
@pytest.mark.parametrize("n", [2, 3])
def test_shortcut_matches_saturation(exps, n):
    I = P(*exps)
    Pn = ideal_power(I, n)
    sym = symbolic_power(I, n)
    assert is_subset(Pn, sym)
    assert is_subset(sym, I)
    assert powers_equal(I, n) == ideal_equal(Pn, sym)


@pytest.mark.parametrize("exps", [(4, 5, 6, 7), (5, 6, 7, 8), (6, 7, 8, 9), (5, 7, 9, 11), (7, 8, 9, 10)])
def test_saturation_is_variable_independent(exps):
    I = P(*exps)
    ref = symbolic_power(I, 2, var=0)
    for var in range(1, 4):
        assert ideal_equal(symbolic_power(I, 2, var=var), ref)
        assert powers_equal(I, 2, var=var) == powers_equal(I, 2)


# -- multiplicity and type -----------------------------------------------------


def test_multiplicity_examples():
    assert multiplicity(P(5, 6, 7, 8)) == 5
    assert multiplicity(P(6, 7, 8, 9)) == 6
    assert multiplicity(P(8, 12, 18, 27)) == 8


def test_cm_type_examples():
    assert cm_type(P(5, 6, 7, 8)) == 1
    assert cm_type(P(6, 7, 8, 9)) == 2
    assert cm_type(P(4, 5, 6, 7)) == 3


def random_specs(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = rng.choice([3, 4, 5])
        exps = sorted(rng.sample(range(d, 16), d))
        try:
            out.append(validate(exps).exponents)
        except ValidationError:
            pass
    return out


@pytest.mark.parametrize("exps", GRID + random_specs(12, 3))
def test_type_and_multiplicity_match_semigroup(exps):
    I = P(*exps)
    assert multiplicity(I) == exps[0]
    assert cm_type(I) == pseudo_frobenius_count(exps)


def mu_oracle(exps):
    """dim P/mP by linear algebra in each weighted degree.

    R/P is the semigroup ring, so P_δ has dimension N(δ) - [δ in S] and is spanned
    by binomials of monomials of equal weight.
    """
    top = 6 * max(exps)
    inS = semigroup_members(exps, top)
    mu = 0
    for deg in range(1, top + 1):
        mons = monomials_of_weight(exps, deg)
        dim_p = len(mons) - (1 if inS[deg] else 0)
        if dim_p <= 0:
            continue
        index = {m: i for i, m in enumerate(mons)}
        rows = []
        for i, a in enumerate(exps):
            lower = monomials_of_weight(exps, deg - a) if deg > a else []
            for u, v in zip(lower, lower[1:]):
                row = [0] * len(mons)
                row[index[tuple(c + (j == i) for j, c in enumerate(u))]] += 1
                row[index[tuple(c + (j == i) for j, c in enumerate(v))]] -= 1
                rows.append(row)
        rank = sympy.Matrix(rows).rank() if rows else 0
        mu += dim_p - rank
    return mu


@pytest.mark.parametrize("exps", SMALL_GRID + [(8, 12, 18, 27), (6, 7, 8, 9, 10), (5, 18, 21, 24)])
def test_mu_matches_graded_linear_algebra(exps):
    assert min_generators(P(*exps))[1] == mu_oracle(exps)


# -- grid patterns -------------------------------------------------------------


@pytest.fixture(scope="module")
def grid_reports():
    return {exps: huneke_gate(list(exps), witnesses=False) for exps in GRID}


def test_residue_pattern(grid_reports):
    for exps, rep in grid_reports.items():
        assert rep.gorenstein == (exps[0] % 3 == 2), exps


def test_herzog_correspondence(grid_reports):
    for rep in grid_reports.values():
        assert rep.equality[2] == (rep.cm_type == 1)


def test_bresinsky_constraint(grid_reports):
    for rep in grid_reports.values():
        if rep.cm_type == 1:
            assert rep.mu in (3, 5)


def test_grid_invariants(grid_reports):
    for exps, rep in grid_reports.items():
        assert rep.multiplicity == exps[0]
        assert rep.gorenstein == (rep.cm_type == 1)
        # no complete intersection below 2^(d-1)
        assert not (rep.mu == 3 and rep.multiplicity < 8)


# -- the multiplicity bound ------------------------------------------------------


def test_mult_bound_examples():
    assert mult_bound(3, 4) == Fraction(28, 5)
    assert float(mult_bound(3, 4)) == 5.6
    assert mult_bound(2, 3) == Fraction(10, 3)
    for d in range(2, 10):
        assert mult_bound(1, d) == d
    with pytest.raises(ValueError):
        mult_bound(0, 4)


def test_bound_predicts_examples():
    assert bound_predicts(5, 3, 4)
    assert not bound_predicts(6, 3, 4)
    assert mult_bound(50, 4) < 8
    assert not bound_predicts(8, 50, 4)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 20), st.integers(3, 7))
def test_bound_is_increasing(n, d):
    assert mult_bound(n + 1, d) > mult_bound(n, d)
    assert mult_bound(n, d) < 2 ** (d - 1)


def test_bound_is_flat_for_plane_curves():
    # a single factor 2n/n: constant, so only weakly increasing when d = 2
    assert {mult_bound(n, 2) for n in range(1, 21)} == {2}


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 20), st.integers(2, 7), st.integers(1, 40))
def test_bound_equivalent_binomial_form(n, d, e):
    lower, sym = length_gap(e, n, d)
    assert lower == comb(2 * n + d - 2, d - 1)
    assert (e < mult_bound(n, d)) == (sym < lower)


@pytest.mark.parametrize("exps", [(4, 5, 6, 7), (5, 6, 7, 8), (4, 7, 10, 13), (5, 7, 9, 11)])
def test_bound_prediction_is_honoured(exps):
    I = P(*exps)
    e = multiplicity(I)
    for n in (2, 3):
        if bound_predicts(e, n, 4):
            assert not powers_equal(I, n)


# -- reports -------------------------------------------------------------------


def test_gate_4567():
    rep = huneke_gate([4, 5, 6, 7])
    assert rep.verdict == "inequality_at(2)"
    assert rep.equality == {2: False, 3: False}
    assert rep.multiplicity == 4 and rep.mu == 6 and rep.cm_type == 3
    assert [w.kind for w in rep.witnesses] == ["case3k1"]
    assert all(w.passed for w in rep.witnesses)


def test_gate_5678():
    rep = huneke_gate([5, 6, 7, 8])
    assert rep.verdict == "inequality_at(3)"
    assert rep.equality == {2: True, 3: False}
    assert rep.gorenstein and rep.mu == 5
    assert [(b.n, b.value, b.predicts) for b in rep.bound_evals] == [
        (2, Fraction(4, 2) * Fraction(5, 3) * Fraction(6, 4), False),
        (3, Fraction(28, 5), True),
    ]
    assert rep.witnesses[0].kind == "pfaffian5x5" and rep.witnesses[0].passed


def test_gate_complete_intersection():
    rep = huneke_gate([8, 12, 18, 27])
    assert rep.equality == {2: True, 3: True}
    assert rep.mu == 3
    assert rep.verdict == "all_equal_complete_intersection"
    assert rep.regular_sequence is True
    assert ci_multiplicity_check(rep)
    assert rep.multiplicity == 2**3


def test_ci_check_rejects_non_ci():
    with pytest.raises(NotCompleteIntersection):
        ci_multiplicity_check(huneke_gate([5, 6, 7, 8], witnesses=False))


def test_gate_alarm_on_multiplicity(monkeypatch):
    monkeypatch.setattr(analysis, "multiplicity", lambda P: 99)
    with pytest.raises(SoundnessAlarm):
        huneke_gate([5, 6, 7, 8])


def test_gate_alarm_on_bound_contradiction(monkeypatch):
    monkeypatch.setattr(analysis, "powers_equal", lambda P, n: True)
    with pytest.raises(SoundnessAlarm):
        huneke_gate([5, 6, 7, 8], witnesses=False)


def test_gate_respects_n_max():
    rep = huneke_gate([6, 7, 8, 9], n_max=2, witnesses=False)
    assert list(rep.equality) == [2]
    assert rep.verdict == "inequality_at(2)"


# -- witnesses -------------------------------------------------------------------


def test_verify_case3k():
    v = verify_witness(P(6, 7, 8, 9), witness_matrix(6, 1))
    assert v.passed
    assert v.in_symbolic_square and v.in_ordinary_square is False
    assert v.w_times_det_in_square and v.adj_det_is_square and v.adj_det_in_cube


def test_verify_case3k1():
    v = verify_witness(P(4, 5, 6, 7), witness_matrix(4, 1))
    assert v.passed
    assert v.w_times_det_in_square is None


def test_verify_hankel5():
    W = hankel_matrix([6, 7, 8, 9, 10], range(5))
    v = verify_witness(P(6, 7, 8, 9, 10), W)
    assert v.degree_argument and v.in_ordinary_square is False and v.in_symbolic_square
    assert v.passed


def test_verify_pfaffian():
    v = verify_witness(P(8, 9, 10, 11), pfaffian_system(8, 1))
    assert v.passed and v.skew_symmetric


def test_verify_mismatch():
    with pytest.raises(WitnessMismatch):
        verify_witness(P(5, 6, 7, 8), witness_matrix(6, 1))


def test_failed_witness_is_reported():
    # a witness for the right ring whose determinant is in P^2 must not pass
    W = witness_matrix(6, 1)
    x, y, z, w = W.ring.gens()
    W.determinant = (y**2 - x * z) ** 2
    v = verify_witness(P(6, 7, 8, 9), W)
    assert not v.passed
