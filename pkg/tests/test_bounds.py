"""Determinant sandwich, rank-one-plus-diagonal and constant-gcd
eigenvalue bounds, and the interlacing check."""

import random
from fractions import Fraction

import pytest

from gcdspectra.arith import MU, PHI, ZETA, custom_fn, jordan, psi, sigma, xi
from gcdspectra.errors import HypothesisError
from gcdspectra.matrix import as_one_rank_plus_diag, build_gcd_matrix
from gcdspectra.spectra import (
    constant_gcd_eigenvalue_bounds,
    determinant_exact,
    determinant_sandwich_bounds,
    eigenvalues_symmetric,
    fresh_divisor_lower_bound,
    interlacing_check,
    rank_one_update_bounds,
    smith_determinant,
)

CLASS_POOL = [ZETA, PHI, sigma(1), psi(1), jordan(1), jordan(2), sigma(2), xi(2)]


# ---------------------------------------------------------------------------
# determinant sandwich


def test_sandwich_divisor_sum_pin():
    # on {1..5} the diagonal product is 1*3*4*7*6 and the lower end
    # collapses to the closed-form determinant, 5! = 120
    rep = determinant_sandwich_bounds([(sigma(1), 1)], 0, range(1, 6))
    assert rep.observed == 120
    assert rep.lower == 120
    assert rep.upper == 504
    assert rep.source == "det_sandwich"
    assert not rep.strict
    assert rep.residual == 0.0


def test_sandwich_lower_is_exact_on_factor_closed_sets():
    for n in range(1, 11):
        rep = determinant_sandwich_bounds([(PHI, 1)], 0, range(1, n + 1))
        assert rep.lower == rep.observed == smith_determinant(PHI, n)
        assert rep.observed <= rep.upper


def test_sandwich_single_element():
    rep = determinant_sandwich_bounds([(sigma(1), 1)], 0, [6])
    assert rep.lower == rep.observed == rep.upper == 12


def test_sandwich_non_factor_closed():
    # rows for 3 and 6 coincide, so the determinant hits the lower end 0
    rep = determinant_sandwich_bounds([(PHI, 1)], 0, [2, 3, 6])
    assert rep.observed == 0
    assert rep.lower == 0
    assert rep.upper == 4


def test_sandwich_hypothesis_rejections():
    with pytest.raises(HypothesisError):
        determinant_sandwich_bounds([(PHI, 1)], 1, range(1, 4))
    with pytest.raises(HypothesisError) as info:
        determinant_sandwich_bounds([(MU, 1)], 0, range(1, 4))
    assert "2" in str(info.value)
    with pytest.raises(ValueError):
        determinant_sandwich_bounds([(xi(0.5), 1)], 0, [1, 2])


def test_sandwich_seeded_instances():
    rng = random.Random(41)
    for _ in range(30):
        fs = [(rng.choice(CLASS_POOL), rng.randint(1, 2)) for _ in range(rng.randint(1, 2))]
        total = sum(l for _, l in fs)
        d = rng.randint(0, total - 1)
        S = sorted(rng.sample(range(1, 41), rng.randint(1, 6)))
        rep = determinant_sandwich_bounds(fs, d, S)
        assert rep.lower <= rep.observed <= rep.upper
        assert isinstance(rep.observed, Fraction)


def test_psd_for_hypothesis_matrices():
    rng = random.Random(8)
    for _ in range(5):
        f = rng.choice(CLASS_POOL)
        S = sorted(rng.sample(range(1, 120), 40))
        spec = eigenvalues_symmetric(build_gcd_matrix(f, S))
        trace = sum(spec.eigenvalues)
        assert spec.smallest(1) >= -1e-8 * trace


def test_fresh_divisor_lower_bound_direct():
    assert fresh_divisor_lower_bound(sigma(1), range(1, 7)) == smith_determinant(
        sigma(1), 6
    )
    # {2,3,6}: fresh divisors are {1,2}, {3}, {6}
    assert fresh_divisor_lower_bound(PHI, [2, 3, 6]) == Fraction(1) * 1 * 0
    with pytest.raises(ValueError):
        fresh_divisor_lower_bound(xi(0.5), [1, 2])


# ---------------------------------------------------------------------------
# rank-one plus diagonal


def test_rank_one_equal_leading_pair_is_exact():
    rep = rank_one_update_bounds([1, 1, 5])
    assert rep.lower == rep.upper == 0
    assert not rep.strict
    assert rep.case == "r1=r2"
    assert abs(rep.observed) <= 10 * rep.residual + 1e-12

    rep = rank_one_update_bounds([2, 2])
    assert rep.lower == rep.upper == 1
    assert abs(rep.observed - 1.0) <= 1e-9


def test_rank_one_strict_bracket():
    rep = rank_one_update_bounds([1, 2, 4])
    assert rep.lower == 0
    assert rep.upper == Fraction(3, 7)
    assert rep.strict and rep.case == "r1<r2"
    margin = 10 * rep.residual
    assert rep.lower + margin < rep.observed < rep.upper - margin


def test_rank_one_float_input():
    rep = rank_one_update_bounds([1.0, 2.5, 6.25])
    assert isinstance(rep.lower, float) and isinstance(rep.upper, float)
    assert rep.lower < rep.observed < rep.upper


def test_rank_one_matches_materialized_matrix():
    rep = rank_one_update_bounds([1, 2, 4])
    spec = eigenvalues_symmetric([[1, 1, 1], [1, 2, 1], [1, 1, 4]])
    assert rep.observed == spec.smallest(1)


def test_rank_one_rejections():
    with pytest.raises(HypothesisError):
        rank_one_update_bounds([3])
    with pytest.raises(HypothesisError):
        rank_one_update_bounds([2, 1, 4])
    with pytest.raises(HypothesisError):
        rank_one_update_bounds([Fraction(1, 2), 2])


def test_rank_one_seeded_brackets():
    rng = random.Random(3511)
    for _ in range(50):
        n = rng.randint(2, 30)
        r = sorted(rng.randint(1, 60) for _ in range(n))
        rep = rank_one_update_bounds(r)
        margin = 10 * rep.residual
        if rep.strict:
            assert float(rep.lower) + margin < rep.observed < float(rep.upper) - margin
        else:
            assert abs(rep.observed - float(rep.lower)) <= margin + 1e-9 * max(
                1.0, abs(float(rep.lower))
            )


# ---------------------------------------------------------------------------
# constant-gcd sets


def test_constant_gcd_strict_case_totient():
    rep = constant_gcd_eigenvalue_bounds(PHI, 1, [2, 3, 5])
    assert rep.lower == 0
    assert rep.upper == Fraction(3, 7)
    assert rep.strict and rep.case == "f(x1)<f(x2)"
    margin = 10 * rep.residual
    assert rep.lower + margin < rep.observed < rep.upper - margin


def test_constant_gcd_equality_cases():
    # totient agrees on 3 and 4, so the matrix is [[2,1],[1,2]]
    rep = constant_gcd_eigenvalue_bounds(PHI, 1, [3, 4])
    assert rep.lower == rep.upper == 1
    assert rep.case == "f(x1)=f(x2)"
    assert abs(rep.observed - 1.0) <= 1e-9
    # and on 5 and 8, giving [[4,1],[1,4]]
    rep = constant_gcd_eigenvalue_bounds(PHI, 1, [5, 8])
    assert rep.lower == rep.upper == 3
    assert abs(rep.observed - 3.0) <= 1e-9 * 3


def test_constant_gcd_nontrivial_common_divisor():
    rep = constant_gcd_eigenvalue_bounds(xi(1), 6, [6, 30, 42])
    assert rep.lower == 0
    assert rep.upper == Fraction(72, 17)
    margin = 10 * rep.residual
    assert rep.lower + margin < rep.observed < rep.upper - margin


def test_constant_gcd_scales_like_rank_one_form():
    direct = constant_gcd_eigenvalue_bounds(xi(1), 6, [6, 30, 42])
    reduced = rank_one_update_bounds([1, 5, 7])
    assert direct.upper == 6 * reduced.upper
    assert abs(direct.observed - 6 * reduced.observed) <= 1e-9 * abs(direct.observed)
    form = as_one_rank_plus_diag(build_gcd_matrix(xi(1), [6, 30, 42]), 6)
    assert form.scale == 6
    assert form.r == (1, 5, 7)


def test_constant_gcd_zero_value_case():
    zero = custom_fn("zero", lambda m: 0, multiplicative=False, exact=True)
    rep = constant_gcd_eigenvalue_bounds(zero, 1, [2, 3, 5])
    assert rep.case == "f(x1)=0"
    assert rep.lower == rep.upper == 0
    assert rep.observed == 0.0


def test_constant_gcd_diagonal_case():
    shifted = custom_fn("shifted", lambda m: m - 1, multiplicative=False, exact=True)
    rep = constant_gcd_eigenvalue_bounds(shifted, 1, [2, 3, 5])
    assert rep.case == "diagonal"
    assert rep.lower == rep.upper == 1
    assert abs(rep.observed - 1.0) <= 1e-9


def test_constant_gcd_rejections():
    with pytest.raises(HypothesisError) as info:
        constant_gcd_eigenvalue_bounds(PHI, 1, [5, 7, 8])
    assert "f(7)" in str(info.value) and "f(8)" in str(info.value)
    with pytest.raises(HypothesisError) as info:
        constant_gcd_eigenvalue_bounds(PHI, 1, [2, 3, 4])
    assert "gcd(2, 4)" in str(info.value)
    with pytest.raises(HypothesisError):
        constant_gcd_eigenvalue_bounds(PHI, 2, [2])
    with pytest.raises(HypothesisError):
        constant_gcd_eigenvalue_bounds(MU, 1, [2, 3, 5])


def test_constant_gcd_float_path():
    rep = constant_gcd_eigenvalue_bounds(xi(0.5), 1, [4, 9, 25])
    assert rep.strict
    assert isinstance(rep.lower, float)
    margin = 10 * rep.residual
    assert rep.lower + margin < rep.observed < rep.upper - margin


# ---------------------------------------------------------------------------
# interlacing


def test_interlacing_all_ones():
    small = eigenvalues_symmetric([[1, 1], [1, 1]])
    large = eigenvalues_symmetric([[1, 1, 1], [1, 1, 1], [1, 1, 1]])
    ok, worst = interlacing_check(small, large)
    assert ok and worst <= 0.0


def test_interlacing_totient_chain():
    specs = {
        n: eigenvalues_symmetric(build_gcd_matrix(PHI, range(1, n + 1)))
        for n in range(1, 21)
    }
    for n in range(1, 20):
        ok, worst = interlacing_check(specs[n], specs[n + 1])
        assert ok, (n, worst)


def test_interlacing_violation_and_mismatch():
    ok, worst = interlacing_check((5.0,), (0.0, 1.0))
    assert not ok and worst > 0
    with pytest.raises(ValueError):
        interlacing_check((1.0, 2.0), (1.0, 2.0))
