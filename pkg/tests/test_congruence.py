import math

import pytest

from bpscount.arith import divisors, factorize
from bpscount.congruence import (
    CheckKind,
    CongruenceCase,
    check_mod_four_descent,
    check_prime_power_descent,
    entry_integrality_via_congruence,
    mod_four_grid,
    pair_sum,
    prime_power_grid,
    regroup_pairs,
    verify_divisibility,
)
from bpscount.matrices import transform_entry

# ---------------------------------------------------------------- oracles


def naive_is_squarefree(n):
    return all(n % (d * d) for d in range(2, math.isqrt(n) + 1))


def naive_squarefree_cofactor_divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0 and naive_is_squarefree(n // k)]


# ------------------------------------------------------------------- cases


def test_case_computes_holds():
    assert CongruenceCase({"x": 1}, 10, 1, 9).holds
    assert not CongruenceCase({"x": 1}, 10, 2, 9).holds
    assert CongruenceCase({"x": 1}, -5, 3, 4).holds  # -8 is divisible by 4
    with pytest.raises(ValueError):
        CongruenceCase({}, 1, 1, 0)


def test_prime_power_descent_examples():
    case = check_prime_power_descent(3, 1, 2, 1)
    assert (case.lhs, case.rhs, case.modulus) == (10, 1, 9)
    assert case.holds

    case = check_prime_power_descent(2, 2, 2, 1)
    assert (case.lhs, case.rhs, case.modulus) == (35, 3, 16)
    assert case.holds

    case = check_prime_power_descent(5, 2, 4, 4)
    assert case.lhs == case.rhs == 1  # a = b collapses both sides
    assert case.holds


def test_prime_power_descent_preconditions():
    with pytest.raises(ValueError, match="mod_four"):
        check_prime_power_descent(2, 1, 3, 1)
    with pytest.raises(ValueError):
        check_prime_power_descent(6, 1, 3, 1)  # composite p
    with pytest.raises(ValueError):
        check_prime_power_descent(3, 0, 1, 1)
    with pytest.raises(ValueError):
        check_prime_power_descent(3, 1, 0, 1)


def test_mod_four_descent_examples():
    case = check_mod_four_descent(1, 2)
    assert (case.lhs, case.rhs, case.modulus) == (3, -1, 4)
    assert case.holds

    case = check_mod_four_descent(3, 2)
    assert (case.lhs, case.rhs) == (462, -10)
    assert case.holds

    case = check_mod_four_descent(1, 1)
    assert (case.lhs, case.rhs) == (1, 1)
    assert case.holds


def test_mod_four_descent_rejects_even_k():
    with pytest.raises(ValueError):
        check_mod_four_descent(2, 1)
    with pytest.raises(ValueError):
        check_mod_four_descent(1, 0)


def test_small_grids_pass():
    report = prime_power_grid((2, 3, 5), 2, 8, 8)
    assert report.check is CheckKind.PRIME_POWER_DESCENT
    assert report.passed
    assert report.total_cases == (1 + 2 + 2) * 64

    report = mod_four_grid(19, 10)
    assert report.check is CheckKind.MOD_FOUR_DESCENT
    assert report.passed
    assert report.total_cases == 10 * 10


# ---------------------------------------------------------------- regroup


def test_regroup_examples():
    # ratio 4, p = 2, alpha = 2: single l = 1 covers I(4) = {2, 4}
    assert regroup_pairs(4, 1, 2, 2) == [(1, (2, 4))]
    # ratio 12, p = 3, alpha = 1: l runs over I(4) = {2, 4}
    assert regroup_pairs(12, 1, 2, 3) == [(2, (2, 6)), (4, (4, 12))]
    # prime ratio: single pair {1, p}
    assert regroup_pairs(5, 1, 2, 5) == [(1, (1, 5))]


def test_regroup_errors():
    with pytest.raises(ValueError):
        regroup_pairs(9, 2, 2, 3)  # t does not divide s
    with pytest.raises(ValueError):
        regroup_pairs(3, 3, 2, 3)  # s equals t
    with pytest.raises(ValueError):
        regroup_pairs(9, 1, 2, 2)  # p does not divide s/t


def test_regroup_partition_property():
    for ratio in range(2, 250):
        target = naive_squarefree_cofactor_divisors(ratio)
        for p, _alpha in factorize(ratio).factors:
            pairs = regroup_pairs(ratio, 1, 1, p)
            flattened = sorted(k for _, pair in pairs for k in pair)
            assert flattened == target
            assert len(flattened) == len(set(flattened))


# ---------------------------------------------------------------- pair sum


def test_pair_sum_examples():
    assert pair_sum(4, 1, 2, 2, 1) == 0
    assert pair_sum(2, 1, 3, 2, 1) == 4


def test_pair_sum_preconditions():
    with pytest.raises(ValueError):
        pair_sum(2, 1, 1, 2, 1)  # t*w < 2
    with pytest.raises(ValueError):
        pair_sum(4, 1, 2, 2, 3)  # l does not divide the cofactor
    with pytest.raises(ValueError):
        pair_sum(9, 2, 2, 3, 1)  # t does not divide s
    with pytest.raises(ValueError):
        pair_sum(8, 1, 2, 2, 2)  # 2**3 || 8 leaves cofactor 1, so l = 2 invalid


def test_pair_sum_sign_structure():
    # the two terms carry opposite signs except exactly at p = 2,
    # alpha = 1, t*w odd
    for s in range(2, 40):
        for t in divisors(s):
            if t == s:
                continue
            for w in (1, 2, 3):
                if t * w < 2:
                    continue
                for p, alpha in factorize(s // t).factors:
                    for l, (k1, k2) in regroup_pairs(s, t, w, p):
                        def term_sign(k):
                            sign = 1
                            if (len(factorize(s // (k * t)).factors)) % 2:
                                sign = -sign
                            if (k * t * w) % 2:
                                sign = -sign
                            return sign

                        same = term_sign(k1) == term_sign(k2)
                        expected_same = p == 2 and alpha == 1 and (t * w) % 2 == 1
                        assert same == expected_same


# ------------------------------------------------------------- divisibility


def test_verify_divisibility_examples():
    report = verify_divisibility(2, 1, 3)
    assert report.total_cases == 1
    assert report.passed
    assert report.check is CheckKind.PAIR_SUM_DIVISIBILITY

    report = verify_divisibility(4, 1, 2)
    assert report.passed  # pair sum 0 modulo 16

    # prime ratio: exactly one (p, l) case
    assert verify_divisibility(7, 1, 4).total_cases == 1
    assert verify_divisibility(14, 2, 4).total_cases == 1


def test_verify_divisibility_preconditions():
    with pytest.raises(ValueError):
        verify_divisibility(3, 3, 2)  # s == t
    with pytest.raises(ValueError):
        verify_divisibility(9, 2, 2)  # t does not divide s
    with pytest.raises(ValueError):
        verify_divisibility(2, 1, 1)  # t*w < 2


def test_entry_integrality_examples():
    assert entry_integrality_via_congruence(5, 5, 2)
    assert entry_integrality_via_congruence(2, 1, 3)
    with pytest.raises(ValueError):
        entry_integrality_via_congruence(2, 1, 1)


def test_entry_integrality_agrees_with_denominator():
    for s in range(1, 25):
        for t in divisors(s):
            for w in range(2, 5):
                expected = transform_entry(s, t, w).denominator == 1
                assert entry_integrality_via_congruence(s, t, w) == expected
