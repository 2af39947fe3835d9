import math
from fractions import Fraction

import mpmath
import pytest

from recurrencelab.bignum import (DEFAULT_DIGIT_CAP, exp_ceil, exp_floor,
                                  exp_int, float_log, nlogn_ceil,
                                  power_log_ceil)
from recurrencelab.errors import CapacityError


def mp_exp_ceil(x: float, extra=None) -> int:
    terms = [x, *(extra or ())]
    dps = int(max(math.fsum(terms), 1) / math.log(10)) + 80
    with mpmath.workdps(dps):
        total = mpmath.fsum(mpmath.mpf(t) for t in terms)
        return int(mpmath.ceil(mpmath.exp(total)))


def test_exp_ceil_small_values():
    for x in [0.0, 0.5, 1.0, 2.0, 10.0, 100.0, 700.0, 1000.0]:
        assert exp_ceil(x) == mp_exp_ceil(x)


def test_exp_floor_small_values():
    assert exp_floor(0.0) == 1  # e^0 is exactly 1
    for x in [0.5, 1.0, 2.0, 10.0, 700.0]:
        assert exp_floor(x) == mp_exp_ceil(x) - 1  # e**x is never integral here



def test_exp_int_negative_exponent():
    assert exp_ceil(-3.0) == 1
    assert exp_floor(-3.0) == 0


def test_exp_int_term_lists():
    # summing as floats first would lose the small term entirely
    terms = [1000.0, 1e-14, 2.5]
    assert exp_int(terms, rounding="ceil") == mp_exp_ceil(0.0, terms)


def test_exp_ceil_beyond_float_range():
    # e^1000 overflows float arithmetic but not the big-int path
    v = exp_ceil(1000.0)
    assert len(str(v)) == 435
    assert float_log(v) == pytest.approx(1000.0, abs=1e-9)


def test_digit_cap_enforced():
    with pytest.raises(CapacityError):
        exp_ceil(1e9, digit_cap=DEFAULT_DIGIT_CAP)
    # raising the cap unlocks the same exponent
    assert exp_ceil(60000.0, digit_cap=30_000) > 0


def test_power_log_ceil_matches_exact_rational():
    # n^A for integer A times log n, checked against exact arithmetic
    for n, A in [(4, Fraction(2)), (55, Fraction(2)), (10, Fraction(3))]:
        with mpmath.workdps(60):
            expected = int(mpmath.ceil(mpmath.mpf(n ** A.numerator)
                                       * mpmath.log(n)))
        assert power_log_ceil(n, A) == expected


def test_power_log_ceil_fractional_exponent():
    # 16^(5/4) = 32 exactly; times ln 16
    with mpmath.workdps(60):
        expected = int(mpmath.ceil(32 * mpmath.log(16)))
    assert power_log_ceil(16, Fraction(5, 4)) == expected


def test_power_log_ceil_without_log_factor():
    assert power_log_ceil(16, Fraction(5, 4), times_log=False) == 32
    assert power_log_ceil(8, Fraction(2), times_log=False) == 64


def test_nlogn_ceil():
    for n in [3, 10, 1000, 2 ** 40, 2 ** 60]:
        with mpmath.workdps(60):
            expected = int(mpmath.ceil(n * mpmath.log(n)))
        assert nlogn_ceil(n) == expected


def test_float_log_big_int():
    n = 10 ** 400
    assert float_log(n) == pytest.approx(400 * math.log(10), rel=1e-12)
