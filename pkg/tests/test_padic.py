import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kummerlab.padic import (PadicNumber, PrecisionError, lift_root,
                             padic_exp, padic_log, sqrt_exists)


def test_log_series_example():
    # log_3(4) = log(1+3) = 3 - 9/2 + 27/3 - ... truncated
    lg = padic_log(PadicNumber.from_rational(3, 4, 1, 15))
    acc = Fraction(0)
    for n in range(1, 60):
        acc += Fraction((-1) ** (n + 1) * 3 ** n, n)
    mod = 3 ** 15
    want = acc.numerator * pow(acc.denominator, -1, mod) % mod
    assert lg.lift() % mod == want


def test_log_branch_and_torsion():
    assert padic_log(PadicNumber.from_rational(3, 3, 1, 15)).is_zero()
    assert padic_log(PadicNumber.from_rational(3, 9, 1, 15)).is_zero()
    assert padic_log(PadicNumber.from_rational(3, -1, 1, 15)).is_zero()
    assert padic_log(PadicNumber.from_rational(5, 5, 1, 15)).is_zero()


def test_log_homomorphism_example():
    a = padic_log(PadicNumber.from_rational(3, 4, 1, 15))
    b = padic_log(PadicNumber.from_rational(3, 7, 1, 15))
    c = padic_log(PadicNumber.from_rational(3, 28, 1, 15))
    assert a + b == c


@given(st.sampled_from([3, 5, 7]), st.integers(1, 10 ** 6),
       st.integers(1, 10 ** 6))
@settings(max_examples=200, deadline=None)
def test_log_is_homomorphism(p, a, b):
    if a % p == 0 or b % p == 0:
        a, b = a * p + 1, b * p + 1
    x = PadicNumber.from_rational(p, a, 1, 20)
    y = PadicNumber.from_rational(p, b, 1, 20)
    assert padic_log(x) + padic_log(y) == padic_log(x * y)


def test_exp_log_inverse_on_deep_disc():
    for p in (3, 5):
        for k in (1, 2, 5):
            z = PadicNumber.from_rational(p, p * k, 1, 12)
            assert padic_log(padic_exp(z)) == z


def test_sqrt_exists():
    assert sqrt_exists(3, 7)
    assert not sqrt_exists(3, 5)
    assert sqrt_exists(3, 63)        # 9 * 7
    assert not sqrt_exists(3, 3)
    assert sqrt_exists(7, 2)


def test_lift_root():
    r = lift_root(7, [1, 1, 1], 2, 25)
    assert (r * r + r + 1) % 7 ** 25 == 0


def test_zero_handling():
    z = PadicNumber.from_rational(3, 0, 1, 10)
    assert z.is_zero()
    with pytest.raises(ValueError):
        padic_log(z)
