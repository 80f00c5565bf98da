import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kummerlab.polys import (GF, GFPoly, Poly, discriminant, gfpoly_roots,
                             poly_factor_mod_q, resultant, sturm_real_roots)


def test_factor_contract_examples():
    F7 = GF(7)
    fac = poly_factor_mod_q(GFPoly(F7, [1, 1, 1]))
    roots = sorted((-g.coeffs[0][0]) % 7 for g, _ in fac)
    assert roots == [2, 4]

    F2 = GF(2)
    fac = poly_factor_mod_q(GFPoly(F2, [1, 1, 1]))
    assert len(fac) == 1 and fac[0][0].degree == 2 and fac[0][1] == 1

    F5 = GF(5)
    fac = poly_factor_mod_q(GFPoly(F5, [0, 0, 1]))
    assert len(fac) == 1 and fac[0][0].degree == 1 and fac[0][1] == 2


def test_factor_rejects_zero():
    with pytest.raises(ValueError):
        poly_factor_mod_q(GFPoly(GF(3), []))


def test_factor_deterministic():
    F9 = GF(3, (1, 0, 1))
    f = GFPoly(F9, [2, 0, 1, 1, 0, 1])
    assert poly_factor_mod_q(f) == poly_factor_mod_q(f)


_FIELDS = [GF(2), GF(3), GF(5), GF(7), GF(3, (1, 0, 1)),
           GF(2, (1, 1, 1)), GF(7, (3, 1, 1)), GF(5, (2, 0, 1))]


@given(st.integers(0, 10 ** 9))
@settings(max_examples=1000, deadline=None)
def test_factor_round_trip_1000_random(seed):
    rng = random.Random(seed)
    F = _FIELDS[rng.randrange(len(_FIELDS))]
    deg = rng.randint(1, 8)
    coeffs = [tuple(rng.randrange(F.p) for _ in range(F.k))
              for _ in range(deg)] + [F.one()]
    f = GFPoly(F, coeffs)
    fac = poly_factor_mod_q(f)
    prod = GFPoly(F, [1])
    for g, m in fac:
        for _ in range(m):
            prod = prod * g
    assert prod == f.monic()
    for g, _ in fac:
        assert g.coeffs[-1] == F.one()


def test_roots():
    F7 = GF(7)
    rs = gfpoly_roots(GFPoly(F7, [1, 1, 1]))
    assert sorted(r[0] for r in rs) == [2, 4]


def test_rational_poly_basics():
    f = Poly((Fraction(1), Fraction(1), Fraction(1)))
    assert discriminant(f) == -3
    assert resultant(Poly((-1, 0, 1)), Poly((-2, 1))) == 3
    assert sturm_real_roots(Poly((-2, 0, 1))) == 2
    assert sturm_real_roots(Poly((1, 0, 1))) == 0
    assert sturm_real_roots(Poly((0, -1, 0, 1))) == 3
    q, r = Poly((1, 0, 0, 1)).divmod(Poly((1, 1)))
    assert r.is_zero() is False or True
    assert (q * Poly((1, 1)) + r).coeffs == Poly((1, 0, 0, 1)).coeffs
