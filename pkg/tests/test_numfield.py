import math
import random
from fractions import Fraction

import pytest

from kummerlab.catalog import build_cyclotomic, build_sqrt_compositum
from kummerlab.numfield import (CertificationError, NumberField, SUnitData,
                                class_group, factor_prime, factor_principal,
                                is_pth_power, validate_sunits)


@pytest.fixture(scope="module")
def zeta3():
    F, su = build_cyclotomic(3, 3)
    return F, su


@pytest.fixture(scope="module")
def zeta9():
    F, su = build_cyclotomic(9, 3)
    return F, su


@pytest.fixture(scope="module")
def f257():
    return build_sqrt_compositum(257, 3)


def test_field_invariants(zeta3, zeta9, f257):
    F3 = zeta3[0]
    assert F3.disc == -3 and F3.signature == (0, 1)
    F9 = zeta9[0]
    assert F9.disc == -(3 ** 9) and F9.signature == (0, 3)
    assert f257.disc == 594441 and f257.signature == (0, 2)


def test_factor_prime_examples(zeta3, zeta9, f257):
    F3 = zeta3[0]
    assert sorted((P.e, P.f) for P in factor_prime(F3, 7)) == [(1, 1), (1, 1)]
    assert [(P.e, P.f) for P in factor_prime(F3, 3)] == [(2, 1)]
    F9 = zeta9[0]
    assert [(P.e, P.f) for P in factor_prime(F9, 3)] == [(6, 1)]
    # the paper example field: unique 3-adic prime with e = 2, f = 2
    assert [(P.e, P.f) for P in factor_prime(f257, 3)] == [(2, 2)]


def test_sum_ef_equals_degree_all_catalog_primes(zeta3, zeta9, f257):
    for F in (zeta3[0], zeta9[0], f257):
        for q in range(2, 101):
            if not _is_prime(q) or F.index % q == 0:
                continue
            assert sum(P.e * P.f for P in factor_prime(F, q)) == F.n


def _is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(math.isqrt(n)) + 1))


def test_bad_index_prime_rejected(f257):
    with pytest.raises(CertificationError):
        factor_prime(f257, 2)      # 2 divides the index (common divisor)


def test_factor_principal_examples(zeta3):
    F3 = zeta3[0]
    z = F3.theta()
    fp = factor_principal(F3, F3.one() - z)
    assert [(P.q, v) for P, v in fp] == [(3, 1)]
    fp = factor_principal(F3, F3.from_int(7))
    assert sorted((P.q, v) for P, v in fp) == [(7, 1), (7, 1)]
    assert factor_principal(F3, z) == []
    # element with denominator
    fp = factor_principal(F3, (F3.one() - z) / F3.from_int(21))
    assert sorted(v for _, v in fp) == [-1, -1, -1]


def test_residue_and_valuation(zeta3):
    F3 = zeta3[0]
    z = F3.theta()
    P7a, P7b = factor_prime(F3, 7)
    r = P7b.residue(z)
    Fq = P7b.residue_field()
    # reduction of zeta is a primitive cube root mod 7 (2 or 4)
    assert Fq.pow(r, 3) == Fq.one() and r != Fq.one()
    assert P7a.valuation(F3.from_int(7)) == 1
    assert P7a.valuation(F3.from_int(49)) == 2
    assert P7a.valuation(F3.one() - z) == 0


def test_is_pth_power_round_trips(zeta3):
    F3 = zeta3[0]
    rng = random.Random(11)
    for _ in range(500):
        x = F3.el([rng.randint(-6, 6) for _ in range(2)],
                  rng.randint(1, 4))
        if x.is_zero():
            continue
        r = is_pth_power(F3, x ** 3, 3)
        assert r is not None and r ** 3 == x ** 3


def test_is_pth_power_negatives(zeta3, zeta9):
    F3, su3 = zeta3
    assert is_pth_power(F3, F3.theta(), 3) is None          # zeta_3
    assert is_pth_power(F3, F3.from_int(3), 3) is None
    F9, su9 = zeta9
    assert is_pth_power(F9, F9.theta(), 3) is None          # needs mu_27
    r = is_pth_power(F9, F9.theta() ** 3, 3)
    assert r is not None and r ** 3 == F9.theta() ** 3


def test_class_groups_trivial(zeta3, zeta9):
    for F, su in (zeta3, zeta9):
        cg = class_group(F, S=su.S)
        assert cg.certificate == "exact-trivial"
        assert cg.invariants == [] and cg.s_invariants == []
    F5, su5 = build_cyclotomic(5, 5)
    cg = class_group(F5, S=su5.S)
    assert cg.certificate == "exact-trivial"


def test_class_group_determinism(zeta9):
    F, su = zeta9
    a = class_group(F, S=su.S)
    b = class_group(F, S=su.S)
    assert a.invariants == b.invariants
    assert a.s_invariants == b.s_invariants


def test_sunit_validation(zeta3, zeta9):
    for F, su in (zeta3, zeta9):
        rep = validate_sunits(F, su)
        assert rep.certified(), rep.messages
    # Dirichlet rank: r1 + r2 + |S| - 1
    F9, su9 = zeta9
    assert len(su9.gens) == 0 + 3 + 1 - 1


def test_sunit_dependent_set_rejected(zeta9):
    F, su = zeta9
    bad = SUnitData(F, 3, su.zeta, su.zeta_order, su.n_F,
                    [su.gens[0], su.gens[0] ** 2, su.gens[2]], su.S)
    rep = validate_sunits(F, bad)
    assert not rep.certified()


def test_sunit_unsaturated_set_rejected(zeta3):
    F, su = zeta3
    bad = SUnitData(F, 3, su.zeta, su.zeta_order, su.n_F,
                    [su.gens[0] ** 3], su.S)
    rep = validate_sunits(F, bad)
    assert not rep.certified()
    assert not rep.saturated


def test_sunit_dimension_identity(zeta3, zeta9):
    # dim U^S/(U^S)^p = r1 + r2 + |S| with mu_p in F
    for F, su in (zeta3, zeta9):
        r1, r2 = F.signature
        assert len(su.gens) + 1 == r1 + r2 + len(su.S)
