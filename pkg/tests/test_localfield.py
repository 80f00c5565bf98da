import random

import pytest

from kummerlab.linalg import zmat_det
from kummerlab.localfield import (LocalExtension, UnitClassMap, hensel_factor,
                                  local_log, local_norm, pth_root_of_unity,
                                  _sylvester)
from kummerlab.polys import Poly

F257_POLY = Poly((66307, 512, -511, -2, 1))
F13_POLY = Poly((183, 24, -23, -2, 1))


def test_hensel_split_example():
    Ls = hensel_factor(Poly((1, 1, 1)), 7, 20)
    assert sorted((L.e, L.f) for L in Ls) == [(1, 1), (1, 1)]


def test_hensel_ramified_example():
    Ls = hensel_factor(Poly((1, 1, 1)), 3, 20)
    assert [(L.e, L.f) for L in Ls] == [(2, 1)]


def test_hensel_f257_unique_prime():
    # the quartic field gets a unique 3-adic prime with e = f = 2
    Ls = hensel_factor(F257_POLY, 3, 25)
    assert [(L.e, L.f) for L in Ls] == [(2, 2)]


def test_hensel_f13_two_ramified_primes():
    Ls = hensel_factor(F13_POLY, 3, 25)
    assert sorted((L.e, L.f) for L in Ls) == [(2, 1), (2, 1)]


def test_hensel_separation_certificate():
    for poly, p in [(Poly((1, 1, 1)), 7), (F13_POLY, 3), (F13_POLY, 13)]:
        Ls = hensel_factor(poly, p, 22)
        for i in range(len(Ls)):
            for j in range(i + 1, len(Ls)):
                r = zmat_det(_sylvester(list(Ls[i].g), list(Ls[j].g)))
                assert r % p != 0
        assert sum(L.e * L.f for L in Ls) == poly.degree


def test_local_valuations():
    L = hensel_factor(Poly((1, 0, 0, 1, 0, 0, 1)), 3, 25)[0]
    z = L.theta()
    assert L.val(L.sub(z, L.one())) == 1
    assert L.val(L.el(3)) == 6
    assert L.val(L.sub(L.pow(z, 3), L.one())) == 3
    assert L.norm(L.sub(L.one(), z)) % 3 ** 10 == 3


def test_kummer_extension_norms():
    K = hensel_factor(Poly((1, 1, 1)), 3, 25)[0]
    b = K.add(K.one(), K.el(3))
    ext = LocalExtension.kummer(K, b)
    # N(t) = b for odd p
    assert local_norm(ext, ext.el_t()) == b
    # N(y) = y^p for base elements
    y = K.el((5, 7))
    assert local_norm(ext, ext.el_base(y)) == K.pow(y, 3)


def test_norm_multiplicative_200_random_pairs():
    K = hensel_factor(Poly((1, 1, 1)), 3, 12)[0]
    b = K.theta()   # zeta_3 as radicand
    ext = LocalExtension.kummer(K, b)
    rng = random.Random(17)
    for _ in range(200):
        x = tuple(K.el(tuple(rng.randrange(3 ** 5) for _ in range(K.n)))
                  for _ in range(3))
        y = tuple(K.el(tuple(rng.randrange(3 ** 5) for _ in range(K.n)))
                  for _ in range(3))
        assert ext.norm(ext.mul(x, y)) == K.mul(ext.norm(x), ext.norm(y))


@pytest.mark.parametrize("poly,p,dim", [
    (Poly((1, 1, 1)), 3, 4),
    (Poly((1, 0, 0, 1, 0, 0, 1)), 3, 8),
    (Poly((1, 1, 1, 1, 1)), 5, 6),
    (F257_POLY, 3, 6),
])
def test_unit_class_map_dimension(poly, p, dim):
    K = hensel_factor(poly, p, 25)[0]
    ucm = UnitClassMap(K)
    assert ucm.dim == dim == K.n + 2


def test_unit_class_map_kernel_and_basis():
    K = hensel_factor(Poly((1, 0, 0, 1, 0, 0, 1)), 3, 25)[0]
    ucm = UnitClassMap(K)
    rng = random.Random(23)
    for _ in range(60):
        x = K.el(tuple(rng.randrange(3 ** 6) for _ in range(K.n)))
        if K.is_zero(x):
            continue
        assert not any(ucm.eta(K.pow(x, 3)))
    for s in range(ucm.dim):
        want = tuple(1 if i == s else 0 for i in range(ucm.dim))
        assert ucm.eta(ucm.basis_element(s)) == want
    assert ucm.eta(K.uniformizer)[0] == 1


def test_unit_class_map_needs_mu_p():
    # Q_7 contains mu_3? no: e=1, p-1=2 does not divide... 3-1=2 | e=1 fails
    K = hensel_factor(Poly((1, 1, 1)), 7, 20)[0]   # Q_7 (split factor)
    K.p = 7  # a plain Q_7; mu_7 not inside
    with pytest.raises(ValueError):
        UnitClassMap(K)


def test_pth_root_of_unity():
    K = hensel_factor(Poly((1, 1, 1)), 3, 25)[0]
    z = pth_root_of_unity(K)
    d = K.sub(K.pow(z, 3), K.one())
    assert K.is_zero(d) or K.val(d) >= K.e * (K.N - 2)
    assert not K.is_zero(K.sub(z, K.one()))
    ucm = UnitClassMap(K)
    assert any(ucm.eta(z))


def test_local_log_homomorphism():
    K = hensel_factor(Poly((1, 0, 0, 1, 0, 0, 1)), 3, 25)[0]
    rng = random.Random(5)
    for _ in range(10):
        u = K.add(K.one(), K.mul(K.el(3), K.el(
            tuple(rng.randrange(3 ** 4) for _ in range(K.n)))))
        v = K.add(K.one(), K.mul(K.el(3), K.el(
            tuple(rng.randrange(3 ** 4) for _ in range(K.n)))))
        lu, ku = local_log(K, u)
        lv, kv = local_log(K, v)
        luv, kuv = local_log(K, K.mul(u, v))
        # scale-match: log(u^s) vectors satisfy additivity after rescale
        s = 3 ** (max(ku, kv, kuv))
        a = K.scalar_mul(3 ** (max(ku, kv, kuv) - ku), K.el(lu))
        b = K.scalar_mul(3 ** (max(ku, kv, kuv) - kv), K.el(lv))
        c = K.scalar_mul(3 ** (max(ku, kv, kuv) - kuv), K.el(luv))
        assert K.is_zero(K.sub(K.add(a, b), c)) or \
            K.val(K.sub(K.add(a, b), c)) > K.e * (K.N - 6)
