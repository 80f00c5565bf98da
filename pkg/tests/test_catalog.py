import copy
import json
import os

import pytest

from kummerlab.catalog import (DATA_DIR, CertificationError, catalog_field,
                               default_catalog, load_bundle)

NAMES = ["Qzeta3", "Qzeta9", "Qzeta5", "Qsqrt13zeta6", "Qsqrt257zeta6"]


@pytest.fixture(scope="module")
def catalog():
    return default_catalog()


def test_all_bundles_load_and_certify(catalog):
    assert sorted(catalog) == sorted(NAMES)
    for name, cf in catalog.items():
        assert cf.sunit_report.certified(), (name, cf.sunit_report.messages)


def test_cyclotomic_class_groups_trivial(catalog):
    for name in ("Qzeta3", "Qzeta9", "Qzeta5"):
        assert catalog[name].class_certificate == "exact-trivial"
        assert catalog[name].h_prime_to_p


def test_f257_p_rank_certified(catalog):
    cf = catalog["Qsqrt257zeta6"]
    assert cf.class_p_rank_certified >= 2
    assert cf.class_invariants == [3, 3]
    assert not cf.h_prime_to_p           # 3 divides h; no m-certificate


def test_f257_splitting(catalog):
    cf = catalog["Qsqrt257zeta6"]
    assert [(P.e, P.f) for P in cf.S] == [(2, 2)]


def test_f13_two_primes(catalog):
    cf = catalog["Qsqrt13zeta6"]
    assert sorted((P.e, P.f) for P in cf.S) == [(2, 1), (2, 1)]


def test_signature_and_torsion(catalog):
    expect = {"Qzeta3": ((0, 1), 6, 1), "Qzeta9": ((0, 3), 18, 2),
              "Qzeta5": ((0, 2), 10, 1), "Qsqrt13zeta6": ((0, 2), 6, 1),
              "Qsqrt257zeta6": ((0, 2), 6, 1)}
    for name, (sig, zorder, nf) in expect.items():
        cf = catalog[name]
        assert cf.field.signature == sig
        assert cf.sunits.zeta_order == zorder
        assert cf.sunits.n_F == nf
        z = cf.zeta_p()
        assert z ** cf.p == cf.field.one() and z != cf.field.one()


def test_tampered_bundle_rejected():
    path = os.path.join(DATA_DIR, "Qzeta9.json")
    with open(path) as fh:
        data = json.load(fh)
    bad = copy.deepcopy(data)
    # flip one S-unit coordinate
    bad["sunits"]["generators"][0][0] = "2"
    with pytest.raises(CertificationError):
        load_bundle(bad)


def test_tampered_signature_rejected():
    path = os.path.join(DATA_DIR, "Qzeta3.json")
    with open(path) as fh:
        data = json.load(fh)
    bad = copy.deepcopy(data)
    bad["signature"] = [2, 0]
    with pytest.raises(CertificationError):
        load_bundle(bad)
