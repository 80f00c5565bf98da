"""Field bundles: JSON serialization, construction, and re-certification.

A bundle carries everything the desk computations need about one field:
defining polynomial, integral basis, signature, S-unit generators with
torsion data, class-group information with whatever certificates can be
checked exactly in core, and provenance.

Rationals are serialized as "num/den" strings.  The loader re-certifies
every claim it can: basis closure and discriminant, signature, S-unit
independence and saturation, class-group consistency (recomputed below
the Minkowski ceiling, partially certified above it via exhibited
order-p ideal classes).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

from kummerlab.numfield import (CertificationError, ClassGroupRefusal,
                                FieldElement, NumberField, PrimeIdeal,
                                SUnitData, class_group, factor_prime,
                                is_pth_power, validate_sunits)

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def _ser_frac(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 \
        else str(x.numerator)


def _de_frac(s):
    if isinstance(s, int):
        return Fraction(s)
    if "/" in s:
        n, d = s.split("/")
        return Fraction(int(n), int(d))
    return Fraction(int(s))


def _ser_el(x: FieldElement):
    return [_ser_frac(Fraction(c, x.den)) for c in x.num]


def _de_el(F: NumberField, data):
    return F.from_fractions([_de_frac(s) for s in data])


@dataclass
class CatalogField:
    """A loaded and re-certified field bundle."""

    name: str
    p: int
    field: NumberField
    sunits: SUnitData
    S: list
    class_invariants: list          # Cl_S invariants as shipped/computed
    class_p_rank_certified: int     # certified lower bound on dim Cl_S[p]
    class_certificate: str
    class_generators: list          # [(PrimeIdeal, order, gamma)] certified
    h_prime_to_p: bool              # True when p | h is certifiably absent
    provenance: str
    sunit_report: object = None

    def zeta_p(self):
        return self.sunits.zeta_p()

    def __repr__(self):
        return f"CatalogField({self.name}, p={self.p})"


def bundle_to_json(name, p, F: NumberField, su: SUnitData, class_info,
                   provenance):
    out = {
        "name": name,
        "p": p,
        "poly": list(F.int_poly),
        "integral_basis": [[_ser_frac(x) for x in row] for row in F.basis],
        "signature": list(F.signature),
        "class_group": class_info,
        "sunits": {
            "torsion": _ser_el(su.zeta),
            "torsion_order": su.zeta_order,
            "n_F": su.n_F,
            "generators": [_ser_el(g) for g in su.gens],
        },
        "provenance": provenance,
    }
    if F.conj_matrix is not None:
        out["conjugation"] = [[_ser_frac(x) for x in row]
                              for row in F.conj_matrix]
    return out


def save_bundle(path, bundle):
    with open(path, "w") as fh:
        json.dump(bundle, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_bundle(source, recertify=True, class_ceiling=60):
    """Load a bundle (path or dict) and re-certify its claims."""
    if isinstance(source, str):
        with open(source) as fh:
            data = json.load(fh)
    else:
        data = source
    name = data["name"]
    p = int(data["p"])
    basis = [[_de_frac(x) for x in row] for row in data["integral_basis"]]
    conj = None
    if "conjugation" in data:
        conj = [[_de_frac(x) for x in row] for row in data["conjugation"]]
    F = NumberField(tuple(data["poly"]), basis=basis, conj=conj, name=name)
    if list(F.signature) != list(data["signature"]):
        raise CertificationError(f"{name}: signature mismatch")
    S = factor_prime(F, p)
    sud = data["sunits"]
    zeta = _de_el(F, sud["torsion"])
    su = SUnitData(F, p, zeta, int(sud["torsion_order"]), int(sud["n_F"]),
                   [_de_el(F, g) for g in sud["generators"]], S)
    report = None
    if recertify:
        report = validate_sunits(F, su)
        if not report.certified():
            raise CertificationError(f"{name}: S-unit certification failed: "
                                     f"{report.messages}")
    cg_info = data.get("class_group", {})
    invariants, prank, cert, gens, h_coprime = _certify_class_data(
        F, p, S, cg_info, class_ceiling)
    return CatalogField(name, p, F, su, S, invariants, prank, cert, gens,
                        h_coprime, data.get("provenance", ""), report)


def _certify_class_data(F, p, S, cg_info, ceiling):
    claimed = [int(d) for d in cg_info.get("invariants", [])]
    try:
        try:
            cg = class_group(F, S=S, ceiling=ceiling)
        except CertificationError as ex:
            # a common index divisor inside the Minkowski range: the
            # enumeration is structurally unavailable for this field
            prank_cert, gens = _certify_order_p_classes(F, p, cg_info)
            cert = f"unavailable ({ex})"
            if prank_cert:
                cert += f"+p-rank>={prank_cert}"
            return claimed, prank_cert, cert, gens, False
        computed = cg.s_invariants
        if cg.certificate == "exact-trivial":
            if claimed not in ([], computed):
                raise CertificationError(
                    f"{F.name}: shipped class group {claimed} contradicts "
                    "a certified trivial group")
            return [], 0, "exact-trivial", [], True
        # nontrivial upper bound: shipped data must agree or be weaker
        if claimed and claimed != computed:
            raise CertificationError(
                f"{F.name}: shipped invariants {claimed} != computed "
                f"upper bound {computed}")
        inv = computed or claimed
        prank_cert, gens = _certify_order_p_classes(F, p, cg_info)
        h_coprime = bool(inv) is False or all(d % p for d in inv)
        cert = cg.certificate
        if prank_cert > 0:
            cert = cert + "+p-rank-lower-bound"
        return inv, prank_cert, cert, gens, h_coprime and cert.startswith("exact")
    except ClassGroupRefusal:
        prank_cert, gens = _certify_order_p_classes(F, p, cg_info)
        cert = ("ingested" if prank_cert == 0
                else f"ingested+p-rank>={prank_cert}")
        return claimed, prank_cert, cert, gens, False


def _certify_order_p_classes(F, p, cg_info):
    """Certify shipped order-p ideal classes, exactly.

    Each entry supplies a prime ideal Q and a generator gamma of Q^p.
    Q^p == (gamma) is an HNF identity; Q principal iff gamma lies in
    U*(F^x)^p, decided by an is_pth_power sweep over unit twists.
    Pairwise products certify independence, giving a lower bound on the
    p-rank of the class group.
    """
    entries = cg_info.get("order_p_certificates", [])
    if not entries:
        return 0, []
    from kummerlab.numfield import _ideal_product_hnf
    from kummerlab.linalg import zmat_hnf
    units = cg_info.get("unit_twists")
    if units is None:
        raise CertificationError("order-p certificates need unit twists")
    twists = [_de_el(F, u) for u in units]
    certified = []
    for ent in entries:
        q, gen = int(ent["prime"][0]), tuple(int(c) for c in ent["prime"][1])
        k = int(ent.get("exponent", 1))
        P = next(Q for Q in factor_prime(F, q) if Q.gen_poly == gen)
        gamma = _de_el(F, ent["generator_of_pth_power"])
        hnf = P.hnf()
        power = hnf
        for _ in range(p * k - 1):
            power = _ideal_product_hnf(F, power, hnf)
        gamma_ideal = _principal_hnf(F, gamma)
        if power != gamma_ideal:
            raise CertificationError(
                f"{F.name}: (Q^{k})^{p} != (gamma) for {P}")
        certified.append((P, gamma))
    # non-principality of all nontrivial products => rank lower bound
    import itertools
    k = len(certified)
    for exps in itertools.product(range(p), repeat=k):
        if not any(exps):
            continue
        g = F.one()
        for (P, gamma), e in zip(certified, exps):
            g = g * gamma ** e
        if _in_unit_times_pth_powers(F, g, twists, p):
            raise CertificationError(
                f"{F.name}: ideal class product {exps} is principal; "
                "shipped p-rank claim fails")
    return k, [(P, p, gamma) for (P, gamma) in certified]


def _principal_hnf(F, x):
    from kummerlab.linalg import zmat_hnf
    rows = []
    for i in range(F.n):
        b = F.el([1 if k == i else 0 for k in range(F.n)])
        y = x * b
        if y.den != 1:
            raise CertificationError("principal generator not integral")
        rows.append(tuple(y.num))
    return zmat_hnf(rows)


def _in_unit_times_pth_powers(F, g, twists, p):
    import itertools
    for exps in itertools.product(range(p), repeat=len(twists)):
        u = F.one()
        for t, e in zip(twists, exps):
            if e:
                u = u * t ** e
        if is_pth_power(F, g * u, p) is not None:
            return True
    return False


# ---------------------------------------------------------------------------
# catalog constructors (used by scripts/make_catalog.py and tests)
# ---------------------------------------------------------------------------

def build_cyclotomic(m, p):
    """Q(zeta_m) for m in {3, 9, 5} with cyclotomic S-units."""
    if m == 3:
        poly = (1, 1, 1)
        deg, zeta_order, n_f = 2, 6, 1
        gen_exps = [1]
    elif m == 9:
        poly = (1, 0, 0, 1, 0, 0, 1)
        deg, zeta_order, n_f = 6, 18, 2
        gen_exps = [1, 2, 4]
    elif m == 5:
        poly = (1, 1, 1, 1, 1)
        deg, zeta_order, n_f = 4, 10, 1
        gen_exps = [1, 2]
    else:
        raise ValueError("catalog cyclotomic fields: m in {3, 5, 9}")
    Fplain = NumberField(poly, name=f"Qzeta{m}")
    z = Fplain.theta()
    conj = [((z ** (m - 1)) ** k).as_fractions() for k in range(deg)]
    F = NumberField(poly, conj=conj, name=f"Qzeta{m}")
    z = F.theta()
    # torsion generator of order 2m (m odd): -zeta^((m+1)/2) has order 2m
    zeta = -(z ** ((m + 1) // 2))
    gens = [F.one() - z ** a for a in gen_exps]
    S = factor_prime(F, p)
    su = SUnitData(F, p, zeta, zeta_order, n_f, gens, S)
    return F, su


def build_sqrt_compositum(q, p=3):
    """Q(sqrt(q), zeta_6) for prime q = 1 mod 4, theta = sqrt(q) + zeta_6.

    Integral basis {1, w3, wq, w3*wq} with w3 = zeta_6, wq = (1+sqrt q)/2
    (the two quadratic discriminants -3 and q are coprime).
    """
    if q % 4 != 1:
        raise ValueError("need q = 1 mod 4 so that (1+sqrt q)/2 is integral")
    poly = (q * q + q + 1, 2 * q - 2, -(2 * q - 3), -2, 1)
    Fp = NumberField(poly, name=f"Qsqrt{q}zeta6pow")
    th = Fp.theta()
    z6 = (th * th - Fp.from_int(q + 1)) / (Fp.from_int(2) * th - Fp.one())
    if not (z6 * z6 - z6 + Fp.one()).is_zero():
        raise ArithmeticError("zeta_6 expression failed")
    sq = th - z6
    wq = (Fp.one() + sq) / Fp.from_int(2)
    basis = [Fp.one().power_coords(), z6.power_coords(),
             wq.power_coords(), (z6 * wq).power_coords()]
    F0 = NumberField(poly, basis=basis, name=f"Qsqrt{q}zeta6")
    ti = F0.theta()
    z6b = (ti * ti - F0.from_int(q + 1)) / (F0.from_int(2) * ti - F0.one())
    theta_conj = ti + F0.one() - F0.from_int(2) * z6b
    conj = _hom_matrix(F0, theta_conj)
    F = NumberField(poly, basis=basis, conj=conj, name=f"Qsqrt{q}zeta6")
    return F


def _hom_matrix(F, theta_img):
    """Matrix of the ring hom theta -> theta_img over the integral basis."""
    rows = []
    for i in range(F.n):
        b = F.el([1 if k == i else 0 for k in range(F.n)])
        pc = b.power_coords()
        img = F.zero()
        tp = F.one()
        for j, c in enumerate(pc):
            img = img + F.from_rational(c) * tp
            if j + 1 < len(pc):
                tp = tp * theta_img
        rows.append(img.as_fractions())
    return rows


def automorphism_matrix(F, theta_img):
    """Public wrapper for Galois action matrices on catalog fields."""
    return _hom_matrix(F, theta_img)


def default_catalog(recertify=True, names=None):
    """Load every bundle shipped in the package data directory."""
    out = {}
    for fn in sorted(os.listdir(DATA_DIR)):
        if fn.endswith(".json"):
            nm = fn[:-5]
            if names and nm not in names:
                continue
            out[nm] = load_bundle(os.path.join(DATA_DIR, fn),
                                  recertify=recertify)
    return out


_CAT_CACHE = {}


def catalog_field(name, recertify=True):
    """Load one shipped bundle by name (cached)."""
    key = (name, recertify)
    if key not in _CAT_CACHE:
        _CAT_CACHE[key] = load_bundle(os.path.join(DATA_DIR, name + ".json"),
                                      recertify=recertify)
    return _CAT_CACHE[key]


# ---------------------------------------------------------------------------
# construction-time search helpers (results are certified on load)
# ---------------------------------------------------------------------------

def search_pth_power_generator(F: NumberField, P: PrimeIdeal, p, radius=4,
                               exponent=1):
    """Search a generator of (P^exponent)^p by short-vector enumeration.

    Returns gamma with (gamma) == P^(p*exponent) exactly, or None if the
    search radius is exhausted (inconclusive)."""
    import itertools
    from kummerlab.numfield import _ideal_product_hnf, _reduce_lattice
    hnf = P.hnf()
    power = hnf
    for _ in range(p * exponent - 1):
        power = _ideal_product_hnf(F, power, hnf)
    target = P.norm() ** (p * exponent)
    rows = _reduce_lattice(F, power)
    for coeffs in itertools.product(range(-radius, radius + 1),
                                    repeat=len(rows)):
        if not any(coeffs):
            continue
        vec = [0] * F.n
        for c, row in zip(coeffs, rows):
            if c:
                for i in range(F.n):
                    vec[i] += c * row[i]
        x = F.el(vec)
        if x.is_zero():
            continue
        nrm = x.norm()
        if abs(int(nrm.numerator)) == target and nrm.denominator == 1:
            if _principal_hnf(F, x) == zmat_hnf_of(power):
                return x
    return None


def zmat_hnf_of(rows):
    from kummerlab.linalg import zmat_hnf
    return zmat_hnf([list(r) for r in rows])
