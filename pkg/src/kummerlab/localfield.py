"""Completions F_v: Hensel factorization, local arithmetic, and the
F_p-space F_v^x/(F_v^x)^p with an explicit discrete logarithm.

A `LocalField` is Z_p[x]/(g) at precision p^N where g is a certified
irreducible factor of a global defining polynomial.  Elements are int
tuples (power-basis coordinates mod p^N).  Valuations are computed by
repeated exact division by the uniformizer, never by approximation.

The unit dlog walks the principal-unit filtration level by level: basis
levels i with p not dividing i contribute residue-field coordinates, the
critical level p*e/(p-1) contributes the mu_p coordinate through the
Artin-Schreier defect, and everything deeper is peeled off as p-th powers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from kummerlab.linalg import zmat_det
from kummerlab.padic import PadicNumber, PrecisionError, sqrt_exists, lift_root
from kummerlab.polys import GF, GFPoly, poly_factor_mod_q, gfpoly_gcd, Poly


# ---------------------------------------------------------------------------
# coefficient rings for Hensel work: Z/p^N and unramified W/p^N
# ---------------------------------------------------------------------------

class CoeffRing:
    """Z_p or an unramified extension, truncated mod p^N.

    Elements are ints (k == 1) or int tuples of length k.
    """

    def __init__(self, p, N, modulus=None):
        self.p = p
        self.N = N
        self.pn = p ** N
        if modulus is None:
            self.k = 1
            self.res_field = GF(p)
        else:
            self.k = len(modulus) - 1
            self.modulus = tuple(c % self.pn for c in modulus)
            self.res_field = GF(p, tuple(c % p for c in modulus))

    def el(self, x):
        if self.k == 1:
            return int(x) % self.pn
        if isinstance(x, int):
            return (x % self.pn,) + (0,) * (self.k - 1)
        v = [int(c) % self.pn for c in x][:self.k]
        return tuple(v + [0] * (self.k - len(v)))

    def zero(self):
        return self.el(0)

    def one(self):
        return self.el(1)

    def is_zero(self, a):
        return a == 0 if self.k == 1 else all(c == 0 for c in a)

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.pn
        return tuple((x + y) % self.pn for x, y in zip(a, b))

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.pn
        return tuple((x - y) % self.pn for x, y in zip(a, b))

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.pn
        return tuple((-x) % self.pn for x in a)

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.pn
        out = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        m = self.modulus
        for i in reversed(range(self.k, len(out))):
            c = out[i] % self.pn
            if c:
                for j in range(self.k):
                    out[i - self.k + j] -= c * m[j]
            out[i] = 0
        return tuple(c % self.pn for c in out[:self.k])

    def residue(self, a):
        """Image in the residue field (a GF element tuple)."""
        if self.k == 1:
            return self.res_field.el(a % self.p)
        return self.res_field.el(tuple(c % self.p for c in a))

    def lift_res(self, r):
        """Any lift of a residue-field element."""
        if self.k == 1:
            return r[0] % self.pn
        return self.el(tuple(r))

    def is_unit(self, a):
        return not self.res_field.is_zero_el(self.residue(a))

    def inv(self, a):
        """Inverse of a unit, by Hensel iteration on the residue inverse."""
        if not self.is_unit(a):
            raise ZeroDivisionError("not a unit in CoeffRing")
        if self.k == 1:
            return pow(a, -1, self.pn)
        x = self.lift_res(self.res_field.inv(self.residue(a)))
        # Newton: x <- x(2 - a x), doubling correct digits
        steps = max(1, self.N.bit_length() + 1)
        for _ in range(steps):
            ax = self.mul(a, x)
            x = self.mul(x, self.sub(self.el(2), ax))
        return x

    def val(self, a):
        """p-valuation (min over coordinates); N if zero at precision."""
        coords = (a,) if self.k == 1 else a
        v = self.N
        for c in coords:
            c %= self.pn
            if c:
                w = 0
                while c % self.p == 0:
                    c //= self.p
                    w += 1
                v = min(v, w)
        return v

    def divide_exact_p(self, a, k=1):
        q = self.p ** k
        if self.k == 1:
            if a % q:
                raise ValueError("inexact division by p")
            return a // q % self.pn
        if any(c % q for c in a):
            raise ValueError("inexact division by p")
        return tuple(c // q % self.pn for c in a)


# generic dense polynomials over a CoeffRing: lists of ring elements
def rp_trim(R, cs):
    cs = list(cs)
    while cs and R.is_zero(cs[-1]):
        cs.pop()
    return cs


def rp_mul(R, a, b):
    if not a or not b:
        return []
    out = [R.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not R.is_zero(x):
            for j, y in enumerate(b):
                out[i + j] = R.add(out[i + j], R.mul(x, y))
    return rp_trim(R, out)


def rp_add(R, a, b):
    n = max(len(a), len(b))
    get = lambda c, i: c[i] if i < len(c) else R.zero()
    return rp_trim(R, [R.add(get(a, i), get(b, i)) for i in range(n)])


def rp_sub(R, a, b):
    n = max(len(a), len(b))
    get = lambda c, i: c[i] if i < len(c) else R.zero()
    return rp_trim(R, [R.sub(get(a, i), get(b, i)) for i in range(n)])


def rp_divmod(R, a, b):
    """Division by a polynomial with unit leading coefficient."""
    b = rp_trim(R, b)
    if not b:
        raise ZeroDivisionError
    lcinv = R.inv(b[-1])
    rem = list(a)
    d = len(b) - 1
    q = [R.zero()] * max(0, len(rem) - d)
    for i in reversed(range(len(q))):
        if len(rem) < i + d + 1:
            continue
        c = R.mul(rem[i + d] if i + d < len(rem) else R.zero(), lcinv)
        if not R.is_zero(c):
            q[i] = c
            for j in range(d + 1):
                rem[i + j] = R.sub(rem[i + j], R.mul(c, b[j]))
    return rp_trim(R, q), rp_trim(R, rem[:d])


def rp_to_gf(R, a):
    return GFPoly(R.res_field, [R.residue(c) for c in a])


def rp_from_gf(R, g):
    return [R.lift_res(c) for c in g.coeffs]


def hensel_lift_factors(R, f, g0, h0):
    """Lift a coprime factorization f = g0*h0 mod p to mod p^N.

    f, g0, h0: polynomials over R, all monic, with gbar0, hbar0 coprime
    in the residue field.  Linear lifting, one digit per pass.
    """
    Fq = R.res_field
    gbar, hbar = rp_to_gf(R, g0), rp_to_gf(R, h0)
    # Bezout: A gbar + B hbar = 1
    A, B = _gf_bezout(gbar, hbar)
    g, h = list(g0), list(h0)
    for k in range(1, R.N):
        e = rp_sub(R, f, rp_mul(R, g, h))
        if not e:
            break
        if any(R.val(c) < k for c in e):
            raise PrecisionError("hensel lifting lost digits")
        d = GFPoly(Fq, [Fq.el(_top_digit(R, c, k)) for c in e])
        if d.is_zero():
            continue
        s = (d * B) % gbar
        # t = (d - s*hbar)/gbar, exact in F_q[x]
        t, rem = (d - s * hbar).divmod(gbar)
        if not rem.is_zero():
            raise ArithmeticError("hensel correction failed")
        pk = R.p ** k
        g = rp_add(R, g, [_scale_int(R, c, pk) for c in rp_from_gf(R, s)])
        h = rp_add(R, h, [_scale_int(R, c, pk) for c in rp_from_gf(R, t)])
    return g, h


def _top_digit(R, c, k):
    """(c / p^k) mod p as a residue-field element tuple."""
    coords = (c,) if R.k == 1 else c
    out = tuple((x // R.p ** k) % R.p for x in coords)
    return out if R.k > 1 else out


def _scale_int(R, a, m):
    if R.k == 1:
        return a * m % R.pn
    return tuple(c * m % R.pn for c in a)


def _gf_bezout(a: GFPoly, b: GFPoly):
    F = a.F
    r0, r1 = a, b
    s0, s1 = GFPoly(F, [1]), GFPoly(F, [])
    t0, t1 = GFPoly(F, []), GFPoly(F, [1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.degree != 0:
        raise ValueError("polynomials not coprime in residue field")
    inv = F.inv(r0.coeffs[0])
    return s0.scale(inv), t0.scale(inv)


# ---------------------------------------------------------------------------
# LocalField
# ---------------------------------------------------------------------------

class LocalField:
    """F_v = Q_p[x]/(g) with certified ramification data.

    g: monic integer coefficient tuple (ascending) reduced mod p^N,
    irreducible over Q_p with e*f = deg g.  Elements of the valuation
    ring are int tuples (coordinates over 1, x, ..., x^{n-1} mod p^N).
    """

    def __init__(self, p, g, e, f, N, certificate=""):
        self.p = p
        self.N = N
        self.pn = p ** N
        self.g = tuple(c % self.pn for c in g)
        self.n = len(g) - 1
        self.e = e
        self.f = f
        if e * f != self.n:
            raise ValueError("e*f must equal deg g")
        self.certificate = certificate
        gbar = [c % p for c in g]
        self.res_field = self._residue_field(gbar)
        self._theta_bar = self._residue_of_theta()
        self.uniformizer = self._find_uniformizer()
        self._setup_val_machinery()

    # -- construction helpers --

    def _residue_field(self, gbar):
        F = GF(self.p)
        fac = poly_factor_mod_q(GFPoly(F, gbar))
        if len(fac) != 1 or fac[0][1] != self.e or fac[0][0].degree != self.f:
            raise ValueError("g mod p is not (irreducible)^e of degree f")
        h = fac[0][0]
        self._hbar = h
        if self.f == 1:
            return GF(self.p)
        return GF(self.p, tuple(c[0] for c in h.coeffs))

    def _residue_of_theta(self):
        # theta mod the maximal ideal: f = 1 -> the root of hbar (linear);
        # f > 1 -> the generator y of the residue field itself.
        if self.f == 1:
            return self.res_field.neg(self.res_field.el(self._hbar.coeffs[0][0]))
        return self.res_field.el((0, 1))

    # -- element primitives --

    def el(self, x):
        if isinstance(x, int):
            return (x % self.pn,) + (0,) * (self.n - 1)
        v = [int(c) % self.pn for c in x][:self.n]
        return tuple(v + [0] * (self.n - len(v)))

    def zero(self):
        return self.el(0)

    def one(self):
        return self.el(1)

    def is_zero(self, a):
        return all(c == 0 for c in a)

    def add(self, a, b):
        return tuple((x + y) % self.pn for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.pn for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.pn for x in a)

    def mul(self, a, b):
        out = [0] * (2 * self.n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        g = self.g
        for i in reversed(range(self.n, len(out))):
            c = out[i] % self.pn
            if c:
                for j in range(self.n):
                    out[i - self.n + j] -= c * g[j]
            out[i] = 0
        return tuple(c % self.pn for c in out[:self.n])

    def pow(self, a, k):
        out, base = self.one(), a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def scalar_mul(self, c, a):
        return tuple(c * x % self.pn for x in a)

    def theta(self):
        """The image of the defining root x."""
        if self.n == 1:
            return self.el(-self.g[0])
        return self.el((0, 1))

    def from_poly(self, coeffs):
        """Image of an integer polynomial in theta (ascending coeffs)."""
        out = self.zero()
        xpow = self.one()
        th = self.theta()
        for i, c in enumerate(coeffs):
            c = int(c)
            if c:
                out = self.add(out, self.scalar_mul(c, xpow))
            if i + 1 < len(coeffs):
                xpow = self.mul(xpow, th)
        return out

    def norm(self, a):
        """N_{F_v/Q_p}(a) as an integer mod p^N (resultant of g and a)."""
        apoly = rp_trim_int(a)
        if not apoly:
            return 0
        if len(apoly) == 1:
            return pow(apoly[0], self.n, self.pn)
        syl = _sylvester(list(self.g), apoly)
        return zmat_det(syl) % self.pn

    def trace(self, a):
        """Tr_{F_v/Q_p}(a) mod p^N via power sums of g."""
        if not hasattr(self, "_trace_vec"):
            # trace of theta^i: Newton's identities on g
            n = self.n
            g = self.g
            s = [0] * n
            s[0] = n
            # p_k + c_{n-1} p_{k-1} + ... + k c_{n-k} = 0 (monic convention)
            for k in range(1, n):
                acc = k * g[n - k]
                for i in range(1, k):
                    acc += g[n - i] * s[k - i]
                s[k] = -acc % self.pn
            self._trace_vec = s
        return sum(c * t for c, t in zip(a, self._trace_vec)) % self.pn

    def inv_unit(self, a):
        """Inverse of a unit of the valuation ring (Newton on residue)."""
        res = self.residue(a)
        if self.res_field.is_zero_el(res):
            raise ZeroDivisionError("not a unit of O_v")
        # initial inverse from the residue field, as poly in theta;
        # Newton doubles pi-adic accuracy, so count levels not digits
        r = self._lift_resfield(self.res_field.inv(res))
        x = r
        for _ in range((self.e * self.N).bit_length() + 2):
            x = self.mul(x, self.sub(self.el(2), self.mul(a, x)))
        if self.mul(a, x) != self.one():
            raise ArithmeticError("unit inversion failed")
        return x

    def residue(self, a):
        """Image of an integral element in the residue field."""
        F = self.res_field
        out = F.zero()
        tpow = F.one()
        for c in a:
            out = F.add(out, F.mul(F.el(c % self.p), tpow))
            tpow = F.mul(tpow, self._theta_bar)
        return out

    def _lift_resfield(self, r):
        """Lift a residue-field element to O_v (Teichmueller-free lift).

        f == 1: constant lift.  f > 1: poly in theta whose residue is r;
        uses that theta's residue generates F_q over F_p.
        """
        F = self.res_field
        if self.f == 1:
            return self.el(r[0])
        # solve sum c_i * thetabar^i = r over F_p by linear algebra
        from kummerlab.linalg import MatModM, solve_mod_p
        cols = []
        tpow = F.one()
        for _ in range(self.n):
            cols.append(tpow)
            tpow = F.mul(tpow, self._theta_bar)
        rows = tuple(tuple(cols[j][i] for j in range(self.n))
                     for i in range(F.k))
        sol = solve_mod_p(MatModM(self.p, rows), tuple(r))
        if sol is None:
            raise ArithmeticError("residue lift failed")
        return self.el(tuple(sol))

    # -- valuation machinery --

    def _find_uniformizer(self):
        if self.e == 1:
            return self.el(self.p)
        # search small shifted elements theta - c for valuation exactly 1
        for c in self._uniformizer_candidates():
            v = self._val_by_norm(c)
            if v == 1:
                return c
        raise ArithmeticError("no uniformizer found in search range")

    def _uniformizer_candidates(self):
        theta = self.el((0, 1))
        for c in range(self.p):
            yield self.sub(theta, self.el(c))
        # combinations theta^i shifts for stubborn fields
        for coeffs in itertools.product(range(-2, 3), repeat=min(self.n, 4)):
            if any(coeffs):
                yield self.el(tuple(c % self.pn for c in coeffs))

    def _val_by_norm(self, a):
        nrm = self.norm(a)
        if nrm == 0:
            return None
        v = 0
        while nrm % self.p == 0:
            nrm //= self.p
            v += 1
        if v % self.f:
            return None  # cannot happen for true elements; guard
        return v // self.f

    def _setup_val_machinery(self):
        # INV = multiplication matrix of pi^{e-1} * w^{-1}, w = pi^e / p
        pi = self.uniformizer
        pie = self.pow(pi, self.e)
        if any(c % self.p for c in pie):
            raise ArithmeticError("pi^e not divisible by p; bad uniformizer")
        w = tuple(c // self.p % self.pn for c in pie)
        winv = self.inv_unit(w)
        mult = self.mul(self.pow(pi, self.e - 1), winv)
        # matrix columns: mult * theta^j
        cols = []
        b = self.one()
        theta = self.el((0, 1)) if self.n > 1 else None
        for j in range(self.n):
            cols.append(self.mul(mult, b))
            if theta is not None:
                b = self.mul(b, theta)
        self._inv_pi_mat = [[cols[j][i] for j in range(self.n)]
                            for i in range(self.n)]

    def _apply_inv_pi(self, a):
        m = self._inv_pi_mat
        return tuple(sum(m[i][j] * a[j] for j in range(self.n)) % self.pn
                     for i in range(self.n))

    def val(self, a):
        """pi-adic valuation of an integral element; PrecisionError on 0."""
        if self.is_zero(a):
            raise PrecisionError("valuation of zero at working precision")
        v = 0
        cap = self.e * self.N
        cur = a
        while v < cap:
            nxt = self._apply_inv_pi(cur)
            if any(c % self.p for c in nxt):
                return v
            cur = tuple(c // self.p for c in nxt)
            v += 1
        raise PrecisionError("element indistinguishable from zero")

    def unit_part(self, a):
        """(v, u) with a = pi^v * u and u a unit of O_v."""
        v = 0
        cap = self.e * self.N
        cur = a
        while v < cap:
            nxt = self._apply_inv_pi(cur)
            if any(c % self.p for c in nxt):
                return v, cur
            cur = tuple(c // self.p for c in nxt)
            v += 1
        raise PrecisionError("element indistinguishable from zero")

    def level(self, u):
        """v_pi(u - 1) of a unit u (may be 0 if residue != 1)."""
        d = self.sub(u, self.one())
        if self.is_zero(d):
            return self.e * self.N
        return self.val(d)

    def leading_coeff(self, z, i):
        """Residue of z / pi^i given v(z) >= i."""
        cur = z
        for _ in range(i):
            nxt = self._apply_inv_pi(cur)
            if any(c % self.p for c in nxt):
                raise ValueError("valuation smaller than claimed")
            cur = tuple(c // self.p for c in nxt)
        return self.residue(cur)

    def __repr__(self):
        return (f"LocalField(p={self.p}, deg={self.n}, e={self.e}, "
                f"f={self.f}, prec={self.N})")


def rp_trim_int(a):
    out = list(a)
    while out and out[-1] == 0:
        out.pop()
    return out


def _sylvester(f, g):
    """Sylvester matrix of two integer polynomials (ascending input)."""
    f = list(reversed(rp_trim_int(f)))
    g = list(reversed(rp_trim_int(g)))
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + f + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + g + [0] * (m - 1 - i))
    return rows


# ---------------------------------------------------------------------------
# Hensel factorization of a global polynomial at p
# ---------------------------------------------------------------------------

def hensel_factor(f: Poly, p: int, N: int = 30):
    """Factor a monic squarefree integer polynomial over Z_p into the
    defining polynomials of the completions above p.

    Returns a list of LocalField objects with certified (e, f).  Raises
    PrecisionError when factors cannot be separated at precision p^N and
    ArithmeticError for ramification shapes outside desk scope.
    """
    coeffs = [int(c) for c in f.coeffs]
    if not coeffs or coeffs[-1] != 1:
        raise ValueError("polynomial must be monic with integer coefficients")
    R = CoeffRing(p, N)
    fpoly = [R.el(c) for c in coeffs]
    blocks = _lift_blocks(R, fpoly)
    out = []
    for (gblk, hbar, e_res) in blocks:
        out.extend(_classify_block(p, N, gblk, hbar, e_res))
    # separation certificate: pairwise resultants must be p-units
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            r = zmat_det(_sylvester(list(out[i].g), list(out[j].g))) % p
            if r == 0:
                raise PrecisionError(
                    "factor separation not certified; raise N")
    if sum(L.n for L in out) != len(coeffs) - 1:
        raise ArithmeticError("degrees of local factors do not add up")
    return out


def _lift_blocks(R, fpoly):
    """Split f into Hensel blocks h_i^{e_i} lifted to precision p^N."""
    fbar = rp_to_gf(R, fpoly)
    fac = poly_factor_mod_q(fbar)
    if len(fac) == 1:
        h, e = fac[0]
        return [(fpoly, h, e)]
    blocks = []
    rest = fpoly
    restbar_fac = list(fac)
    while len(restbar_fac) > 1:
        h, e = restbar_fac[0]
        gbar = h
        for _ in range(e - 1):
            gbar = gbar * h
        hbar_rest = GFPoly(gbar.F, [1])
        for (h2, e2) in restbar_fac[1:]:
            for _ in range(e2):
                hbar_rest = hbar_rest * h2
        g0 = rp_from_gf(R, gbar)
        h0 = rp_from_gf(R, hbar_rest)
        g, rest = hensel_lift_factors(R, rest, g0, h0)
        blocks.append((g, h, e))
        restbar_fac = restbar_fac[1:]
    h, e = restbar_fac[0]
    blocks.append((rest, h, e))
    return blocks


def _classify_block(p, N, gblk, hbar, e_res):
    """Turn one lifted block (g = hbar^e mod p) into LocalFields."""
    R = CoeffRing(p, N)
    deg_h = hbar.degree
    if e_res == 1:
        g = [_as_int(R, c) for c in gblk]
        return [LocalField(p, tuple(g), 1, deg_h, N,
                           certificate="unramified (squarefree residue)")]
    if deg_h == 1:
        return _classify_totally_ramified_block(R, gblk, hbar, e_res)
    # mixed e > 1, f > 1: classify over the unramified extension W
    W = CoeffRing(p, N, modulus=tuple(c[0] for c in hbar.coeffs))
    gW = [W.el(_as_int(R, c)) for c in gblk]
    gWbar = rp_to_gf(W, gW)
    facW = poly_factor_mod_q(gWbar)
    # over W the residue factors are linear
    if any(h.degree != 1 for (h, _) in facW):
        raise ArithmeticError("block does not split linearly over W")
    if len(facW) > 1:
        # lift the W-blocks pairwise; classify the first, conjugates match
        sub = _lift_blocks(W, gW)
    else:
        sub = [(gW, facW[0][0], facW[0][1])]
    # classify one W-block: (x - r)^m over W
    gsub, hsub, m = sub[0]
    kind = _ramified_kind_over_base(W, gsub, hsub, m)
    if kind == "ramified":
        # conjugate ramified W-blocks glue to a single prime with e = m,
        # f = deg hbar; g itself is its defining polynomial
        if len(sub) * m != len(gblk) - 1 or len(sub) != deg_h:
            raise ArithmeticError("inconsistent mixed block shape")
        g = [_as_int(R, c) for c in gblk]
        return [LocalField(p, tuple(g), m, deg_h, N,
                           certificate="ramified over unramified base "
                                       "(W-level quadratic defect)")]
    raise ArithmeticError(
        f"mixed block classification '{kind}' out of desk scope")


def _classify_totally_ramified_block(R, gblk, hbar, e_res):
    p, N = R.p, R.N
    m = e_res
    if m == len(gblk) - 1:
        # single residue root r: shift and test Eisenstein / quadratic disc
        r = _as_int(R, R.lift_res(hbar.F.neg(hbar.coeffs[0])))
        shifted = _int_shift([_as_int(R, c) for c in gblk], r)
        if all(c % p == 0 for c in shifted[:-1]) and shifted[0] % p ** 2:
            return [LocalField(p, tuple(_as_int(R, c) for c in gblk),
                               m, 1, N, certificate="Eisenstein after shift")]
        if m == 2:
            return _classify_quadratic(R, gblk)
        raise ArithmeticError(
            "totally ramified block is not Eisenstein after shift: "
            "out of desk scope")
    raise ArithmeticError("unexpected block multiplicity")


def _classify_quadratic(R, gblk):
    """x^2 + Bx + C over Z_p: split, ramified or unramified quadratic."""
    p, N = R.p, R.N
    B = _as_int(R, gblk[1])
    C = _as_int(R, gblk[0])
    disc = (B * B - 4 * C) % R.pn
    if disc == 0:
        raise PrecisionError("quadratic discriminant vanishes at precision")
    v = 0
    d = disc
    while d % p == 0:
        d //= p
        v += 1
    if v % 2 == 0 and pow(d % p, (p - 1) // 2, p) == 1:
        # two roots in Z_p: split into two linear factors
        fields = []
        for r0 in _quadratic_roots(R, B, C):
            g = ((-r0) % R.pn, 1)
            fields.append(LocalField(p, g, 1, 1, N,
                                     certificate="split quadratic"))
        return fields
    if v % 2 == 1:
        cert = "ramified quadratic (odd disc valuation)"
        return [LocalField(p, tuple(_as_int(R, c) for c in gblk), 2, 1, N,
                           certificate=cert)]
    cert = "unramified quadratic (non-square unit disc)"
    return [LocalField(p, tuple(_as_int(R, c) for c in gblk), 1, 2, N,
                       certificate=cert)]


def _quadratic_roots(R, B, C):
    p = R.p
    f_coeffs = [C, B, 1]
    F = GF(p)
    roots = []
    for r in range(p):
        if (C + B * r + r * r) % p == 0:
            roots.append(r)
    dbar = (B * B - 4 * C)
    v = 0
    while dbar % p == 0 and v < R.N:
        dbar //= p
        v += 1
    if v == 0:
        return [lift_root(p, f_coeffs, r, R.N) for r in roots]
    # repeated residue root: complete the square exactly
    # x = (-B +- sqrt(disc)) / 2
    disc = B * B - 4 * C
    s = _padic_sqrt_int(p, disc, R.N)
    inv2 = pow(2, -1, R.pn)
    return [(-B + s) * inv2 % R.pn, (-B - s) * inv2 % R.pn]


def _padic_sqrt_int(p, x, N):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    if v % 2:
        raise ValueError("no square root: odd valuation")
    r0 = None
    for r in range(1, p):
        if (r * r - x) % p == 0:
            r0 = r
            break
    if r0 is None:
        raise ValueError("no square root: non-residue")
    r = lift_root(p, [-(x % p ** N), 0, 1], r0, N)
    return r * p ** (v // 2) % p ** N


def _ramified_kind_over_base(W, gsub, hsub, m):
    """Classify (x - r)^m over the unramified base W (m == 2 supported)."""
    if m != 2:
        # Eisenstein test after shift over W
        r = W.lift_res(hsub.F.neg(hsub.coeffs[0]))
        shifted = _rp_shift(W, gsub, r)
        if (all(W.val(c) >= 1 for c in shifted[:-1])
                and W.val(shifted[0]) == 1):
            return "ramified"
        return "unclassified"
    B, C = gsub[1], gsub[0]
    disc = W.sub(W.mul(B, B), _scale_int(W, C, 4))
    v = W.val(disc)
    if v >= W.N:
        raise PrecisionError("W-discriminant vanishes at precision")
    if v % 2 == 1:
        return "ramified"
    unit = W.divide_exact_p(disc, v)
    res = W.residue(unit)
    Fq = W.res_field
    if Fq.pow(res, (Fq.q - 1) // 2) == Fq.one():
        return "split"
    return "unramified"


def _rp_shift(R, a, r):
    """a(x + r) over R."""
    out = [R.zero()]
    for c in reversed(a):
        out = rp_add(R, rp_mul(R, out, [r, R.one()]), [c])
    return out


def _int_shift(coeffs, r):
    out = []
    for c in reversed(coeffs):
        # out = out*(x+r) + c
        new = [0] * (len(out) + 1)
        for i, a in enumerate(out):
            new[i] += a * r
            new[i + 1] += a
        new[0] += c
        out = new
    while out and out[-1] == 0:
        out.pop()
    return out


def _as_int(R, c):
    if R.k == 1:
        return c % R.pn
    if any(x % R.pn for x in c[1:]):
        raise ValueError("coefficient not rational")
    return c[0] % R.pn


# ---------------------------------------------------------------------------
# degree-p extensions of a LocalField and their norms
# ---------------------------------------------------------------------------

class LocalExtension:
    """L = K[t]/(m(t)) for a monic modulus of degree p over K.

    Kummer case m = t^p - b, unramified case m arbitrary monic with
    irreducible residue.  Elements are tuples of deg(m) K-elements.
    """

    def __init__(self, K: LocalField, modulus):
        self.K = K
        self.modulus = tuple(modulus)      # ascending, K-element coeffs
        self.deg = len(modulus) - 1
        if not K.is_zero(K.sub(modulus[-1], K.one())):
            raise ValueError("modulus must be monic")

    @classmethod
    def kummer(cls, K: LocalField, b, p=None):
        p = p or K.p
        mod = [K.neg(b)] + [K.zero()] * (p - 1) + [K.one()]
        return cls(K, mod)

    def el_t(self):
        v = [self.K.zero()] * self.deg
        v[1] = self.K.one()
        return tuple(v)

    def el_base(self, a):
        return tuple([a] + [self.K.zero()] * (self.deg - 1))

    def add(self, x, y):
        return tuple(self.K.add(a, b) for a, b in zip(x, y))

    def mul(self, x, y):
        K = self.K
        d = self.deg
        out = [K.zero()] * (2 * d - 1)
        for i, a in enumerate(x):
            if not K.is_zero(a):
                for j, b in enumerate(y):
                    out[i + j] = K.add(out[i + j], K.mul(a, b))
        m = self.modulus
        for i in reversed(range(d, len(out))):
            c = out[i]
            if not K.is_zero(c):
                for j in range(d):
                    out[i - d + j] = K.sub(out[i - d + j], K.mul(c, m[j]))
                out[i] = K.zero()
        return tuple(out[:d])

    def norm(self, x):
        """N_{L/K}(x): determinant of multiplication by x (permutation
        expansion; deg <= 5 so this is exact and cheap)."""
        K = self.K
        d = self.deg
        cols = []
        b = tuple([K.one()] + [K.zero()] * (d - 1))
        for j in range(d):
            cols.append(self.mul(x, b))
            if j + 1 < d:
                # b *= t
                b = self.mul(b, self.el_t())
        # matrix M[i][j] = cols[j][i]; det over the commutative ring K
        import itertools as _it
        total = K.zero()
        for perm in _it.permutations(range(d)):
            sign = _perm_sign(perm)
            term = K.one()
            for j in range(d):
                term = K.mul(term, cols[j][perm[j]])
            total = K.add(total, term) if sign > 0 else K.sub(total, term)
        return total


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def local_norm(ext: LocalExtension, x):
    """Norm from a degree-p extension down to its base LocalField."""
    return ext.norm(x)


# ---------------------------------------------------------------------------
# the F_p-space F_v^x/(F_v^x)^p with explicit coordinates
# ---------------------------------------------------------------------------

class UnitClassMap:
    """Surjection eta: F_v^x -> F_p^{d+2} with kernel exactly (F_v^x)^p.

    Requires mu_p in F_v, certified by the nontrivial kernel of the
    Artin-Schreier map c -> c^p + lam*c on the residue field at the
    critical filtration level p*e/(p-1).

    Coordinate layout: slot 0 is v_pi mod p; then f coordinates for each
    basis level i (1 <= i < pe/(p-1), p does not divide i), ascending;
    the last slot is the mu_p coordinate from the critical level.
    """

    def __init__(self, K: LocalField):
        self.K = K
        p = K.p
        if K.e % (p - 1) != 0:
            raise ValueError("mu_p not in F_v: (p-1) does not divide e")
        self.e1 = K.e // (p - 1)            # level of zeta_p - 1
        self.istar = p * self.e1            # critical level
        self.M = self.istar + 1             # everything deeper is a p-th power
        Fq = K.res_field
        # lam = residue of p / pi^e (a unit)
        pie = K.pow(K.uniformizer, K.e)
        w = tuple(c // p % K.pn for c in pie)        # pi^e / p, a unit
        self.lam = Fq.inv(K.residue(w))
        # Artin-Schreier map and the mu_p defect direction
        basis_fq = [tuple(1 if i == j else 0 for i in range(Fq.k))
                    for j in range(Fq.k)]
        self._fq_basis = basis_fq
        img = [self._artin_schreier(c) for c in basis_fq]
        from kummerlab.linalg import MatModM, mat_rank_kernel, solve_mod_p
        self._as_matrix = MatModM(p, tuple(
            tuple(img[j][i] for j in range(Fq.k)) for i in range(Fq.k)))
        rank, ker = mat_rank_kernel(self._as_matrix)
        if rank != Fq.k - 1 or len(ker) != 1:
            raise ValueError("mu_p not in F_v: Artin-Schreier map bijective")
        # c* not in the image: find by testing basis vectors
        cstar = None
        for cand in basis_fq:
            if solve_mod_p(self._as_matrix, tuple(cand)) is None:
                cstar = tuple(cand)
                break
        if cstar is None:
            # image is a hyperplane; some sum of basis vectors escapes it
            for cand in self._iterate_fq():
                if (not Fq.is_zero_el(cand)
                        and solve_mod_p(self._as_matrix, cand) is None):
                    cstar = cand
                    break
        self.cstar = cstar
        self.basis_levels = [i for i in range(1, self.istar) if i % p]
        self.dim = 1 + len(self.basis_levels) * K.f + 1
        if self.dim != K.n + 2:
            raise ArithmeticError("unit class dimension mismatch")

    def _iterate_fq(self):
        from itertools import product
        Fq = self.K.res_field
        for tup in product(range(self.K.p), repeat=Fq.k):
            yield tuple(tup)

    def _artin_schreier(self, c):
        Fq = self.K.res_field
        return Fq.add(Fq.pow(c, self.K.p), Fq.mul(self.lam, c))

    # -- basis elements (deterministic representatives) --

    def basis_element(self, slot):
        """Representative of the slot-th coordinate vector."""
        K = self.K
        if slot == 0:
            return K.uniformizer
        idx = slot - 1
        nlev = len(self.basis_levels)
        if idx < nlev * K.f:
            level = self.basis_levels[idx // K.f]
            j = idx % K.f
            c = self._fq_basis[j]
            return K.add(K.one(), K.mul(K._lift_resfield(c),
                                        K.pow(K.uniformizer, level)))
        # mu_p slot
        return K.add(K.one(), K.mul(K._lift_resfield(self.cstar),
                                    K.pow(K.uniformizer, self.istar)))

    # -- evaluation --

    def eta(self, x):
        """Coordinates of x in F_p^{d+2}; x an integral element != 0."""
        K = self.K
        p = K.p
        v, u = K.unit_part(x)
        coords = [v % p] + [0] * (self.dim - 1)
        # kill the prime-to-p part of the unit: u^(q-1) is principal
        q = K.res_field.q
        u1 = K.pow(u, q - 1)
        scale = pow(q - 1, -1, p)
        unit_coords = self._principal_dlog(u1)
        for i, c in enumerate(unit_coords):
            coords[1 + i] = c * scale % p
        return tuple(coords)

    def _principal_dlog(self, u):
        """Coordinates of a principal unit over the filtration basis."""
        K = self.K
        p = K.p
        Fq = K.res_field
        from kummerlab.linalg import solve_mod_p
        nlev = len(self.basis_levels)
        out = [0] * (nlev * K.f + 1)
        guard = 0
        while True:
            guard += 1
            if guard > 40 * self.M:
                raise PrecisionError("unit dlog did not terminate")
            d = K.sub(u, K.one())
            if K.is_zero(d):
                return out
            i = K.val(d)
            if i >= self.M:
                return out
            c = K.leading_coeff(d, i)
            if i in self.basis_levels:
                li = self.basis_levels.index(i)
                for j in range(K.f):
                    a = c[j] % p
                    if a:
                        out[li * K.f + j] = (out[li * K.f + j] + a) % p
                        g = self.basis_element(1 + li * K.f + j)
                        u = K.mul(u, K.pow(self._inv(g), a))
            elif i < self.istar and i % p == 0:
                # c = c'^p from one level down
                croot = Fq.pow(c, Fq.q // p)
                g = K.add(K.one(), K.mul(K._lift_resfield(croot),
                                         K.pow(K.uniformizer, i // p)))
                u = K.mul(u, self._inv(K.pow(g, p)))
            elif i == self.istar:
                # c = AS(c0) + a * cstar
                a, c0 = self._split_critical(c)
                if a:
                    out[-1] = (out[-1] + a) % p
                    g = self.basis_element(self.dim - 1)
                    u = K.mul(u, K.pow(self._inv(g), a))
                if not Fq.is_zero_el(c0):
                    g = K.add(K.one(), K.mul(K._lift_resfield(c0),
                                             K.pow(K.uniformizer, self.e1)))
                    u = K.mul(u, self._inv(K.pow(g, p)))
            else:
                # i > istar: peel (1 + delta pi^{i-e})^p, leading p*delta*...
                delta = Fq.mul(c, Fq.inv(self.lam))
                g = K.add(K.one(), K.mul(K._lift_resfield(delta),
                                         K.pow(K.uniformizer, i - K.e)))
                u = K.mul(u, self._inv(K.pow(g, p)))

    def _split_critical(self, c):
        """Solve c = AS(c0) + a*cstar over F_p; returns (a, c0)."""
        from kummerlab.linalg import MatModM, solve_mod_p
        K = self.K
        p = K.p
        Fq = K.res_field
        # augment the AS matrix with the cstar column
        rows = []
        base = self._as_matrix.rows
        for i in range(Fq.k):
            rows.append(tuple(list(base[i]) + [self.cstar[i]]))
        sol = solve_mod_p(MatModM(p, tuple(rows)), tuple(c))
        if sol is None:
            raise ArithmeticError("critical level split failed")
        c0 = tuple(sol[:Fq.k])
        a = sol[Fq.k] % p
        return a, c0

    def _inv(self, g):
        return self.K.inv_unit(g)

    def is_pth_power_class(self, x):
        return all(c == 0 for c in self.eta(x))


def pth_root_of_unity(K: LocalField, target_level=None):
    """A primitive p-th root of unity in K, refined level by level.

    Certifies mu_p in K constructively.  The result z satisfies
    v(z^p - 1) >= target_level (default: e*(N-2))."""
    p = K.p
    ucm = UnitClassMap(K)
    Fq = K.res_field
    # start: 1 + c0 pi^{e1} with c0 a nonzero kernel vector of AS
    from kummerlab.linalg import mat_rank_kernel
    _, ker = mat_rank_kernel(ucm._as_matrix)
    c0 = tuple(ker[0])
    z = K.add(K.one(), K.mul(K._lift_resfield(c0),
                             K.pow(K.uniformizer, ucm.e1)))
    target = target_level if target_level is not None else K.e * (K.N - 2)
    while True:
        F = K.sub(K.pow(z, p), K.one())
        if K.is_zero(F):
            return z
        w = K.val(F)
        if w >= target:
            return z
        lead = K.leading_coeff(F, w)
        lvl = w - K.e
        if lvl == ucm.e1:
            # correction solves an Artin-Schreier equation
            a, delta = ucm._split_critical(Fq.neg(lead))
            if a:
                raise ArithmeticError("no p-th root of unity refinement")
        else:
            delta = Fq.neg(Fq.mul(lead, Fq.inv(ucm.lam)))
        corr = K.add(K.one(), K.mul(K._lift_resfield(delta),
                                    K.pow(K.uniformizer, lvl)))
        z = K.mul(z, corr)


def local_log(K: LocalField, u):
    """Iwasawa-style logarithm data of a unit u of O_v.

    Returns (coords, k) where coords are the coordinates of
    log(u^{(q-1) p^k}), an integral element computed by the convergent
    series once the power is pushed past the ramification bound.
    The true log(u) is coords / ((q-1) p^k); callers doing rank
    computations can use the scaled vector directly.
    """
    q = K.res_field.q
    p = K.p
    u1 = K.pow(u, q - 1)
    k = 0
    bound = K.e // (p - 1)
    while True:
        d = K.sub(u1, K.one())
        if K.is_zero(d) or K.val(d) > bound:
            break
        u1 = K.pow(u1, p)
        k += 1
        if k > 4 * K.e:
            raise PrecisionError("unit will not enter the log disc")
    # series sum log(1+z) = z - z^2/2 + ... with exact integer divisions
    z = K.sub(u1, K.one())
    if K.is_zero(z):
        return tuple([0] * K.n), k
    acc = K.zero()
    zn = z
    n = 1
    lz = K.val(z)
    while True:
        w = _int_ordp(p, n)
        body = n // p ** w
        term = tuple(c // p ** w % K.pn for c in zn)
        if any(c % p ** w for c in zn):
            raise PrecisionError("log series division failed")
        term = K.scalar_mul(pow(body, -1, K.pn), term)
        acc = K.add(acc, term) if n % 2 else K.sub(acc, term)
        n += 1
        zn = K.mul(zn, z)
        if K.is_zero(zn) or (n * lz - K.e * _log_floor(p, n)) > K.e * (K.N - 2):
            break
    return acc, k


def _int_ordp(p, n):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _log_floor(p, n):
    k = 0
    while p ** (k + 1) <= n:
        k += 1
    return k
