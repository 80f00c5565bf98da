"""Univariate polynomials over Q and over finite fields F_q.

A polynomial is a `Poly`: coefficients ascending, exact `Fraction` (or int)
entries, normalised so the leading coefficient is nonzero.  Finite-field
polynomials live in a `GF(q)` context carrying the modulus of the field
extension when q is a proper prime power.

Factorization over F_q is Cantor–Zassenhaus with a seeded generator, so
repeated runs return identical factor lists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from kummerlab.linalg import is_prime


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial, coefficients ascending."""

    coeffs: tuple

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i <= self.degree else 0

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self[i] + other[i] for i in range(n)))

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self[i] - other[i] for i in range(n)))

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero() or other.is_zero():
                return Poly(())
            out = [0] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return Poly(tuple(out))
        return Poly(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def monic(self):
        if self.is_zero():
            return self
        lc = self.coeffs[-1]
        return Poly(tuple(Fraction(c, 1) / lc for c in self.coeffs))

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [0] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lc = other.coeffs[-1]
        for i in reversed(range(len(q))):
            if len(rem) < i + d + 1:
                continue
            c = Fraction(rem[i + d]) / lc
            if c:
                q[i] = c
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Poly(tuple(q)), Poly(tuple(rem[:d] if d > 0 else ()))

    def __mod__(self, other):
        return self.divmod(other)[1]

    def eval(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def derivative(self):
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def shift(self, a):
        """p(x + a), exact."""
        out = Poly((0,))
        for c in reversed(self.coeffs):
            out = out * Poly((a, 1)) + Poly((c,))
        return out

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        return "Poly(" + " + ".join(terms) + ")"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def resultant(a: Poly, b: Poly):
    """Resultant via the Euclidean remainder sequence, exact."""
    if a.is_zero() or b.is_zero():
        return 0
    res = 1
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return res * b.coeffs[0] ** da
        r = a % b
        if r.is_zero():
            return 0
        res *= b.coeffs[-1] ** (da - r.degree) * (-1) ** (da * db)
        a, b = b, r


def discriminant(f: Poly):
    n = f.degree
    lc = f.coeffs[-1]
    sign = (-1) ** (n * (n - 1) // 2)
    return sign * resultant(f, f.derivative()) / lc


def squarefree_part(f: Poly) -> Poly:
    g = poly_gcd(f, f.derivative())
    if g.degree <= 0:
        return f.monic()
    return f.divmod(g)[0].monic()


def sturm_real_roots(f: Poly):
    """Number of distinct real roots of a squarefree rational polynomial."""
    f = f.monic()
    chain = [f, f.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
    if chain[-1].is_zero():
        chain.pop()

    def signs_at_inf(sign):
        out = []
        for g in chain:
            lc = g.coeffs[-1]
            s = lc if sign > 0 else lc * (-1) ** g.degree
            out.append(1 if s > 0 else (-1 if s < 0 else 0))
        return out

    def variations(seq):
        seq = [s for s in seq if s]
        return sum(1 for a, b in zip(seq, seq[1:]) if a * b < 0)

    return variations(signs_at_inf(-1)) - variations(signs_at_inf(1))


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------

class GF:
    """The field F_q, q = p^k.  Elements are int tuples of length k
    (coordinates over the F_p-basis 1, y, ..., y^{k-1})."""

    def __init__(self, p, modulus=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        if modulus is None:
            self.k = 1
            self.modulus = (0, 1)  # y
        else:
            mod = tuple(int(c) % p for c in modulus)
            while mod and mod[-1] == 0:
                mod = mod[:-1]
            if len(mod) < 2 or mod[-1] != 1:
                raise ValueError("modulus must be monic of degree >= 1")
            self.k = len(mod) - 1
            self.modulus = mod
        self.q = p ** self.k

    def __eq__(self, other):
        return (isinstance(other, GF) and self.p == other.p
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"

    # -- element helpers (elements are plain int tuples of length k) --

    def el(self, x):
        if isinstance(x, int):
            v = [0] * self.k
            v[0] = x % self.p
            return tuple(v)
        v = [int(c) % self.p for c in x][:self.k]
        v += [0] * (self.k - len(v))
        return tuple(v)

    def zero(self):
        return tuple([0] * self.k)

    def one(self):
        return self.el(1)

    def is_zero_el(self, a):
        return all(c == 0 for c in a)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        if self.k == 1:
            return (a[0] * b[0] % self.p,)
        out = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        # reduce by the modulus
        m = self.modulus
        for i in reversed(range(self.k, len(out))):
            c = out[i] % self.p
            if c:
                for j in range(self.k):
                    out[i - self.k + j] -= c * m[j]
            out[i] = 0
        return tuple(c % self.p for c in out[:self.k])

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        out, base = self.one(), a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, a):
        if self.is_zero_el(a):
            raise ZeroDivisionError("inverse of zero in GF")
        return self.pow(a, self.q - 2)

    def elements(self):
        """All q elements (lexicographic); only sensible for small q."""
        from itertools import product
        for tup in product(range(self.p), repeat=self.k):
            yield tuple(tup)


class GFPoly:
    """Polynomial over a GF context; coefficients are GF element tuples."""

    __slots__ = ("F", "coeffs")

    def __init__(self, F: GF, coeffs):
        self.F = F
        cs = [F.el(c) if isinstance(c, int) else tuple(c) for c in coeffs]
        while cs and F.is_zero_el(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, GFPoly) and self.F == other.F
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.F, self.coeffs))

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i <= self.degree else self.F.zero()

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return GFPoly(self.F, [self.F.add(self[i], other[i])
                               for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return GFPoly(self.F, [self.F.sub(self[i], other[i])
                               for i in range(n)])

    def __mul__(self, other):
        F = self.F
        if self.is_zero() or other.is_zero():
            return GFPoly(F, [])
        out = [F.zero()] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if not F.is_zero_el(a):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return GFPoly(F, out)

    def scale(self, c):
        c = self.F.el(c) if isinstance(c, int) else c
        return GFPoly(self.F, [self.F.mul(c, a) for a in self.coeffs])

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.F.inv(self.coeffs[-1]))

    def divmod(self, other):
        F = self.F
        if other.is_zero():
            raise ZeroDivisionError
        rem = list(self.coeffs)
        d = other.degree
        q = [F.zero()] * max(0, len(rem) - d)
        lcinv = F.inv(other.coeffs[-1])
        for i in reversed(range(len(q))):
            if len(rem) < i + d + 1:
                continue
            c = F.mul(rem[i + d], lcinv)
            if not F.is_zero_el(c):
                q[i] = c
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = F.sub(rem[i + j], F.mul(c, b))
        return GFPoly(F, q), GFPoly(F, rem[:d] if d > 0 else [])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def eval(self, x):
        F = self.F
        out = F.zero()
        for c in reversed(self.coeffs):
            out = F.add(F.mul(out, x), c)
        return out

    def derivative(self):
        F = self.F
        return GFPoly(F, [F.mul(F.el(i), c)
                          for i, c in enumerate(self.coeffs)][1:])

    def pow_mod(self, n, mod):
        out = GFPoly(self.F, [1])
        base = self % mod
        while n:
            if n & 1:
                out = (out * base) % mod
            base = (base * base) % mod
            n >>= 1
        return out

    def __repr__(self):
        return f"GFPoly({self.F}, {list(self.coeffs)})"


def gfpoly_gcd(a: GFPoly, b: GFPoly) -> GFPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class _LCG:
    """Small deterministic generator for equal-degree splitting.

    Low bits of a power-of-two LCG are periodic, so draw from the top."""

    def __init__(self, seed=0x5EED):
        self.state = seed

    def next(self, bound):
        self.state = (6364136223846793005 * self.state
                      + 1442695040888963407) % (1 << 64)
        return (self.state >> 33) % bound


def poly_factor_mod_q(f: GFPoly, seed=0x5EED):
    """Factor f over F_q into monic irreducibles with multiplicities.

    Returns a list of (GFPoly, multiplicity), deterministic for a fixed
    seed.  Raises on the zero polynomial.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    F = f.F
    rng = _LCG(seed)
    factors = {}

    def record(g, mult):
        g = g.monic()
        prev = factors.get(g.coeffs)
        factors[g.coeffs] = (g, (prev[1] if prev else 0) + mult)

    work = [(f.monic(), 1)]
    while work:
        g, mult = work.pop()
        if g.degree <= 0:
            continue
        if g.degree == 1:
            record(g, mult)
            continue
        d = g.derivative()
        if d.is_zero():
            # g = h(x^p); take p-th roots of coefficients
            p = F.p
            newc = []
            for i in range(0, g.degree + 1, p):
                c = g[i]
                newc.append(F.pow(c, F.q // p))  # p-th root in F_q
            work.append((GFPoly(F, newc), mult * p))
            continue
        sq = gfpoly_gcd(g, d)
        if sq.degree > 0:
            rest, _ = g.divmod(sq)
            work.append((sq, mult))
            work.append((rest, mult))
            continue
        # g squarefree: distinct-degree then equal-degree split
        for (h, deg) in _distinct_degree(g):
            for irr in _equal_degree(h, deg, rng):
                record(irr, mult)

    out = sorted(factors.values(), key=lambda t: (t[0].degree, t[0].coeffs))
    # defensive: multiplicities stored as ints
    return [(g, int(m)) for (g, m) in out]


def _distinct_degree(g: GFPoly):
    F = g.F
    out = []
    x = GFPoly(F, [0, 1])
    h = x
    d = 0
    while g.degree > 0:
        d += 1
        if 2 * d > g.degree:
            out.append((g, g.degree))
            break
        h = h.pow_mod(F.q, g)
        gd = gfpoly_gcd(g, h - x)
        if gd.degree > 0:
            out.append((gd, d))
            g, _ = g.divmod(gd)
            h = h % g
    return out


def _equal_degree(g: GFPoly, d: int, rng: _LCG):
    """Split a squarefree product of degree-d irreducibles (Cantor–Zassenhaus)."""
    F = g.F
    if g.degree == d:
        return [g.monic()]
    out = []
    stack = [g.monic()]
    while stack:
        h = stack.pop()
        if h.degree == d:
            out.append(h)
            continue
        while True:
            r = GFPoly(F, [_rand_el(F, rng) for _ in range(h.degree)])
            if r.degree < 1:
                continue
            if F.p == 2:
                # trace map splitting in characteristic 2
                t = r
                acc = r
                for _ in range(F.k * d - 1):
                    t = t.pow_mod(2, h)
                    acc = (acc + t) % h
                cand = gfpoly_gcd(h, acc)
            else:
                e = (F.q ** d - 1) // 2
                s = r.pow_mod(e, h)
                cand = gfpoly_gcd(h, s - GFPoly(F, [1]))
            if 0 < cand.degree < h.degree:
                other, _ = h.divmod(cand)
                stack.append(cand)
                stack.append(other)
                break
    out.sort(key=lambda t: t.coeffs)
    return out


def _rand_el(F: GF, rng: _LCG):
    return tuple(rng.next(F.p) for _ in range(F.k))


def gfpoly_roots(f: GFPoly):
    """Roots of f in F_q (no multiplicities), via full factorization."""
    roots = []
    for (g, _) in poly_factor_mod_q(f):
        if g.degree == 1:
            roots.append(f.F.neg(g.coeffs[0]))
    return sorted(roots)
