"""Exact arithmetic in a number field F.

Elements carry integer coordinate vectors over the integral basis plus a
positive denominator, so all arithmetic is integer arithmetic.  Prime
splitting follows the defining polynomial (fields with a bad index at a
needed prime are out of catalog scope and rejected), valuations walk an
exactly-certified anti-uniformizer, and p-th power tests reconstruct the
candidate root through a split auxiliary prime and verify exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from kummerlab.linalg import (MatModM, mat_rank_kernel, qmat_inverse,
                              qmat_solve, zmat_det, zmat_hnf, zmat_snf_diagonal,
                              zmat_solve, is_prime)
from kummerlab.polys import (GF, GFPoly, Poly, discriminant, gfpoly_roots,
                             poly_factor_mod_q, sturm_real_roots)
from kummerlab.padic import PrecisionError


class CertificationError(ValueError):
    """Data fails an exact re-certification check."""


# ---------------------------------------------------------------------------
# the field
# ---------------------------------------------------------------------------

class NumberField:
    """A number field Q[x]/(f) with a designated integral basis.

    basis: rows of rational coordinates over the power basis; defaults to
    the power basis itself.  `conj` is the matrix (over the integral
    basis) of an automorphism acting as complex conjugation on every
    embedding; required only by operations that need archimedean size
    control (p-th power tests, class-group enumeration).
    """

    def __init__(self, poly, basis=None, conj=None, name=""):
        coeffs = tuple(int(c) for c in poly)
        if coeffs[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        self.poly = Poly(tuple(Fraction(c) for c in coeffs))
        self.int_poly = coeffs
        self.n = len(coeffs) - 1
        self.name = name or f"deg{self.n}field"
        if basis is None:
            basis = [[Fraction(1 if i == j else 0) for j in range(self.n)]
                     for i in range(self.n)]
        self.basis = [[Fraction(x) for x in row] for row in basis]
        self.basis_inv = qmat_inverse(self.basis)
        self._setup_mult_table()
        r1 = sturm_real_roots(self.poly)
        self.signature = (r1, (self.n - r1) // 2)
        self.disc = self._trace_form_disc()
        self.poly_disc = discriminant(self.poly)
        idx2 = Fraction(self.poly_disc) / Fraction(self.disc)
        if idx2.denominator != 1 or not _is_square(idx2.numerator):
            raise CertificationError("basis discriminant incompatible "
                                     "with the defining polynomial")
        self.index = math.isqrt(int(idx2))
        self.conj_matrix = None
        if conj is not None:
            self.conj_matrix = [[Fraction(x) for x in row] for row in conj]
            self._certify_conj()
        self._prime_cache = {}
        self._is_pth_cache = {}

    # -- construction internals --

    def _setup_mult_table(self):
        n = self.n
        # products of basis elements in power coordinates, then back
        table = []
        for i in range(n):
            row_i = []
            for j in range(n):
                prod = _poly_mulmod(self.basis[i], self.basis[j],
                                    self.int_poly)
                coords = self._power_to_basis(prod)
                for c in coords:
                    if c.denominator != 1:
                        raise CertificationError(
                            "integral basis is not closed under products")
                row_i.append(tuple(int(c) for c in coords))
            table.append(row_i)
        self.mult_table = table
        one = self._power_to_basis([Fraction(1)] + [Fraction(0)] * (n - 1))
        if any(c.denominator != 1 for c in one):
            raise CertificationError("1 is not in the integral basis span")
        self.one_coords = tuple(int(c) for c in one)
        theta = self._power_to_basis([Fraction(0), Fraction(1)]
                                     + [Fraction(0)] * (n - 2)
                                     if n > 1 else [Fraction(0)])
        if any(c.denominator != 1 for c in theta):
            raise CertificationError("theta is not integral over the basis")
        self.theta_coords = tuple(int(c) for c in theta)

    def _power_to_basis(self, power_coords):
        sol = qmat_solve(self.basis, tuple(power_coords))
        if sol is None:
            raise ArithmeticError("basis is singular")
        return sol

    def _basis_to_power(self, coords, den=1):
        n = self.n
        return [sum(Fraction(coords[i], den) * self.basis[i][j]
                    for i in range(n)) for j in range(n)]

    def _trace_form_disc(self):
        n = self.n
        # traces of powers of theta by Newton's identities:
        # s_k = -k a_{n-k} - sum_{i=1}^{k-1} a_{n-i} s_{k-i}  (a_{n-i}=0, i>n)
        s = [Fraction(0)] * (2 * n)
        s[0] = Fraction(n)
        a = self.int_poly
        for k in range(1, 2 * n):
            acc = Fraction(0)
            if k <= n:
                acc += Fraction(k * a[n - k])
            for i in range(1, min(k, n + 1)):
                if n - i >= 0:
                    acc += Fraction(a[n - i]) * s[k - i]
            s[k] = -acc
        gram = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                prod = _poly_mulmod(self.basis[i], self.basis[j],
                                    self.int_poly)
                tr = sum(prod[k] * s[k] for k in range(len(prod)))
                gram[i][j] = tr
        det = _qmat_det(gram)
        if det.denominator != 1:
            raise CertificationError("trace form determinant not integral")
        return int(det)

    def _certify_conj(self):
        m = self.conj_matrix
        # involution and ring homomorphism on basis products
        el = self.el
        imgs = [self.apply_matrix(el([1 if k == i else 0
                                      for k in range(self.n)]), m)
                for i in range(self.n)]
        for i in range(self.n):
            for j in range(self.n):
                lhs = imgs[i] * imgs[j]
                rhs = self.apply_matrix(
                    el(self.mult_table[i][j]), m)
                if lhs != rhs:
                    raise CertificationError("conjugation is not a "
                                             "ring homomorphism")
        for i in range(self.n):
            twice = self.apply_matrix(imgs[i], m)
            if twice != el([1 if k == i else 0 for k in range(self.n)]):
                raise CertificationError("conjugation is not an involution")

    def apply_matrix(self, x, m):
        n = self.n
        num = [sum(Fraction(x.num[i], x.den) * m[i][j] for i in range(n))
               for j in range(n)]
        return self.from_fractions(num)

    # -- element constructors --

    def el(self, coords, den=1):
        return FieldElement(self, tuple(int(c) for c in coords), int(den))

    def zero(self):
        return self.el([0] * self.n)

    def one(self):
        return self.el(self.one_coords)

    def theta(self):
        return self.el(self.theta_coords)

    def from_int(self, k):
        return self.el([c * k for c in self.one_coords])

    def from_rational(self, fr):
        fr = Fraction(fr)
        return self.el([c * fr.numerator for c in self.one_coords],
                       fr.denominator)

    def from_fractions(self, fracs):
        den = 1
        for f in fracs:
            den = den * Fraction(f).denominator // math.gcd(
                den, Fraction(f).denominator)
        return self.el([int(Fraction(f) * den) for f in fracs], den)

    def from_poly_coeffs(self, coeffs):
        """Element given as a polynomial in theta with rational coeffs."""
        n = self.n
        power = [Fraction(0)] * n
        cur = [Fraction(1)] + [Fraction(0)] * (n - 1)
        for i, c in enumerate(coeffs):
            c = Fraction(c)
            if c:
                for j in range(n):
                    power[j] += c * cur[j]
            if i + 1 < len(coeffs):
                cur = _poly_mulmod(cur, [Fraction(0), Fraction(1)],
                                   self.int_poly)
        return self.from_fractions(self._power_to_basis(power))

    def conj(self, x):
        if self.conj_matrix is None:
            raise CertificationError(f"{self.name}: no conjugation data")
        return self.apply_matrix(x, self.conj_matrix)

    def t2_gram(self):
        """Gram matrix Tr(w_i * conj(w_j)): exact, positive definite."""
        if not hasattr(self, "_t2"):
            n = self.n
            basis_els = [self.el([1 if k == i else 0 for k in range(n)])
                         for i in range(n)]
            conj_els = [self.conj(b) for b in basis_els]
            self._t2 = [[(basis_els[i] * conj_els[j]).trace()
                         for j in range(n)] for i in range(n)]
        return self._t2

    def minkowski_bound(self):
        """Exact rational upper bound for the Minkowski constant."""
        n = self.n
        r2 = self.signature[1]
        # 4/pi < 424/333 since pi > 333/106
        four_over_pi = Fraction(424, 333)
        fac = Fraction(math.factorial(n), n ** n)
        sq = _isqrt_ceil(abs(self.disc))
        return fac * four_over_pi ** r2 * sq

    def __repr__(self):
        return f"NumberField({self.name}, deg {self.n})"

    def __eq__(self, other):
        return (isinstance(other, NumberField)
                and self.int_poly == other.int_poly
                and self.basis == other.basis)

    def __hash__(self):
        return hash(self.int_poly)


def _poly_mulmod(a, b, int_poly):
    """Product of power-coordinate vectors mod the defining polynomial."""
    n = len(int_poly) - 1
    out = [Fraction(0)] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += Fraction(x) * Fraction(y)
    for i in reversed(range(n, len(out))):
        c = out[i]
        if c:
            for j in range(n):
                out[i - n + j] -= c * int_poly[j]
            out[i] = Fraction(0)
    return out[:n]


def _qmat_det(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return det


def _is_square(k):
    return k >= 0 and math.isqrt(k) ** 2 == k


def _isqrt_ceil(k):
    r = math.isqrt(k)
    return r if r * r == k else r + 1


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    field: NumberField
    num: tuple     # integer coordinates over the integral basis
    den: int       # positive

    def __post_init__(self):
        if self.den == 0:
            raise ZeroDivisionError
        num, den = self.num, self.den
        if den < 0:
            num, den = tuple(-c for c in num), -den
        g = den
        for c in num:
            g = math.gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        object.__setattr__(self, "num", tuple(int(c) for c in num))
        object.__setattr__(self, "den", int(den))

    def is_zero(self):
        return all(c == 0 for c in self.num)

    def is_integral(self):
        return self.den == 1

    def __add__(self, other):
        other = self._coerce(other)
        d = self.den * other.den // math.gcd(self.den, other.den)
        a, b = d // self.den, d // other.den
        return FieldElement(self.field,
                            tuple(x * a + y * b
                                  for x, y in zip(self.num, other.num)), d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return FieldElement(self.field, tuple(-c for c in self.num), self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.field
        t = f.mult_table
        n = f.n
        out = [0] * n
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(other.num):
                    if b:
                        ab = a * b
                        row = t[i][j]
                        for k in range(n):
                            out[k] += ab * row[k]
        return FieldElement(f, tuple(out), self.den * other.den)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError
        f = self.field
        m = self.mult_matrix()
        sol = qmat_solve(m, tuple(f.one().as_fractions()))
        if sol is None:
            raise ArithmeticError("inversion failed")
        return f.from_fractions(sol)

    def mult_matrix(self):
        """Matrix of multiplication by self on the integral basis
        (rows = images of basis vectors), rational entries."""
        f = self.field
        n = f.n
        rows = []
        for i in range(n):
            e = f.el([1 if k == i else 0 for k in range(n)])
            rows.append((self * e).as_fractions())
        return rows

    def as_fractions(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    def power_coords(self):
        return self.field._basis_to_power(self.num, self.den)

    def norm(self):
        f = self.field
        det = zmat_det([list(r) for r in
                        [[c for c in row] for row in
                         self._int_mult_matrix()]])
        return Fraction(det, self.den ** f.n)

    def _int_mult_matrix(self):
        """Multiplication matrix of num (integral part), integer entries."""
        f = self.field
        t = f.mult_table
        n = f.n
        rows = [[0] * n for _ in range(n)]
        for i, a in enumerate(self.num):
            if a:
                for j in range(n):
                    row = t[i][j]
                    for k in range(n):
                        rows[j][k] += a * row[k]
        return rows

    def trace(self):
        m = self._int_mult_matrix()
        return Fraction(sum(m[i][i] for i in range(self.field.n)), self.den)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            return self.field.from_rational(other)
        raise TypeError(f"cannot coerce {type(other)}")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"El({list(self.num)}/{self.den})"


# ---------------------------------------------------------------------------
# prime ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeIdeal:
    field: NumberField
    q: int
    gen_poly: tuple       # monic lift of the irreducible factor mod q
    e: int
    f: int

    def norm(self):
        return self.q ** self.f

    def residue_field(self):
        if self.f == 1:
            return GF(self.q)
        return GF(self.q, tuple(c % self.q for c in self.gen_poly))

    def label(self):
        return (self.q, self.gen_poly)

    def __repr__(self):
        return f"P({self.q}; e={self.e}, f={self.f})"

    # lattice data and valuation machinery are cached on first use
    def _data(self):
        key = ("pid_data", self.label())
        cache = self.field._prime_cache
        if key not in cache:
            cache[key] = _PrimeData(self)
        return cache[key]

    def hnf(self):
        return self._data().hnf

    def contains(self, x: FieldElement):
        if not x.is_integral():
            raise ValueError("membership test needs an integral element")
        return self._data().contains(x.num)

    def valuation(self, x: FieldElement):
        """v_P(x) for nonzero x (exact)."""
        if x.is_zero():
            raise ValueError("valuation of zero")
        d = self._data()
        vden = _int_val(self.q, x.den) * self.e
        return d.val_integral(x.num) - vden

    def residue(self, x: FieldElement):
        """Image of x in the residue field; requires v_P(x) >= 0 and
        x integral at primes above q."""
        Fq = self.residue_field()
        den = x.den
        if den % self.q == 0:
            raise ValueError("element not integral at the residue prime")
        dinv = pow(den, -1, self.q)
        power = x.field._basis_to_power(x.num, 1)
        out = Fq.zero()
        tbar = Fq.el((0, 1)) if self.f > 1 else _gf_root(Fq, self.gen_poly)
        tpow = Fq.one()
        for c in power:
            c = Fraction(c)
            if c.denominator % self.q == 0:
                raise ValueError("power coordinates not q-integral")
            ci = c.numerator * pow(c.denominator, -1, self.q) % self.q
            out = Fq.add(out, Fq.mul(Fq.el(ci * dinv % self.q), tpow))
            tpow = Fq.mul(tpow, tbar)
        return out


def _gf_root(Fq, gen_poly):
    return Fq.el((-gen_poly[0]) % Fq.p)


def _int_val(q, n):
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


class _PrimeData:
    """HNF lattice, uniformizer and anti-uniformizer of a prime ideal."""

    def __init__(self, P: PrimeIdeal):
        self.P = P
        F = P.field
        n = F.n
        gen = F.from_poly_coeffs(P.gen_poly)
        if not gen.is_integral():
            raise ArithmeticError("generator polynomial not integral")
        rows = []
        for i in range(n):
            e = [0] * n
            e[i] = P.q
            rows.append(tuple(e))
        for i in range(n):
            b = F.el([1 if k == i else 0 for k in range(n)])
            rows.append(tuple((gen * b).num))
        self.hnf = zmat_hnf(rows)
        if abs(_hnf_det(self.hnf, n)) != P.norm():
            raise CertificationError("prime ideal norm mismatch")
        self._setup_anti_uniformizer(gen)

    def contains(self, num):
        return zmat_solve(self.hnf, tuple(num)) is not None

    def _setup_anti_uniformizer(self, gen):
        """Find y in O with y*P in qO and v_P(y) = e-1 exactly.

        Then y/q has v_P = -1 and is nonnegative at every other prime,
        so repeated multiplication by it reads off v_P exactly."""
        P, F = self.P, self.P.field
        n, q = F.n, P.q
        pi = self._uniformizer()
        self.uniformizer = pi
        # y*b ≡ 0 mod q for every HNF generator b: linear conditions on y
        cond_rows = []
        for b in self.hnf:
            bm = FieldElement(F, tuple(b), 1).mult_matrix()
            # (y * M_b)_j = sum_i y_i bm[i][j]
            for j in range(n):
                cond_rows.append(tuple(int(bm[i][j]) % q for i in range(n)))
        mat = MatModM(q, tuple(cond_rows))
        _, ker = mat_rank_kernel(mat)
        for v in _kernel_candidates(ker, q):
            y = F.el([int(c) for c in v])
            if y.is_zero():
                continue
            prod = y * pi
            if prod.den != 1 or any(c % q for c in prod.num):
                continue
            w = FieldElement(F, tuple(c // q for c in prod.num), 1)
            # v_P(y) = e-1 exactly iff y*pi/q is a unit at P
            if not self.contains(w.num):
                self.anti = y
                return
        raise ArithmeticError("no certified anti-uniformizer found")

    def _uniformizer(self):
        """Element of P \\ P^2 (some HNF basis vector must work)."""
        F = self.P.field
        p2 = _ideal_product_hnf(F, self.hnf, self.hnf)
        for b in self.hnf:
            if zmat_solve(p2, tuple(b)) is None:
                return FieldElement(F, tuple(b), 1)
        raise ArithmeticError("prime ideal equals its square?")

    def val_integral(self, num):
        """Valuation of an integral coordinate vector."""
        P, F = self.P, self.P.field
        q = P.q
        x = FieldElement(F, tuple(num), 1)
        if x.is_zero():
            raise ValueError("valuation of zero")
        v = 0
        while True:
            if not self.contains(x.num) or x.den != 1:
                return v
            y = x * self.anti
            if y.den != 1 or any(c % q for c in y.num):
                return v
            x = FieldElement(F, tuple(c // q for c in y.num), 1)
            v += 1


def _kernel_candidates(ker, q):
    """Kernel vectors to try: basis, then pairs, then a seeded sweep."""
    for v in ker:
        yield v
    for a, b in itertools.combinations(ker, 2):
        for c in range(1, q):
            yield tuple((x + c * y) % q for x, y in zip(a, b))
    if len(ker) > 2:
        state = 0xA5F
        for _ in range(500):
            coeffs = []
            for _ in ker:
                state = (1103515245 * state + 12345) % (1 << 31)
                coeffs.append(state % q)
            if any(coeffs):
                yield tuple(sum(c * v[i] for c, v in zip(coeffs, ker)) % q
                            for i in range(len(ker[0])))


def _hnf_det(hnf_rows, n):
    if len(hnf_rows) != n:
        return 0
    det = 1
    for i, row in enumerate(hnf_rows):
        piv = next((x for x in row if x), 0)
        det *= piv
    return det


def _ideal_product_hnf(F, h1, h2):
    rows = []
    for a in h1:
        ea = FieldElement(F, tuple(a), 1)
        for b in h2:
            rows.append(tuple((ea * FieldElement(F, tuple(b), 1)).num))
    return zmat_hnf(rows)


def factor_prime(F: NumberField, q: int):
    """Prime ideals above q, via the factorization of f mod q.

    Requires q prime and q not dividing [O_F : Z[theta]]."""
    key = ("factor", q)
    if key in F._prime_cache:
        return F._prime_cache[key]
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if F.index % q == 0:
        raise CertificationError(
            f"{q} divides the index [O_F:Z[theta]] = {F.index}; "
            "field/prime pair out of catalog scope")
    Fq = GF(q)
    fbar = GFPoly(Fq, [c % q for c in F.int_poly])
    out = []
    for (g, e) in poly_factor_mod_q(fbar):
        gen = tuple(int(c[0]) % q for c in g.coeffs)
        out.append(PrimeIdeal(F, q, gen, e, g.degree))
    if sum(P.e * P.f for P in out) != F.n:
        raise CertificationError("sum of e*f does not equal the degree")
    out.sort(key=lambda P: P.gen_poly)
    F._prime_cache[key] = out
    return out


def factor_principal(F: NumberField, x: FieldElement):
    """Factorization of the fractional ideal (x) as [(PrimeIdeal, exp)].

    Verified: the product of residue norms matches |N(x)| exactly."""
    if x.is_zero():
        raise ValueError("cannot factor zero")
    nrm = x.norm()
    support = set(_factor_int(abs(nrm.numerator)))
    support |= set(_factor_int(abs(nrm.denominator)))
    support |= set(_factor_int(x.den))
    out = []
    for q in sorted(support):
        for P in factor_prime(F, q):
            v = P.valuation(x)
            if v:
                out.append((P, v))
    # verification against the norm
    check = Fraction(1)
    for (P, v) in out:
        check *= Fraction(P.norm()) ** v
    if check != abs(nrm):
        raise CertificationError("ideal factorization does not match "
                                 f"|N(x)|: {check} vs {abs(nrm)}")
    return out


def _factor_int(n):
    """Prime factorization dict of |n| (trial division + Pollard rho)."""
    n = abs(int(n))
    out = {}
    if n <= 1:
        return out
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def _pollard_rho(n):
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        seed += 1
        x = y = 2
        c = seed
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


# ---------------------------------------------------------------------------
# exact p-th power testing
# ---------------------------------------------------------------------------

def is_pth_power(F: NumberField, a: FieldElement, p: int):
    """Return x with x^p == a, or None with certainty.

    The candidate root is reconstructed through an auxiliary prime l
    (few factors, unramified, coprime to everything in sight) at a
    modulus exceeding twice the exact T2 coordinate bound, then verified
    by exact arithmetic.  A None answer is a certificate: any true root
    would have been reconstructed.
    """
    if a.is_zero():
        raise ValueError("zero radicand")
    key = (a.num, a.den, p)
    if key in F._is_pth_cache:
        return F._is_pth_cache[key]
    res = _is_pth_power_impl(F, a, p)
    F._is_pth_cache[key] = res
    return res


def _is_pth_power_impl(F, a, p):
    b = a * F.from_int(a.den ** p)     # integral; root of b gives root of a
    scale = F.from_int(a.den)
    nb = b.norm()
    assert nb.denominator == 1
    root_n = _int_nth_root(abs(int(nb)), p)
    if root_n is None:
        return None
    if int(nb) < 0 and p % 2 == 0:
        return None
    # T2 coordinate bound for the would-be root
    t2b = (b * F.conj(b)).trace()
    assert t2b.denominator == 1
    t2_root_bound = F.n * (_int_nth_root_ceil(int(t2b), p) + 1)
    ginv = qmat_inverse(F.t2_gram())
    hmax = 1
    for i in range(F.n):
        bound2 = Fraction(t2_root_bound) * ginv[i][i]
        hmax = max(hmax, _isqrt_ceil(math.ceil(bound2)) + 1)
    # auxiliary prime: f mod l squarefree with few factors, l coprime to
    # p, disc, index, N(b) and the basis denominators
    bad = abs(int(nb)) * abs(F.disc) * F.index * p
    ell, factors = _choose_aux_prime(F, bad)
    K = 1
    while ell ** K <= 2 * hmax + 2:
        K += 1
    from kummerlab.localfield import CoeffRing
    rings = []
    theta_roots = []
    for h in factors:
        W = CoeffRing(ell, K, modulus=None if h.degree == 1 else
                      tuple(c[0] for c in h.coeffs))
        rings.append(W)
        theta_roots.append(_lift_theta_root(W, F.int_poly, h))
    # evaluate the integral basis and b at each root
    basis_vals = []
    b_vals = []
    for W, th in zip(rings, theta_roots):
        row = []
        for i in range(F.n):
            pc = F.basis[i]
            row.append(_eval_fractions(W, pc, th))
        basis_vals.append(row)
        b_vals.append(_eval_fractions(W, b.power_coords(), th))
    # p-th roots of b at each factor
    root_choices = []
    for W, bv in zip(rings, b_vals):
        roots = _pth_roots_in_w(W, bv, p)
        if not roots:
            return None
        root_choices.append(roots)
    for combo in itertools.product(*root_choices):
        coords = _solve_coords(F, rings, basis_vals, combo, ell, K)
        if coords is None:
            continue
        centered = tuple(c - ell ** K if c > ell ** K // 2 else c
                         for c in coords)
        cand = F.el(centered)
        if cand ** p == b:
            return cand / scale
    return None


def _int_nth_root(m, p):
    if m == 0:
        return 0
    lo, hi = 1, 1
    while hi ** p < m:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** p < m:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** p == m else None


def _int_nth_root_ceil(m, p):
    lo, hi = 0, 1
    while hi ** p < m:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** p < m:
            lo = mid + 1
        else:
            hi = mid
    return lo


def _choose_aux_prime(F, bad):
    from kummerlab.polys import GF, GFPoly, poly_factor_mod_q
    best = None
    ell = 2
    tried = 0
    while tried < 80:
        ell = _next_prime(ell)
        if bad % ell == 0:
            continue
        tried += 1
        Fq = GF(ell)
        fac = poly_factor_mod_q(GFPoly(Fq, [c % ell for c in F.int_poly]))
        if any(e > 1 for (_, e) in fac):
            continue
        g = len(fac)
        if best is None or g < best[1]:
            best = (ell, g, [h for (h, _) in fac])
        if g <= 2:
            break
    if best is None:
        raise ArithmeticError("no auxiliary prime found")
    return best[0], best[2]


def _next_prime(n):
    n += 1
    while not is_prime(n):
        n += 1
    return n


def _lift_theta_root(W, int_poly, hbar):
    """Root of the global polynomial in W lifting the residue root."""
    # residue root: class of y if deg(h) > 1 else the root of linear h
    if hbar.degree == 1:
        r0 = W.el(int((-hbar.coeffs[0][0]) % W.p))
    else:
        r0 = W.el((0, 1))
    fp = [W.el(c) for c in int_poly]
    fprime = [W.el(i * c) for i, c in enumerate(int_poly)][1:]
    x = r0
    for _ in range(W.N.bit_length() + 2):
        fx = _eval_w(W, fp, x)
        dfx = _eval_w(W, fprime, x)
        x = W.sub(x, W.mul(fx, W.inv(dfx)))
    if not W.is_zero(_eval_w(W, fp, x)):
        raise ArithmeticError("theta root lifting failed")
    return x


def _eval_w(W, coeffs, x):
    out = W.zero()
    for c in reversed(coeffs):
        out = W.add(W.mul(out, x), c)
    return out


def _eval_fractions(W, fracs, x):
    out = W.zero()
    for c in reversed([Fraction(f) for f in fracs]):
        num = W.el(c.numerator % W.pn)
        den_inv = W.el(pow(c.denominator, -1, W.pn))
        out = W.add(W.mul(out, x), W.mul(num, den_inv))
    return out


def _pth_roots_in_w(W, beta, p):
    """All p-th roots of a unit beta in W (possibly empty)."""
    from kummerlab.polys import GFPoly, gfpoly_roots
    Fq = W.res_field
    resid = W.residue(beta)
    if Fq.is_zero_el(resid):
        return []
    poly = GFPoly(Fq, [Fq.neg(resid)] + [Fq.zero()] * (p - 1) + [Fq.one()])
    roots = []
    for r0 in gfpoly_roots(poly):
        x = W.lift_res(r0)
        for _ in range(W.N.bit_length() + 2):
            xp = _w_pow(W, x, p - 1)
            fx = W.sub(W.mul(xp, x), beta)
            dfx = W.mul(W.el(p), xp)
            x = W.sub(x, W.mul(fx, W.inv(dfx)))
        if W.is_zero(W.sub(_w_pow(W, x, p), beta)):
            roots.append(x)
    return roots


def _w_pow(W, x, k):
    out = W.one()
    while k:
        if k & 1:
            out = W.mul(out, x)
        x = W.mul(x, x)
        k >>= 1
    return out


def _solve_coords(F, rings, basis_vals, targets, ell, K):
    """Solve sum_j c_j w_j(theta_i) = y_i for integer c mod ell^K."""
    mod = ell ** K
    rows = []
    rhs = []
    for W, brow, y in zip(rings, basis_vals, targets):
        k = W.k
        for t in range(k):
            rows.append([_w_coord(W, brow[j], t) for j in range(F.n)])
            rhs.append(_w_coord(W, y, t))
    # gaussian elimination mod ell^K (pivots are units mod ell)
    n = F.n
    for c in range(n):
        piv = next((i for i in range(c, len(rows)) if rows[i][c] % ell), None)
        if piv is None:
            return None
        rows[c], rows[piv] = rows[piv], rows[c]
        rhs[c], rhs[piv] = rhs[piv], rhs[c]
        inv = pow(rows[c][c], -1, mod)
        rows[c] = [x * inv % mod for x in rows[c]]
        rhs[c] = rhs[c] * inv % mod
        for i in range(len(rows)):
            if i != c and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % mod for x, y in zip(rows[i], rows[c])]
                rhs[i] = (rhs[i] - f * rhs[c]) % mod
    for i in range(n, len(rows)):
        if rhs[i] % mod:
            return None
    return tuple(rhs[:n])


def _w_coord(W, x, t):
    if W.k == 1:
        return x % W.pn
    return x[t] % W.pn

# ---------------------------------------------------------------------------
# class groups at desk scale
# ---------------------------------------------------------------------------

@dataclass
class ClassGroupData:
    field: NumberField
    invariants: list            # d_1 | d_2 | ... (nontrivial entries only)
    s_invariants: list          # invariants of Cl_S
    factor_base: list           # PrimeIdeal list
    relation_count: int
    certificate: str            # 'exact-trivial' | 'exact' | 'upper-bound'
    p: int = 0

    def order_upper(self):
        out = 1
        for d in self.s_invariants:
            out *= d
        return out

    def p_part(self, p):
        return [_p_part_int(d, p) for d in self.s_invariants
                if _p_part_int(d, p) > 1]


def _p_part_int(d, p):
    out = 1
    while d % p == 0:
        out *= p
        d //= p
    return out


class ClassGroupRefusal(ValueError):
    """Minkowski bound above the configured ceiling."""


def class_group(F: NumberField, S=(), ceiling=60, effort=2):
    """S-class group by Minkowski enumeration.

    Relations come from elements of the factor-base prime lattices with
    smooth norms.  The computed group maps onto Cl_S, so a trivial result
    is exact; nontrivial invariant lists are certified upper bounds.
    """
    bound = F.minkowski_bound()
    bceil = math.floor(bound)
    if bceil > ceiling:
        raise ClassGroupRefusal(
            f"Minkowski bound {bceil} exceeds ceiling {ceiling}; "
            "ingest bundle data instead")
    base = []
    q = 1
    while True:
        q = _next_prime(q)
        if q > bceil:
            break
        for P in factor_prime(F, q):
            if P.norm() <= bceil:
                base.append(P)
    if not base:
        data = ClassGroupData(F, [], [], [], 0, "exact-trivial")
        return data
    index = {P.label(): i for i, P in enumerate(base)}
    rels = []
    seen = set()

    def try_element(x):
        if x.is_zero() or not x.is_integral():
            return
        if x.num in seen:
            return
        seen.add(x.num)
        nrm = abs(int(x.norm().numerator))
        if nrm == 0:
            return
        fac = _factor_int(nrm)
        if any(q > bceil for q in fac):
            return
        vec = [0] * len(base)
        for q in fac:
            for P in factor_prime(F, q):
                v = P.valuation(x)
                if v:
                    if P.label() not in index:
                        return
                    vec[index[P.label()]] = v
        rels.append(tuple(vec))

    # elements of each prime lattice (short combinations of reduced rows)
    for P in base:
        basis_rows = _reduce_lattice(F, P.hnf())
        for coeffs in itertools.product(range(-effort, effort + 1),
                                        repeat=min(len(basis_rows), 4)):
            if not any(coeffs):
                continue
            vec = [0] * F.n
            for c, row in zip(coeffs, basis_rows):
                if c:
                    for i in range(F.n):
                        vec[i] += c * row[i]
            try_element(F.el(vec))
    # small elements of O itself
    for coeffs in itertools.product(range(-effort, effort + 1), repeat=F.n):
        if any(coeffs):
            try_element(F.el(coeffs))

    inv = [d for d in zmat_snf_diagonal(rels) if d != 1]
    free = len(base) - len([d for d in zmat_snf_diagonal(rels) if d != 0])
    # quotient by the classes of S-primes
    s_rows = list(rels)
    for P in S:
        if P.label() not in index:
            if P.norm() <= bceil:
                raise ArithmeticError("S-prime missing from factor base")
            # S-prime beyond the bound: find a smooth relation through it
            raise ClassGroupRefusal(
                "S-prime outside the factor base; bundle data required")
        row = [0] * len(base)
        row[index[P.label()]] = 1
        s_rows.append(tuple(row))
    s_inv_all = zmat_snf_diagonal(s_rows)
    s_free = len(base) - len([d for d in s_inv_all if d != 0])
    s_inv = [d for d in s_inv_all if d not in (0, 1)]
    if free > 0 or s_free > 0 or 0 in inv:
        cert = "inconclusive"
    elif not s_inv and not inv:
        cert = "exact-trivial"
    else:
        cert = "upper-bound"
    return ClassGroupData(F, inv, s_inv, base, len(rels), cert)


def _reduce_lattice(F: NumberField, hnf_rows):
    """Exact greedy size reduction of a lattice basis via the T2 form.

    Repeated pairwise Gauss steps until a fixpoint; each step strictly
    decreases an integer length, so termination is guaranteed."""
    if F.conj_matrix is None:
        return [list(r) for r in hnf_rows]
    g = F.t2_gram()
    rows = [list(r) for r in hnf_rows]

    def ip(u, v):
        return sum(u[i] * g[i][j] * v[j]
                   for i in range(F.n) for j in range(F.n))

    changed = True
    guard = 0
    while changed and guard < 10000:
        changed = False
        guard += 1
        rows.sort(key=lambda r: ip(r, r))
        for i in range(len(rows)):
            for j in range(len(rows)):
                if i == j:
                    continue
                denom = ip(rows[j], rows[j])
                if denom == 0:
                    continue
                mu = Fraction(ip(rows[i], rows[j]), denom)
                k = int(mu + Fraction(1, 2)) if mu >= 0 \
                    else -int(-mu + Fraction(1, 2))
                if k:
                    new = [a - k * b for a, b in zip(rows[i], rows[j])]
                    if any(new) and ip(new, new) < ip(rows[i], rows[i]):
                        rows[i] = new
                        changed = True
    return rows


# ---------------------------------------------------------------------------
# S-units: ingestion and certification
# ---------------------------------------------------------------------------

@dataclass
class SUnitData:
    field: NumberField
    p: int
    zeta: FieldElement          # generator of the full torsion subgroup
    zeta_order: int
    n_F: int                    # mu_{p^{n_F}} is the p-power torsion
    gens: list                  # fundamental S-units (mod torsion)
    S: list                     # PrimeIdeal list (the p-adic primes)

    def zeta_p(self):
        """The canonical primitive p-th root of unity."""
        return self.zeta ** (self.zeta_order // self.p)

    def zeta_p_power(self):
        """Canonical generator of mu_{p^{n_F}}."""
        return self.zeta ** (self.zeta_order // self.p ** self.n_F)


@dataclass
class SUnitReport:
    s_unit_ok: bool
    torsion_ok: bool
    n_f_ok: bool
    rank_ok: bool
    independent: bool
    saturated: bool
    saturation_mode: str
    messages: list

    def certified(self):
        return (self.s_unit_ok and self.torsion_ok and self.n_f_ok
                and self.rank_ok and self.independent and self.saturated)


def validate_sunits(F: NumberField, data: SUnitData, log_precision=40):
    """Exact certification of ingested S-unit generators.

    Independence comes from the p-adic logarithm embedding at certified
    precision (a nonvanishing minor mod p^N is a proof); saturation from
    an is_pth_power sweep; everything else from valuations.
    """
    msgs = []
    p = data.p
    s_ok = True
    for g in data.gens:
        supp = factor_principal(F, g)
        if any(P.label() not in [Q.label() for Q in data.S]
               for (P, _) in supp):
            s_ok = False
            msgs.append(f"generator {g} is not an S-unit")
    z = data.zeta
    torsion_ok = (z ** data.zeta_order == F.one())
    if torsion_ok:
        for q in sorted(set(_factor_int(data.zeta_order))):
            if z ** (data.zeta_order // q) == F.one():
                torsion_ok = False
                msgs.append("zeta is not a primitive root of unity")
                break
    zo_p = _p_part_int(data.zeta_order, p)
    n_f_ok = (zo_p == p ** data.n_F)
    if n_f_ok and data.n_F > 0:
        deeper = is_pth_power(F, data.zeta_p_power(), p)
        if deeper is not None:
            n_f_ok = False
            msgs.append("mu_{p^{n_F+1}} unexpectedly present")
    r1, r2 = F.signature
    expected = r1 + r2 + len(data.S) - 1
    rank_ok = (len(data.gens) == expected)
    if not rank_ok:
        msgs.append(f"rank {len(data.gens)} != r1+r2+|S|-1 = {expected}")
    independent = _certify_independence(F, data, log_precision, msgs)
    saturated, mode = _certify_saturation(F, data, msgs)
    return SUnitReport(s_ok, torsion_ok, n_f_ok, rank_ok, independent,
                       saturated, mode, msgs)


def _certify_independence(F, data, prec, msgs):
    from kummerlab.localfield import hensel_factor, local_log
    p = data.p
    completions = hensel_factor(Poly(tuple(Fraction(c) for c in F.int_poly)),
                                p, prec)
    cols = []
    for g in data.gens:
        vals = [P.valuation(g) for P in data.S]
        logrow = []
        for K in completions:
            u, shift = _embed_unit(F, K, g)
            lg, _ = local_log(K, u)
            logrow.extend(lg)
        cols.append(vals + [int(c) for c in logrow])
    r = len(data.gens)
    if r == 0:
        return True
    # certified rank: an r x r minor with p-valuation < prec is a proof
    nv = len(data.S)
    best = _find_unimodular_minor(cols, r, nv, p, prec)
    if not best:
        msgs.append("independence not certified at this precision")
        return False
    return True


def embed_in_completion(F, K, g):
    """Image of a nonzero g in the completion K, as (pi_valuation, unit).

    Denominators (element's own and the basis denominators, both coprime
    to p by the index precondition) are inverted mod p^N."""
    pcs = F._basis_to_power(g.num, g.den)
    den = 1
    for c in pcs:
        cd = Fraction(c).denominator
        den = den * cd // math.gcd(den, cd)
    pshift = 0
    while den % K.p == 0:
        den //= K.p
        pshift += 1
    num_poly = [int(Fraction(c) * den * K.p ** pshift) % K.pn for c in pcs]
    x = K.from_poly(num_poly)
    v, u = K.unit_part(x)
    u = K.scalar_mul(pow(den, -1, K.pn), u)
    return v - pshift * K.e, u


def _embed_unit(F, K, g):
    """Image of an S-unit g in the completion K, as (unit, pi-shift)."""
    v, u = embed_in_completion(F, K, g)
    return u, v


def _find_unimodular_minor(rows, r, nv, p, prec):
    """Find r columns whose r x r minor is nonzero certified mod p^prec."""
    ncols = len(rows[0])
    # prefer valuation columns (exact integers), then log columns
    for cols in itertools.combinations(range(ncols), r):
        sub = [[rows[i][j] for j in cols] for i in range(r)]
        det = zmat_det(sub)
        if det == 0:
            continue
        if all(j < nv for j in cols):
            return cols
        v = 0
        d = abs(det)
        while d % p == 0 and v < prec:
            d //= p
            v += 1
        if v < prec - 2:
            return cols
    return None


def _certify_saturation(F, data, msgs):
    p = data.p
    r = len(data.gens)
    if p ** (r + 1) <= 800:
        for exps in itertools.product(range(p), repeat=r + 1):
            if not any(exps):
                continue
            x = data.zeta_p_power() ** exps[0]
            for g, e in zip(data.gens, exps[1:]):
                if e:
                    x = x * g ** e
            if is_pth_power(F, x, p) is not None:
                msgs.append(f"unsaturated: exponents {exps}")
                return False, "failed"
        return True, "certified-exhaustive"
    # square-free subset sweep + seeded random exponents
    k = min(r, 12)
    for mask in range(1, 2 ** k):
        x = F.one()
        for i in range(k):
            if mask >> i & 1:
                x = x * data.gens[i]
        if is_pth_power(F, x, p) is not None:
            msgs.append(f"unsaturated: subset {mask:b}")
            return False, "failed"
    state = 0xBEE
    for _ in range(60):
        exps = []
        for _ in range(r + 1):
            state = (1103515245 * state + 12345) % (1 << 31)
            exps.append(state % p)
        if not any(exps):
            continue
        x = data.zeta_p_power() ** exps[0]
        for g, e in zip(data.gens, exps[1:]):
            x = x * g ** e
        if is_pth_power(F, x, p) is not None:
            msgs.append(f"unsaturated: exponents {exps}")
            return False, "failed"
    return True, "certified-randomized"
