"""Q_p arithmetic at fixed precision and the Iwasawa-branch logarithm.

A `PadicNumber` is p^val * unit with the unit known modulo p^N (relative
precision N).  The logarithm uses the branch log(p) = 0 and kills the
Teichmueller part, so log is Z_p-linear on all of Q_p^x and vanishes
exactly on roots of unity and powers of p.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_PRECISION = 30


class PrecisionError(ArithmeticError):
    """Raised when a result cannot be certified at the working precision."""


@dataclass(frozen=True)
class PadicNumber:
    p: int
    val: int          # ignored for zero
    unit: int         # reduced mod p^prec, coprime to p unless zero
    prec: int         # relative precision (p-adic digits of the unit)

    def __post_init__(self):
        if self.prec <= 0:
            raise PrecisionError("precision exhausted")
        u = self.unit % (self.p ** self.prec)
        object.__setattr__(self, "unit", u)
        if u != 0 and u % self.p == 0:
            raise ValueError("unit part not coprime to p")

    @classmethod
    def from_rational(cls, p, num, den=1, prec=DEFAULT_PRECISION):
        if num == 0:
            return cls(p, 0, 0, prec)
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        mod = p ** prec
        return cls(p, v, num * pow(den, -1, mod) % mod, prec)

    def is_zero(self):
        return self.unit == 0

    def valuation(self):
        if self.is_zero():
            raise ValueError("valuation of (approximate) zero")
        return self.val

    def __mul__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return PadicNumber(self.p, 0, 0, min(self.prec, other.prec))
        n = min(self.prec, other.prec)
        return PadicNumber(self.p, self.val + other.val,
                           self.unit * other.unit % self.p ** n, n)

    def __truediv__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError
        if self.is_zero():
            return self
        n = min(self.prec, other.prec)
        mod = self.p ** n
        return PadicNumber(self.p, self.val - other.val,
                           self.unit * pow(other.unit, -1, mod) % mod, n)

    def __add__(self, other):
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        p = self.p
        # absolute precisions
        abs_n = min(self.val + self.prec, other.val + other.prec)
        v0 = min(self.val, other.val)
        total = (self.unit * p ** (self.val - v0)
                 + other.unit * p ** (other.val - v0))
        total %= p ** (abs_n - v0)
        if total == 0:
            return PadicNumber(p, 0, 0, abs_n - v0)
        v = v0
        while total % p == 0:
            total //= p
            v += 1
        rel = abs_n - v
        if rel <= 0:
            raise PrecisionError("total cancellation in addition")
        return PadicNumber(p, v, total, rel)

    def __sub__(self, other):
        return self + PadicNumber(other.p, other.val,
                                  (-other.unit) % other.p ** other.prec
                                  if other.unit else 0, other.prec)

    def __neg__(self):
        return PadicNumber(self.p, self.val,
                           (-self.unit) % self.p ** self.prec
                           if self.unit else 0, self.prec)

    def __eq__(self, other):
        """Equality at the joint precision."""
        if not isinstance(other, PadicNumber):
            return NotImplemented
        d = self - other
        return d.is_zero()

    def lift(self):
        """Integer/rational lift p^val * unit (exact at stated precision)."""
        if self.is_zero():
            return 0
        if self.val >= 0:
            return self.p ** self.val * self.unit
        from fractions import Fraction
        return Fraction(self.unit, self.p ** (-self.val))

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("mixed primes")

    def __repr__(self):
        if self.is_zero():
            return f"O({self.p}^{self.prec})"
        return f"{self.p}^{self.val}*{self.unit} + O({self.p}^{self.val + self.prec})"


def _log_one_unit(p, z, prec):
    """log(1 + z) mod p^prec for v_p(z) >= 1, as an integer {0..p^prec-1}."""
    if z % p != 0:
        raise ValueError("log series needs a principal unit")
    mod_g = p ** (prec + 8)  # guard digits absorb the divisions by n
    acc = 0
    zn = z % mod_g
    n = 1
    while True:
        vz = _intval(p, zn if zn else 0)
        if zn == 0 or vz >= prec + 4:
            break
        k = _intval(p, n)
        body = n // p ** k
        term = zn // p ** k * pow(body, -1, mod_g)
        if n % 2 == 0:
            term = -term
        acc = (acc + term) % mod_g
        n += 1
        zn = zn * z % mod_g
    return acc % p ** prec


def _intval(p, n):
    if n == 0:
        return 1 << 62
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_log(x: PadicNumber) -> PadicNumber:
    """Iwasawa logarithm on Q_p^x: log(p) = 0, Teichmueller part killed."""
    if x.is_zero():
        raise ValueError("log of zero")
    p = x.p
    prec = x.prec
    mod = p ** prec
    u = x.unit % mod
    # u^(p-1) is a principal unit; divide the series value by p-1
    upow = pow(u, p - 1, p ** (prec + 2))
    s = _log_one_unit(p, upow - 1, prec)
    s = s * pow(p - 1, -1, mod) % mod
    if s == 0:
        return PadicNumber(p, 0, 0, prec)
    v = _intval(p, s)
    if v >= prec:
        return PadicNumber(p, 0, 0, prec)
    return PadicNumber(p, v, s // p ** v, prec - v)


def padic_exp(x: PadicNumber) -> PadicNumber:
    """exp on p Z_p (p odd).  Raises outside the convergence disc."""
    p = x.p
    if x.is_zero():
        return PadicNumber(p, 0, 1, x.prec)
    if x.val < 1:
        raise PrecisionError("exp needs valuation >= 1 for odd p")
    prec = x.prec + x.val
    mod_g = p ** (prec + 8)
    z = (x.unit * p ** x.val) % mod_g
    acc = 1
    term = 1
    n = 1
    while True:
        # term := z^n / n!
        k = _intval(p, n)
        term = term * z % mod_g
        term = term // p ** k * pow(n // p ** k, -1, mod_g) % mod_g
        if _intval(p, term if term else 0) >= prec + 4 or term == 0:
            break
        acc = (acc + term) % mod_g
        n += 1
    acc %= p ** prec
    return PadicNumber(p, 0, acc % p ** prec, prec)


def sqrt_exists(p, x: int, prec=DEFAULT_PRECISION):
    """Whether the integer x is a square in Z_p (p odd), exactly."""
    if x == 0:
        return True
    v = _intval(p, x)
    if v % 2:
        return False
    u = x // p ** v
    return pow(u % p, (p - 1) // 2, p) == 1


def lift_root(p, f_coeffs, r0, prec):
    """Hensel-lift a simple root r0 of f mod p to mod p^prec.

    f_coeffs: ascending integer coefficients.  Requires f'(r0) a unit mod p.
    """
    def ev(cs, x, mod):
        out = 0
        for c in reversed(cs):
            out = (out * x + c) % mod
        return out

    d_coeffs = [i * c for i, c in enumerate(f_coeffs)][1:]
    if ev(d_coeffs, r0, p) % p == 0:
        raise ValueError("root is not simple mod p")
    r = r0 % p
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        mod = p ** k
        fr = ev(f_coeffs, r, mod)
        dr = ev(d_coeffs, r, mod)
        r = (r - fr * pow(dr, -1, mod)) % mod
    return r
