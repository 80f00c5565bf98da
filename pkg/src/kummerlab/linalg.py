"""Exact linear algebra: F_p and Z/p^k matrices, and integer lattices.

Matrices are lists of row lists of python ints.  All algorithms are
fraction-free; the only divisions are exact or modular-inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


# ---------------------------------------------------------------------------
# matrices over Z/m
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatModM:
    """Matrix with entries reduced modulo m (m = p or p^k)."""

    modulus: int
    rows: tuple

    def __post_init__(self):
        if self.modulus <= 1:
            raise ValueError("modulus must be >= 2")
        object.__setattr__(
            self, "rows",
            tuple(tuple(x % self.modulus for x in row) for row in self.rows))
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged matrix")

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def to_lists(self):
        return [list(r) for r in self.rows]


def mat_rank_kernel(m: MatModM):
    """Rank and a kernel basis of a matrix over F_p (prime modulus).

    Returns (rank, kernel_basis) with kernel vectors v satisfying M v = 0.
    rank + len(kernel_basis) == ncols.
    """
    p = m.modulus
    if not _is_probable_prime(p):
        raise ValueError("mat_rank_kernel needs a prime modulus; "
                         "use smith_normal_form for p^k")
    a = m.to_lists()
    nr, nc = m.nrows, m.ncols
    pivots = []  # (row, col)
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if a[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] % p:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append((r, c))
        r += 1
        if r == nr:
            break
    pivot_cols = [c for (_, c) in pivots]
    free_cols = [c for c in range(nc) if c not in pivot_cols]
    kernel = []
    for fc in free_cols:
        v = [0] * nc
        v[fc] = 1
        for (ri, c) in pivots:
            v[c] = (-a[ri][fc]) % p
        kernel.append(tuple(v))
    return r, kernel


def solve_mod_p(m: MatModM, target):
    """One solution x of M x = target over F_p, or None."""
    p = m.modulus
    aug = MatModM(p, tuple(tuple(list(row) + [t % p])
                           for row, t in zip(m.rows, target)))
    a = aug.to_lists()
    nr, nc = m.nrows, m.ncols
    r = 0
    pivots = []
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] % p), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] % p:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append((r, c))
        r += 1
    for i in range(r, nr):
        if a[i][nc] % p:
            return None
    x = [0] * nc
    for (ri, c) in pivots:
        x[c] = a[ri][nc] % p
    return tuple(x)


def smith_normal_form(m: MatModM):
    """Smith normal form over Z/p^k.

    Returns (invariants, U, V) with U*M*V = diag(invariants) mod p^k,
    U and V invertible mod p^k, and d_i | d_{i+1} (0 is represented by 0,
    i.e. p^k itself).  Entries of `invariants` are powers of p (or 0).
    """
    mod = m.modulus
    p = _smallest_prime_factor(mod)
    a = m.to_lists()
    nr, nc = m.nrows, m.ncols
    u = _identity(nr)
    v = _identity(nc)

    def val(x):
        x %= mod
        if x == 0:
            return math.inf
        k = 0
        while x % p == 0:
            x //= p
            k += 1
        return k

    t = 0
    while t < min(nr, nc):
        # locate the entry of minimal p-valuation in the trailing block
        best = (math.inf, None, None)
        for i in range(t, nr):
            for j in range(t, nc):
                w = val(a[i][j])
                if w < best[0]:
                    best = (w, i, j)
        if best[1] is None or best[0] is math.inf:
            break
        _, bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        u[t], u[bi] = u[bi], u[t]
        for row in a:
            row[t], row[bj] = row[bj], row[t]
        for row in v:
            row[t], row[bj] = row[bj], row[t]
        # normalise pivot to a pure power of p
        piv = a[t][t] % mod
        k = 0
        unit = piv
        while unit % p == 0:
            unit //= p
            k += 1
        inv_unit = pow(unit, -1, mod)
        a[t] = [(x * inv_unit) % mod for x in a[t]]
        u[t] = [(x * inv_unit) % mod for x in u[t]]
        piv = a[t][t]  # now p^k
        # clear column and row; pivot divides everything in the block
        for i in range(nr):
            if i != t and a[i][t] % mod:
                f = (a[i][t] // piv) % mod
                a[i] = [(x - f * y) % mod for x, y in zip(a[i], a[t])]
                u[i] = [(x - f * y) % mod for x, y in zip(u[i], u[t])]
        for j in range(nc):
            if j != t and a[t][j] % mod:
                f = (a[t][j] // piv) % mod
                for row in a:
                    row[j] = (row[j] - f * row[t]) % mod
                for row in v:
                    row[j] = (row[j] - f * row[t]) % mod
        t += 1
    diag = [a[i][i] % mod for i in range(min(nr, nc))]
    return diag, u, v


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def _smallest_prime_factor(n):
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def _is_probable_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


is_prime = _is_probable_prime  # deterministic for n < 3.3e24


# ---------------------------------------------------------------------------
# integer lattices
# ---------------------------------------------------------------------------

def zmat_hnf(rows):
    """Row-style Hermite normal form of an integer matrix.

    Returns the list of nonzero HNF rows (row span preserved), with
    positive pivots and entries above a pivot reduced to [0, pivot).
    """
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    nc = len(a[0])
    res = []
    col = 0
    while a and col < nc:
        a.sort(key=lambda r: (r[col] == 0, abs(r[col]) if r[col] else 0))
        if a[0][col] == 0:
            col += 1
            continue
        # eliminate column `col` below the smallest entry by gcd steps
        while True:
            nz = [r for r in a[1:] if r[col] != 0]
            if not nz:
                break
            piv = a[0]
            for r in a[1:]:
                if r[col] != 0:
                    q = r[col] // piv[col]
                    for j in range(nc):
                        r[j] -= q * piv[j]
            a.sort(key=lambda r: (r[col] == 0, abs(r[col]) if r[col] else 0))
        piv = a.pop(0)
        if piv[col] < 0:
            piv = [-x for x in piv]
        res.append(piv)
        a = [r for r in a if any(r)]
        col += 1
    # reduce above pivots, left pivot columns first so later subtractions
    # cannot push earlier-reduced columns back out of range
    for k in range(len(res)):
        for i in range(k + 1, len(res)):
            pc = next(j for j in range(nc) if res[i][j])
            q = res[k][pc] // res[i][pc]
            if q:
                for j in range(nc):
                    res[k][j] -= q * res[i][j]
    return [tuple(r) for r in res]


def zmat_kernel(rows):
    """Basis of the left integer kernel {x : x * M = 0} of M (rows given).

    Implemented by HNF of [M | I] and reading off rows whose M-part is 0.
    """
    a = [list(r) for r in rows]
    if not a:
        return []
    nr, nc = len(a), len(a[0])
    aug = [a[i] + [1 if j == i else 0 for j in range(nr)] for i in range(nr)]
    # column HNF on the first nc columns via the row-HNF of the augmented rows
    h = _hnf_full(aug, nc)
    out = []
    for row in h:
        if all(x == 0 for x in row[:nc]):
            out.append(tuple(row[nc:]))
    return out


def _hnf_full(rows, ncols_main):
    """Row HNF keeping zero-main rows (used for kernel extraction)."""
    a = [list(r) for r in rows]
    if not a:
        return []
    nc = len(a[0])
    done = []
    col = 0
    while col < ncols_main:
        live = [r for r in a if r[col] != 0]
        if not live:
            col += 1
            continue
        while True:
            live = [r for r in a if r[col] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            for r in live[1:]:
                q = r[col] // piv[col]
                for j in range(nc):
                    r[j] -= q * piv[j]
        live = [r for r in a if r[col] != 0]
        if live:
            piv = live[0]
            a.remove(piv)
            if piv[col] < 0:
                piv = [-x for x in piv]
            done.append(piv)
        col += 1
    return done + a


def zmat_solve(rows, target):
    """One integer solution x of x * M = target, or None.

    `rows` span a lattice; returns coordinates expressing `target` in the
    row span if it lies there.
    """
    if not rows:
        return None if any(target) else ()
    nr, nc = len(rows), len(rows[0])
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(nr)]
           for i in range(nr)]
    h = _hnf_full(aug, nc)
    t = list(target) + [0] * nr
    coeff = [0] * nr
    for row in h:
        pc = next((j for j in range(nc) if row[j]), None)
        if pc is None:
            continue
        if t[pc] % row[pc]:
            return None
        q = t[pc] // row[pc]
        for j in range(nc + nr):
            t[j] -= q * row[j]
        for j in range(nr):
            coeff[j] += q * row[nc + j]
    if any(t[:nc]):
        return None
    return tuple(coeff)


def zmat_snf_diagonal(rows):
    """Diagonal invariants d_1 | d_2 | ... of an integer matrix."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    nc = len(a[0])
    diag = []
    t = 0
    while a and t < nc:
        while True:
            # move the absolutely smallest nonzero entry to position (0, t)
            bi, bj, bv = None, None, None
            for i, r in enumerate(a):
                for j in range(t, nc):
                    if r[j] != 0 and (bv is None or abs(r[j]) < bv):
                        bi, bj, bv = i, j, abs(r[j])
            if bi is None:
                return _divisor_chain(diag)
            a[0], a[bi] = a[bi], a[0]
            for r in a:
                r[t], r[bj] = r[bj], r[t]
            piv = a[0][t]
            dirty = False
            for r in a[1:]:
                if r[t] != 0:
                    q = r[t] // piv
                    for j in range(nc):
                        r[j] -= q * a[0][j]
                    if r[t] != 0:
                        dirty = True
            for j in range(t + 1, nc):
                if a[0][j] != 0:
                    q = a[0][j] // piv
                    a[0][j] -= q * piv
                    # apply the same column operation to the other rows
                    for r in a[1:]:
                        r[j] -= q * r[t]
                    if a[0][j] != 0:
                        dirty = True
            if dirty:
                continue
            # pivot must divide the whole remaining block for true SNF;
            # fold an offending row in and restart if not
            bad = next((r for r in a[1:]
                        if any(x % piv for x in r[t:])), None)
            if bad is None:
                break
            for j in range(nc):
                a[0][j] += bad[j]
        diag.append(abs(a[0][t]))
        a = [r for r in a[1:] if any(r)]
        t += 1
    return _divisor_chain(diag)


def _divisor_chain(diag):
    diag = list(diag)
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = math.gcd(diag[i], diag[j])
            l = diag[i] * diag[j] // g if g else 0
            diag[i], diag[j] = g, l
    return diag


def zmat_det(rows):
    """Determinant of a square integer matrix (Bareiss, fraction-free)."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def qmat_solve(rows, target):
    """Solve x * M = target exactly over Q (rows of Fractions/ints).

    Returns a tuple of Fractions, or None if inconsistent.
    """
    if not rows:
        return None if any(target) else ()
    nr, nc = len(rows), len(rows[0])
    a = [[Fraction(rows[i][j]) for i in range(nr)] for j in range(nc)]
    t = [Fraction(x) for x in target]
    aug = [a[j] + [t[j]] for j in range(nc)]
    # gaussian elimination on the nc x nr system (columns = unknowns)
    r = 0
    pivots = []
    for c in range(nr):
        piv = next((i for i in range(r, nc) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nc):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
    for i in range(r, nc):
        if aug[i][nr] != 0:
            return None
    x = [Fraction(0)] * nr
    for (ri, c) in pivots:
        x[c] = aug[ri][nr]
    return tuple(x)


def qmat_inverse(rows):
    """Exact inverse of a square rational matrix."""
    n = len(rows)
    a = [[Fraction(rows[i][j]) for j in range(n)] +
         [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]
