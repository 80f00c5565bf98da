import random

import pytest
from hypothesis import given, settings, strategies as st

from kummerlab.linalg import (MatModM, mat_rank_kernel, smith_normal_form,
                              zmat_det, zmat_hnf, zmat_kernel,
                              zmat_snf_diagonal, zmat_solve)


def _rank_oracle(rows, p):
    """Independent row-echelon rank (different pivoting order)."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    rank = 0
    cols = list(range(len(a[0])))[::-1]  # right-to-left pivoting
    used = set()
    for c in cols:
        piv = None
        for i in range(len(a)):
            if i not in used and a[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        used.add(piv)
        rank += 1
        inv = pow(a[piv][c], -1, p)
        for i in range(len(a)):
            if i != piv and a[i][c] % p:
                f = a[i][c] * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[piv])]
    return rank


def test_rank_kernel_contract_examples():
    r, k = mat_rank_kernel(MatModM(3, ((0, 0), (0, 0))))
    assert r == 0 and len(k) == 2
    r, k = mat_rank_kernel(MatModM(5, ((1, 0, 0), (0, 1, 0), (0, 0, 1))))
    assert r == 3 and k == []
    r, _ = mat_rank_kernel(MatModM(3, ((2, 0), (2, 2))))
    assert r == 2


def test_rank_kernel_rejects_composite_modulus():
    with pytest.raises(ValueError):
        mat_rank_kernel(MatModM(9, ((1, 0), (0, 1))))


@given(st.integers(1, 8), st.integers(1, 8),
       st.sampled_from([2, 3, 5, 7, 11]), st.integers(0, 10 ** 6))
@settings(max_examples=150, deadline=None)
def test_rank_matches_oracle_and_kernel_annihilates(nr, nc, p, seed):
    rng = random.Random(seed)
    rows = tuple(tuple(rng.randrange(p) for _ in range(nc))
                 for _ in range(nr))
    m = MatModM(p, rows)
    rank, kernel = mat_rank_kernel(m)
    assert rank == _rank_oracle(rows, p)
    assert rank + len(kernel) == nc
    for v in kernel:
        for row in rows:
            assert sum(a * b for a, b in zip(row, v)) % p == 0


def test_snf_contract_examples():
    assert smith_normal_form(MatModM(27, ((3, 0), (0, 9))))[0] == [3, 9]
    assert smith_normal_form(MatModM(9, ((0,),)))[0] == [0]
    assert smith_normal_form(MatModM(9, ((3, 3), (0, 3))))[0] == [3, 3]


@given(st.sampled_from([3, 9, 27, 5, 25]), st.integers(1, 4),
       st.integers(1, 4), st.integers(0, 10 ** 6))
@settings(max_examples=120, deadline=None)
def test_snf_transforms_and_unimodular_invariance(mod, nr, nc, seed):
    rng = random.Random(seed)
    rows = tuple(tuple(rng.randrange(mod) for _ in range(nc))
                 for _ in range(nr))
    m = MatModM(mod, rows)
    d, u, v = smith_normal_form(m)

    def matmul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(len(b))) % mod
                 for j in range(len(b[0]))] for i in range(len(a))]

    prod = matmul(matmul(u, m.to_lists()), v)
    for i in range(nr):
        for j in range(nc):
            want = d[i] if i == j and i < len(d) else 0
            assert prod[i][j] % mod == want % mod
    # invariance under random pre/post unimodular integer matrices
    pre = [[1 if i == j else rng.randint(-2, 2) if i < j else 0
            for j in range(nr)] for i in range(nr)]
    post = [[1 if i == j else rng.randint(-2, 2) if i > j else 0
             for j in range(nc)] for i in range(nc)]
    twisted = matmul(matmul(pre, m.to_lists()), post)
    d2, _, _ = smith_normal_form(MatModM(mod, tuple(map(tuple, twisted))))
    assert d == d2


def test_integer_hnf_canonical_and_solve():
    rows = [[2, 3, 1], [4, 6, 2], [1, 1, 1]]
    h = zmat_hnf(rows)
    assert h == zmat_hnf(h)
    assert zmat_solve([[1, 2], [0, 3]], (2, 13)) == (2, 3)
    assert zmat_solve([[2, 0], [0, 2]], (1, 0)) is None
    assert zmat_kernel([[1, 2], [2, 4]]) == [(-2, 1)]


@given(st.integers(0, 10 ** 6))
@settings(max_examples=80, deadline=None)
def test_hnf_invariant_under_unimodular_row_ops(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 5), rng.randint(1, 6)
    rows = [[rng.randint(-15, 15) for _ in range(n)] for _ in range(m)]
    h1 = zmat_hnf(rows)
    r2 = [list(r) for r in rows]
    for _ in range(8):
        i, j = rng.randrange(m), rng.randrange(m)
        if i != j:
            c = rng.randint(-3, 3)
            r2[i] = [a + c * b for a, b in zip(r2[i], r2[j])]
    rng.shuffle(r2)
    assert h1 == zmat_hnf(r2)


def test_zmat_det_and_snf():
    assert zmat_det([[2, 0], [0, 3]]) == 6
    assert zmat_det([[0, 1], [1, 0]]) == -1
    assert zmat_snf_diagonal([[6, 0, 0], [0, 10, 0], [0, 0, 15]]) == [1, 30, 30]
    assert zmat_snf_diagonal([[2, 4], [6, 8]]) == [2, 4]
