import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclokappa.exactlinalg import (
    GF,
    QQ,
    NotNilpotent,
    SparseMat,
    SparseVec,
    cokernel_dim,
    dense_rank_mod,
    fast_primes,
    in_span,
    is_invertible,
    kernel_basis,
    modular_rank,
    nilpotency_index,
    quotient,
    rank,
    rref,
)


def oracle_rank(rows, p=None):
    """Textbook elimination, independent of the library: Bareiss over the
    integers, or Gauss-Jordan mod p."""
    A = [[x % p if p else x for x in r] for r in rows]
    r, prev = 0, 1
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        if p is None:
            for i in range(r + 1, len(A)):
                A[i] = [(A[r][c] * a - A[i][c] * b) // prev for a, b in zip(A[i], A[r])]
            prev = A[r][c]
        else:
            inv = pow(A[r][c], -1, p)
            for i in range(r + 1, len(A)):
                f = A[i][c] * inv
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        r += 1
    return r


def random_matrix(rng, nrows, ncols, lo=-9, hi=9, rank_cap=None):
    if rank_cap is None:
        return [[rng.randint(lo, hi) for _ in range(ncols)] for _ in range(nrows)]
    # low-rank product with small entries, to exercise the non-full-rank path
    B = [[rng.randint(-3, 3) for _ in range(rank_cap)] for _ in range(nrows)]
    C = [[rng.randint(-3, 3) for _ in range(ncols)] for _ in range(rank_cap)]
    return [[sum(B[i][t] * C[t][j] for t in range(rank_cap)) for j in range(ncols)] for i in range(nrows)]


def test_rank_examples():
    assert rank(SparseMat.from_rows([[1, 2], [2, 4]])) == 1
    assert rank(SparseMat.from_rows([[1, 1], [1, -1]], field=GF(2))) == 1
    assert rank(SparseMat.from_rows([[1, 1], [1, -1]])) == 2


def test_cokernel_examples():
    assert cokernel_dim(SparseMat.from_rows([[0, 0, 0, 0]], 4)) == 4
    assert cokernel_dim(SparseMat.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 0


def test_kernel_examples():
    (v,) = kernel_basis(SparseMat.from_rows([[1, 1]]))
    assert v.entries[0] == -v.entries[1] != 0
    assert kernel_basis(SparseMat.from_rows([[1, 0], [0, 1]])) == []


def test_rank_oracle_equivalence_200():
    rng = random.Random(2024)
    for t in range(200):
        n, m = rng.randint(1, 60), rng.randint(1, 60)
        cap = rng.choice([None, None, rng.randint(1, min(n, m))])
        rows = random_matrix(rng, n, m, rank_cap=cap)
        M = SparseMat.from_rows(rows, m)
        expect = oracle_rank(rows)
        assert rank(M, "fraction_free") == expect
        assert rank(M, "modular") == expect
        if t % 10 == 0:
            assert len(kernel_basis(M)) == m - expect


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 10**6), st.sampled_from([2, 3, 7, 1048583]))
def test_rank_mod_p_matches_oracle(n, m, seed, p):
    rng = random.Random(seed)
    rows = random_matrix(rng, n, m)
    assert rank(SparseMat.from_rows(rows, m, GF(p))) == oracle_rank(rows, p)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 30), st.integers(1, 30), st.integers(0, 10**6))
def test_rank_plus_kernel_is_ncols(n, m, seed):
    rng = random.Random(seed)
    rows = random_matrix(rng, n, m, rank_cap=rng.randint(1, min(n, m)))
    M = SparseMat.from_rows(rows, m)
    ker = kernel_basis(M)
    assert rank(M) + len(ker) == m
    for v in ker:
        assert not M.apply(v.entries)


def test_dense_and_sparse_modular_agree():
    rng = np.random.default_rng(7)
    p = fast_primes(1)[0]
    for t in range(10):
        n, m, r = rng.integers(205, 240), rng.integers(20, 120), rng.integers(1, 100)
        A = (rng.integers(-2, 3, (n, r)) @ rng.integers(-2, 3, (r, m))).astype(np.int64)
        rows = [{j: int(v) for j, v in enumerate(row) if v} for row in A]
        dense = dense_rank_mod(A % p, p)
        sparse = rank(SparseMat.from_rows(rows, m, GF(p)))
        assert dense == sparse == modular_rank(rows, m, p)


def test_fast_primes_deterministic():
    a = fast_primes(3)
    assert a == fast_primes(3)
    assert all(x > 1 << 20 for x in a)
    b = fast_primes(2, modulus=12)
    assert all((x - 1) % 12 == 0 for x in b)


def test_is_invertible():
    assert is_invertible(SparseMat.from_rows([[2, 1], [1, 1]]))
    assert not is_invertible(SparseMat.from_rows([[2, 4], [1, 2]]))
    assert not is_invertible(SparseMat.from_rows([[1, 0, 0], [0, 1, 0]]))


def test_sparsevec_invariants():
    v = SparseVec({3: 1, 1: 0, 0: 2})
    assert v.items() == [(0, 2), (3, 1)]
    w = SparseVec({0: Fraction(4, 2)})
    assert w.items() == [(0, 2)] and type(w.items()[0][1]) is int
    assert SparseVec({0: 5}, GF(5)).items() == []


def test_rref_pivot_rules():
    rows = [{0: 1, 1: 1}, {1: 1, 2: 1}]
    assert sorted(rref(rows, QQ, "min")) == [0, 1]
    assert sorted(rref(rows, QQ, "max")) == [1, 2]


def test_quotient_examples():
    q = quotient(2, [{0: 1, 1: -1}])
    assert q.basis == [0] and q.rewrite[1].items() == [(0, 1)]
    q = quotient(3, [{2: 1}, {1: 1, 2: 1}])
    assert q.basis == [0]
    assert q.rewrite[1].items() == [] and q.rewrite[2].items() == []


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 15), st.integers(0, 10), st.integers(0, 10**6))
def test_quotient_rewrite_idempotent(dim, nrel, seed):
    rng = random.Random(seed)
    rels = [{rng.randrange(dim): rng.randint(-3, 3) for _ in range(3)} for _ in range(nrel)]
    rels = [{k: v for k, v in r.items() if v} for r in rels]
    q = quotient(dim, rels)
    assert q.dim == dim - oracle_rank([[r.get(j, 0) for j in range(dim)] for r in rels] or [[0] * dim])
    for b in q.basis:
        assert q.rewrite[b].items() == [(b, 1)]
    for i in range(dim):
        v = q.rewrite[i]
        assert q.reduce(v.entries) == v
    for r in rels:
        assert not q.reduce(r).entries


def test_in_span():
    assert in_span([{0: 1, 1: 1}], {0: 2, 1: 2})
    assert not in_span([{0: 1, 1: 1}], {0: 1})
    assert in_span([{0: 1, 1: 1}], {0: 1, 1: 1}, GF(3))


def test_nilpotency_examples():
    assert nilpotency_index(lambda i: {}, 5) == 1
    jordan = lambda i: {i - 1: 1} if i else {}
    assert nilpotency_index(jordan, 3) == 3
    assert nilpotency_index(lambda i: {i: 1}, 2) is NotNilpotent
    assert not NotNilpotent
    assert nilpotency_index(jordan, 4, GF(2)) == 4


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10**6), st.sampled_from([None, 2, 3]))
def test_nilpotency_random_strictly_triangular(dim, seed, p):
    rng = random.Random(seed)
    cols = [{j: rng.randint(-3, 3) for j in range(i) if rng.random() < 0.6} for i in range(dim)]
    cols = [{k: v for k, v in c.items() if v} for c in cols]
    field = QQ if p is None else GF(p)
    n = nilpotency_index(lambda i: cols[i], dim, field)
    assert n is not NotNilpotent and 1 <= n <= dim


def test_determinism():
    rng = random.Random(5)
    rows = random_matrix(rng, 40, 40, rank_cap=25)
    M = SparseMat.from_rows(rows, 40)
    outs = {tuple(tuple(v.items()) for v in kernel_basis(M)) for _ in range(3)}
    assert len(outs) == 1
