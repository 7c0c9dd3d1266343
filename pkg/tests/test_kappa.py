from itertools import combinations
from math import gcd

import numpy as np
import pytest

from cyclokappa.cyclotomic import euler_phi, is_prime, make_level
from cyclokappa.depthgraded import BiSeq, D_d_iter, YTensorIndexer, y_reduce
from cyclokappa.exactlinalg import SparseMat, add_into, rank
from cyclokappa.kappa import (
    beta_apply,
    conjecture_report,
    dual_kernel_check,
    dual_space,
    kappa,
    kappa_prime_formula,
    load_table1,
    lower_bound_witnesses,
    n_q,
    weight2_dimension,
)

PRIMES = [p for p in range(2, 60) if is_prime(p)]
PAIRS = [(p, q) for p, q in combinations(PRIMES, 2) if p * q <= 120]


def brute_index(p, q):
    H = {pow(q, k, p) * s % p for k in range(p) for s in (1, -1)}
    return (p - 1) // len(H)


@pytest.mark.parametrize("N,k", [(25, 5), (49, 35), (6, 0), (1, 0), (4, 0)])
def test_kappa_examples(N, k):
    r = kappa(N)
    assert r.kappa == k
    assert r.kappa == r.codomain_dim - r.rank
    assert r.domain_dim == N * N
    assert r.codomain_dim == r.dimY1**2


def test_kappa_result_fields():
    r = kappa(12)
    lv = make_level(12)
    assert r.dimY1 == lv.phi // 2 + lv.nu_count - 1
    assert r.method == "rational"
    assert kappa(45).method in ("modular-verified", "modular-max", "rational")
    with pytest.raises(ValueError):
        kappa(0)
    with pytest.raises(ValueError):
        kappa(10, method="bogus")


def test_prime_formula_examples():
    assert [kappa_prime_formula(p) for p in (5, 7, 13)] == [1, 2, 7]
    for bad in (2, 3, 4, 9, 25):
        with pytest.raises(ValueError):
            kappa_prime_formula(bad)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19])
def test_kappa_primes(p):
    assert kappa(p).kappa == kappa_prime_formula(p)


def test_table_small_composites():
    table = load_table1()
    for N in sorted(table):
        if N <= 120 and not is_prime(N):
            assert kappa(N).kappa == table[N], N


@pytest.mark.parametrize("N", range(1, 41))
def test_exact_and_modular_agree(N):
    assert kappa(N, "exact").kappa == kappa(N, "modular").kappa


def _sigma(lv, a, row):
    """Image of a Y_1 (x) Y_1 vector under zeta -> zeta^a."""
    out = {}
    for ((b1, _), (b2, _)), c in row.items():
        y1, y2 = y_reduce(lv, a * b1 % lv.N, 0).entries, y_reduce(lv, a * b2 % lv.N, 0).entries
        for i, c1 in y1.items():
            for j, c2 in y2.items():
                add_into(out, {((i, 0), (j, 0)): 1}, c * c1 * c2)
    return out


@pytest.mark.parametrize("N", range(3, 41))
def test_kappa_invariant_under_change_of_root(N):
    lv = make_level(N)
    cod = YTensorIndexer(lv, 2, 2)
    units = [a for a in range(2, N) if gcd(a, N) == 1][:1] + [N - 1]
    k = kappa(N).kappa
    for a in units:
        rows = []
        for e1 in range(N):
            for e2 in range(N):
                img = D_d_iter(lv, {BiSeq((e1, e2), (0, 0)): 1})
                moved = _sigma(lv, a, img)
                # equivariance: sigma_a D = D sigma_a
                assert moved == D_d_iter(lv, {BiSeq((a * e1 % N, a * e2 % N), (0, 0)): 1})
                if moved:
                    rows.append({cod.index[s]: c for s, c in moved.items()})
        r = rank(SparseMat.from_rows(rows, len(cod))) if rows else 0
        assert len(cod) - r == k


def test_n_q_examples():
    assert n_q(17, 2) == 2
    assert n_q(13, 3) == 2
    assert n_q(17, 3) == 1
    for bad in [(5, 5), (4, 3), (7, 9)]:
        with pytest.raises(ValueError):
            n_q(*bad)


@pytest.mark.parametrize("p", [p for p in PRIMES if p >= 5])
def test_n_q_against_brute_index(p):
    for q in (2, 3):
        assert n_q(p, q) == brute_index(p, q)


def test_lambda_dim_matches_Y1():
    for p, q in [(17, 2), (5, 7), (11, 5)]:
        ds = dual_space(p, q)
        assert ds.dim == kappa(p * q).dimY1


def test_lambda_literal_reading_is_wrong_size():
    # summing i = 0..q in the second family over-constrains Lambda
    assert dual_space(17, 2, literal=True).dim == 8 != dual_space(17, 2).dim == 9
    assert dual_space(5, 7, literal=True).dim == 9 != dual_space(5, 7).dim == 13


def test_beta_apply_on_basis_tensor():
    N = 6
    C = np.zeros((N, N), dtype=np.int64)
    C[1, 2] = 1
    out = beta_apply(C)
    expect = np.zeros((N, N), dtype=np.int64)
    expect[3, 2] += 1
    expect[2, 3] -= 1
    expect[2, 1] += 1
    assert (out == expect).all()


@pytest.mark.parametrize("p,q,dim", [(2, 17, 1), (3, 13, 1), (5, 7, 0)])
def test_dual_kernel_examples(p, q, dim):
    r = dual_kernel_check(p, q)
    assert r.kernel_dim == dim and r.agrees


def test_dual_kernel_symmetric():
    a, b = dual_kernel_check(2, 17), dual_kernel_check(17, 2)
    assert (a.kernel_dim, a.dim_lambda) == (b.kernel_dim, b.dim_lambda)


@pytest.mark.parametrize(
    "p,q", [pytest.param(p, q, marks=pytest.mark.slow) if p * q > 60 else (p, q) for p, q in PAIRS]
)
def test_dual_kernel_all_small_pairs(p, q):
    assert dual_kernel_check(p, q).agrees


@pytest.mark.parametrize("p,q,count", [(17, 2, 1), (13, 3, 1), (17, 3, 0)])
def test_witness_examples(p, q, count):
    w = lower_bound_witnesses(p, q)
    assert len(w) == count and w.ok


@pytest.mark.parametrize("p,q", [pq for a, b in PAIRS for pq in ((a, b), (b, a))])
def test_witness_bound(p, q):
    w = lower_bound_witnesses(p, q)
    assert w.ok
    assert len(w) == n_q(p, q) - 1 <= kappa(p * q).kappa


def test_conjecture_examples():
    v = conjecture_report(49)
    assert (v.shape, v.predicted, v.computed, v.match) == ("p^2", 35, 35, True)
    v = conjecture_report(343, computed=1274)
    assert (v.shape, v.predicted, v.match) == ("p^3", 245, False)
    v = conjecture_report(34)
    assert (v.shape, v.predicted, v.computed, v.match) == ("qp", 1, 1, True)
    v = conjecture_report(72)
    assert (v.shape, v.predicted, v.match) == ("2^a3^b", 0, True)
    v = conjecture_report(35)
    assert v.shape is None and v.match is None and v.note


def test_weight2_dimension():
    assert weight2_dimension(6) == 8
    assert weight2_dimension(25) == 116
    assert weight2_dimension(5) == 8
    assert weight2_dimension(25, kappa_value=5) == 116
    for bad in (1, 2):
        with pytest.raises(ValueError):
            weight2_dimension(bad)


def test_table_resource():
    t = load_table1()
    assert t[25] == 5 and t[49] == 35 and t[343] == 1274 and t[1] == 0
    assert all(not is_prime(N) for N in t)
    assert len(t) == 335
    assert euler_phi(1) == 1
