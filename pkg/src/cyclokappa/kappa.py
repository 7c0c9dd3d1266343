r"""
The weight-two invariant ``kappa(N)``.

``kappa(N)`` is the dimension of the cokernel of

    D_2^iter : (X (x) X)_2 -> Y_1 (x) Y_1,
    [[a, b]] |-> <a-b> (x) <b> - <b-a> (x) <a> + <b> (x) <a>.

Two routes compute it.

``exact``
    Assemble the image of all ``N^2`` generators over ``Q`` in the
    canonical basis of ``Y_1 (x) Y_1`` and take the fraction-free rank.

``modular``
    The unit group ``G = (Z/N)^x`` acts on everything by multiplying
    exponents, and ``D_2^iter`` is equivariant for the diagonal action.
    Over ``F_l`` with ``exp(G) | l - 1`` every character of ``G`` takes
    values in ``F_l``, so ``Y_1 = (+)_psi Y_1[psi]`` and the image splits
    into blocks indexed by characters ``chi`` with
    ``(Y_1 (x) Y_1)[chi] = (+)_psi Y_1[psi] (x) Y_1[chi/psi]``.  Inside
    ``X_1`` the ``psi``-part has one basis vector ``f_d = P_psi e_d`` for
    every divisor ``d`` of ``N`` on whose stabiliser ``psi`` is trivial,
    and ``P_psi e_x = psi(g) f_d`` whenever ``x = g d``.  Only orbit
    representatives of relations and of generators are needed, so each
    block is a small dense matrix.  The rank mod ``l`` never exceeds the
    rank over ``Q``; the result is accepted when two primes agree.

EXAMPLES::

    >>> kappa(25).kappa
    5
    >>> kappa(25, method="exact").kappa
    5
"""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from functools import lru_cache
from math import gcd
from typing import Optional

import numpy as np

from .cyclotomic import divisors, factorize, is_prime, make_level, unit_group
from .exactlinalg import (
    GF,
    QQ,
    SparseMat,
    dense_rank_mod,
    fast_primes,
    kernel_basis,
    rank,
    rref,
)


@dataclass
class KappaResult:
    N: int
    kappa: int
    dimY1: int
    domain_dim: int
    codomain_dim: int
    rank: int
    elapsed_ms: float
    method: str

    def as_dict(self) -> dict:
        return asdict(self)


# --- exact route ---------------------------------------------------------------------


def d2_image_rows(N: int) -> tuple[list[dict], int]:
    """Deduplicated image rows of ``D_2^iter`` in weight 2, with the codomain size."""
    from .depthgraded import BiSeq, YTensorIndexer, _d_iter_symbol

    lv = make_level(N)
    cod = YTensorIndexer(lv, 2, 2)
    rows = set()
    for a in range(N):
        for b in range(N):
            img = _d_iter_symbol(N, BiSeq((a, b), (0, 0)))
            if img:
                rows.add(tuple(sorted((cod.index[s], c) for s, c in img)))
    return [dict(r) for r in sorted(rows)], len(cod)


def kappa_exact(N: int, rank_method: str = "fraction_free") -> KappaResult:
    from .depthgraded import y_space

    t0 = time.perf_counter()
    dim = y_space(N).dim(1)
    rows, ncols = d2_image_rows(N)
    r = rank(SparseMat.from_rows(rows, ncols), rank_method) if rows else 0
    ms = (time.perf_counter() - t0) * 1000
    return KappaResult(N, ncols - r, dim, N * N, ncols, r, round(ms, 3), "rational")


# --- character route -------------------------------------------------------------------


class CharacterTable:
    """Characters of ``(Z/N)^x`` with values in ``F_ell``.

    ``phase[psi, u]`` is the exponent ``t`` with ``psi(u) = omega^t`` for a
    fixed primitive ``E``-th root of unity ``omega``; rows for non-units
    are unused.
    """

    def __init__(self, N: int, ell: int):
        U = unit_group(N)
        self.N, self.ell, self.U = N, ell, U
        E = U.exponent
        if (ell - 1) % E:
            raise ValueError(f"{ell} is not 1 mod exp(G) = {E}")
        self.E = E
        self.omega = _primitive_root_of_unity(E, ell)
        self.pow_omega = np.array([pow(self.omega, t, ell) for t in range(E)], dtype=np.int64)
        ords = U.orders
        r = len(ords)
        if r:
            grids = np.meshgrid(*[np.arange(o) for o in ords], indexing="ij")
            self.chars = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
        else:
            self.chars = np.zeros((1, 0), dtype=np.int64)
        self.radix = np.array([E // o for o in ords], dtype=np.int64)
        logs = np.zeros((N, r), dtype=np.int64)
        for u, v in U.log.items():
            logs[u] = v
        self.phase = (self.chars * self.radix) @ logs.T % E if r else np.zeros((1, N), dtype=np.int64)
        self.index = {tuple(k): i for i, k in enumerate(self.chars.tolist())}
        minus_one = (N - 1) % N
        self.even = self.phase[:, minus_one] == 0 if N > 2 else np.ones(len(self.chars), bool)
        self.ords = np.array(ords, dtype=np.int64)

    def __len__(self):
        return len(self.chars)

    def quotient(self, chi: int, psi: int) -> int:
        k = (self.chars[chi] - self.chars[psi]) % self.ords if len(self.ords) else ()
        return self.index[tuple(int(x) for x in k)]


def _primitive_root_of_unity(E: int, ell: int) -> int:
    primes = [p for p, _ in factorize(ell - 1)]
    for g in range(2, ell):
        if all(pow(g, (ell - 1) // p, ell) != 1 for p in primes):
            return pow(g, (ell - 1) // E, ell)
    raise ValueError("no primitive root")


def _unit_cofactor(x: int, d: int, N: int) -> int:
    """A unit ``g`` mod ``N`` with ``g * d = x`` mod ``N`` (``d = gcd(x, N)``)."""
    if x % N == 0:
        return 1 % N
    m = N // d
    t = (x // d) % m
    while gcd(t, N) != 1:
        t += m
    return t % N


@lru_cache(maxsize=None)
def orbit_data(N: int):
    """Divisor index and unit cofactor of every exponent, plus stabilisers."""
    divs = divisors(N)
    didx = {d: i for i, d in enumerate(divs)}
    dx = np.zeros(N, dtype=np.int64)
    gx = np.zeros(N, dtype=np.int64)
    for x in range(N):
        d = gcd(x, N) if x else N
        dx[x] = didx[d]
        gx[x] = _unit_cofactor(x, d, N)
    units = unit_group(N).elements
    stabs = [[u for u in units if (u - 1) % (N // d) == 0] for d in divs]
    return divs, dx, gx, stabs


@lru_cache(maxsize=None)
def relation_reps(N: int) -> list[dict]:
    """Weight-one relations whose ``G``-orbits span all relations."""
    divs = divisors(N)
    reps_a = [d % N for d in divs]
    rels = [{0: 1}]
    for a in reps_a:
        r: dict = {}
        r[a] = r.get(a, 0) + 1
        r[(-a) % N] = r.get((-a) % N, 0) - 1
        r = {k: v for k, v in r.items() if v}
        if r:
            rels.append(r)
    for M in divs:
        step = N // M
        for a in reps_a:
            aM = a * M % N
            if aM == 0:
                continue
            r = {aM: 1}
            for j in range(M):
                b = (a + j * step) % N
                r[b] = r.get(b, 0) - 1
            r = {k: v for k, v in r.items() if v}
            if r:
                rels.append(r)
    return rels


@lru_cache(maxsize=None)
def generator_reps(N: int) -> np.ndarray:
    """Orbit representatives ``(a, b)`` of pairs under the diagonal unit action."""
    divs, _, _, stabs = orbit_data(N)
    out = []
    for d, stab in zip(divs, stabs):
        a = d % N
        seen = np.zeros(N, dtype=bool)
        for b in range(N):
            if seen[b]:
                continue
            out.append((a, b))
            for s in stab:
                seen[s * b % N] = True
    return np.array(out, dtype=np.int64).reshape(-1, 2)


def isotypic_rewrites(N: int, table: CharacterTable) -> list[Optional[np.ndarray]]:
    """For each character ``psi`` the matrix ``(#divisors, dim Y_1[psi])`` whose
    row ``i`` is the class of ``f_{d_i}`` (zero rows where ``f_d`` vanishes)."""
    divs, dx, gx, stabs = orbit_data(N)
    ell = table.ell
    F = GF(ell)
    nd = len(divs)
    rels = relation_reps(N)
    out: list = []
    for psi in range(len(table)):
        ph = table.phase[psi]
        adm = [all(ph[s] == 0 for s in stab) for stab in stabs]
        proj = []
        for r in rels:
            v: dict = {}
            for x, c in r.items():
                i = int(dx[x])
                if not adm[i]:
                    continue
                val = c * int(table.pow_omega[ph[gx[x]]]) % ell
                nv = (v.get(i, 0) + val) % ell
                if nv:
                    v[i] = nv
                else:
                    v.pop(i, None)
            if v:
                proj.append(v)
        piv = rref(proj, F, pivot="max")
        free = [i for i in range(nd) if adm[i] and i not in piv]
        if not free:
            out.append(None)
            continue
        pos = {i: j for j, i in enumerate(free)}
        RW = np.zeros((nd, len(free)), dtype=np.int64)
        for i in range(nd):
            if not adm[i]:
                continue
            if i in pos:
                RW[i, pos[i]] = 1
            else:
                for k, c in piv[i].items():
                    if k != i:
                        RW[i, pos[k]] = (-c) % ell
        out.append(RW)
    return out


def _chi_block(chi: int, table: CharacterTable, RW: list, terms, ell: int) -> Optional[np.ndarray]:
    """Image rows of ``D_2^iter`` projected to the ``chi``-block."""
    X, Y, C, dX, dY, gX, gY = terms
    blocks = []
    pw = table.pow_omega
    E = table.E
    for psi in np.flatnonzero(table.even):
        A = RW[psi]
        if A is None:
            continue
        psi2 = table.quotient(chi, int(psi))
        B = RW[psi2]
        if B is None:
            continue
        ph1 = table.phase[psi]
        ph2 = table.phase[psi2]
        w = A.shape[1] * B.shape[1]
        blk = np.zeros((X.shape[0], w), dtype=np.int64)
        for t in range(X.shape[1]):
            coef = pw[(ph1[gX[:, t]] + ph2[gY[:, t]]) % E] * C[:, t] % ell
            left = A[dX[:, t]] * coef[:, None] % ell
            right = B[dY[:, t]]
            kr = np.einsum("ri,rj->rij", left, right).reshape(X.shape[0], w) % ell
            blk = (blk + kr) % ell
        blocks.append(blk)
    if not blocks:
        return None
    return np.concatenate(blocks, axis=1)


def _generator_terms(N: int):
    _, dx, gx, _ = orbit_data(N)
    reps = generator_reps(N)
    a, b = reps[:, 0], reps[:, 1]
    X = np.stack([(a - b) % N, (b - a) % N, b], axis=1)
    Y = np.stack([b, a, a], axis=1)
    C = np.tile(np.array([1, -1, 1], dtype=np.int64), (len(reps), 1))
    return X, Y, C, dx[X], dx[Y], gx[X], gx[Y]


def kappa_rank_mod(N: int, ell: int) -> tuple[int, int]:
    """``(dim Y_1, rank of D_2^iter)`` computed mod ``ell`` blockwise."""
    table = CharacterTable(N, ell)
    RW = isotypic_rewrites(N, table)
    dim = sum(A.shape[1] for A in RW if A is not None)
    terms = _generator_terms(N)
    total = 0
    for chi in np.flatnonzero(table.even):
        M = _chi_block(int(chi), table, RW, terms, ell)
        if M is None or M.size == 0:
            continue
        # drop zero rows; rank is insensitive to row order
        M = M[np.any(M != 0, axis=1)]
        if M.shape[0] > M.shape[1]:
            M = M.T
        total += dense_rank_mod(M, ell)
    return dim, total


def kappa_modular(N: int) -> KappaResult:
    t0 = time.perf_counter()
    E = unit_group(N).exponent
    primes = fast_primes(2, avoid=N, modulus=E)
    results = [kappa_rank_mod(N, ell) for ell in primes]
    dims = {d for d, _ in results}
    if len(dims) != 1:
        raise ArithmeticError(f"inconsistent dim Y_1 across primes for N={N}")
    dim = dims.pop()
    ranks = [r for _, r in results]
    method = "modular-verified"
    if len(set(ranks)) != 1:
        # rank mod l is a lower bound for the rank over Q
        ranks.append(kappa_rank_mod(N, fast_primes(3, avoid=N, modulus=E)[2])[1])
        method = "modular-max"
    r = max(ranks)
    ms = (time.perf_counter() - t0) * 1000
    return KappaResult(N, dim * dim - r, dim, N * N, dim * dim, r, round(ms, 3), method)


EXACT_LIMIT = 40


def kappa(N: int, method: str = "auto") -> KappaResult:
    """``kappa(N)`` by the exact (``"exact"``), character (``"modular"``) or
    size-dependent (``"auto"``) route."""
    if N < 1:
        raise ValueError("N must be positive")
    if method == "exact" or (method == "auto" and N <= EXACT_LIMIT):
        return kappa_exact(N)
    if method in ("modular", "auto"):
        return kappa_modular(N)
    raise ValueError(f"unknown method {method!r}")


def kappa_prime_formula(p: int) -> int:
    """``(p^2 - 1) / 24`` for a prime ``p >= 5``.

    >>> [kappa_prime_formula(p) for p in (5, 7, 13)]
    [1, 2, 7]
    """
    if p < 5 or not is_prime(p):
        raise ValueError(f"{p} is not a prime >= 5")
    return (p * p - 1) // 24


def weight2_dimension(N: int, kappa_value: Optional[int] = None) -> int:
    """``(phi/2 + nu - 1)^2 + phi + nu - kappa(N)`` for ``N >= 3``.

    >>> weight2_dimension(25, 5), weight2_dimension(6, 0)
    (116, 8)
    """
    if N < 3:
        raise ValueError("the weight-two dimension formula needs N >= 3")
    lv = make_level(N)
    k = kappa(N).kappa if kappa_value is None else kappa_value
    a = lv.phi // 2 + lv.nu_count - 1
    return a * a + lv.phi + lv.nu_count - k


# --- the dual picture for N = p q --------------------------------------------------


def _check_pq(p: int, q: int):
    if p == q or not is_prime(p) or not is_prime(q):
        raise ValueError(f"need two distinct primes, got {p}, {q}")


def subgroup_generated(gens, p: int) -> set:
    """Subgroup of ``(Z/p)^x`` generated by ``gens``, by closure."""
    H = {1}
    frontier = [1]
    gens = [g % p for g in gens]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = h * g % p
                if x not in H:
                    H.add(x)
                    nxt.append(x)
        frontier = nxt
    return H


def n_q(p: int, q: int) -> int:
    """Index of ``<q, -1>`` in ``(Z/p)^x``.

    >>> n_q(17, 2), n_q(13, 3), n_q(17, 3)
    (2, 2, 1)
    """
    _check_pq(p, q)
    return (p - 1) // len(subgroup_generated([q, -1], p))


def lambda_conditions(p: int, q: int, literal: bool = False) -> list[dict]:
    """Linear conditions cutting out ``Lambda_N`` in ``Q[Z/N]``, ``N = pq``.

    Each condition is a dict ``x -> coefficient`` that must pair to zero.
    The second sum family runs over ``i < p`` (``p`` terms, one for each
    element of ``mu_p``); ``literal=True`` uses ``i = 0..q`` instead, which
    is how the family reads when transcribed verbatim.
    """
    _check_pq(p, q)
    N = p * q
    conds = [{0: 1}]
    for i in range(1, N):
        if i < N - i:
            conds.append({i: 1, N - i: -1})
    for m in range(1, p):
        c: dict = {m * q % N: 1}
        for i in range(q):
            x = (m + i * p) % N
            c[x] = c.get(x, 0) - 1
        conds.append({k: v for k, v in c.items() if v})
    top = q + 1 if literal else p
    for n in range(1, q):
        c = {n * p % N: 1}
        for i in range(top):
            x = (n + i * q) % N
            c[x] = c.get(x, 0) - 1
        conds.append({k: v for k, v in c.items() if v})
    return [c for c in conds if c]


@dataclass
class DualSpace:
    p: int
    q: int
    N: int
    conditions: list
    lambda_basis: list  # list of dicts x -> coefficient

    @property
    def dim(self) -> int:
        return len(self.lambda_basis)


def dual_space(p: int, q: int, literal: bool = False) -> DualSpace:
    conds = lambda_conditions(p, q, literal)
    N = p * q
    basis = kernel_basis(SparseMat.from_rows(conds, N))
    return DualSpace(p, q, N, conds, [dict(v.entries) for v in basis])


def beta_apply(C: np.ndarray) -> np.ndarray:
    """``beta`` on a tensor given as an ``N x N`` coefficient array.

    ``beta([x] (x) [y]) = [x+y] (x) [y] - [y] (x) [x+y] + [y] (x) [x]``.
    """
    N = C.shape[0]
    out = np.zeros_like(C)
    x, y = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    np.add.at(out, ((x + y) % N, y), C)
    np.add.at(out, (y, (x + y) % N), -C)
    np.add.at(out, (y, x), C)
    return out


def beta_matrix(ds: DualSpace) -> SparseMat:
    """Rows are ``beta(c (x) c')`` for basis pairs of ``Lambda_N``, flattened."""
    N = ds.N
    vecs = []
    for c in ds.lambda_basis:
        v = np.zeros(N, dtype=object)
        for k, a in c.items():
            v[k] = a
        vecs.append(v)
    rows = []
    for v1 in vecs:
        for v2 in vecs:
            B = beta_apply(np.outer(v1, v2))
            flat = B.ravel()
            nz = np.flatnonzero(flat != 0)
            rows.append({int(i): flat[i] for i in nz})
    return SparseMat.from_rows(rows, N * N)


@dataclass
class DualReport:
    p: int
    q: int
    dim_lambda: int
    dim_Y1: int
    kernel_dim: int
    kappa: int

    @property
    def agrees(self) -> bool:
        return self.kernel_dim == self.kappa and self.dim_lambda == self.dim_Y1


def dual_kernel_check(p: int, q: int) -> DualReport:
    """Kernel of ``beta`` on ``Lambda_N (x) Lambda_N`` against ``kappa(pq)``."""
    ds = dual_space(p, q)
    m = beta_matrix(ds)
    ker = m.nrows - rank(m, "auto")
    k = kappa(p * q)
    return DualReport(p, q, ds.dim, k.dimY1, ker, k.kappa)


def cosets(p: int, q: int) -> list[list[int]]:
    """Cosets of ``H = <q, -1>`` in ``(Z/p)^x``, each sorted, ordered by minimum."""
    H = subgroup_generated([q, -1], p)
    seen: set = set()
    out = []
    for x in range(1, p):
        if x in seen:
            continue
        c = sorted(x * h % p for h in H)
        seen.update(c)
        out.append(c)
    return out


def f_vector(p: int, q: int, x: int) -> np.ndarray:
    """``f_N(x) = sum_y [qx] (x) [qy] - [qy] (x) [qx]`` as an ``N x N`` array."""
    N = p * q
    F = np.zeros((N, N), dtype=np.int64)
    for y in range(1, p):
        F[q * x % N, q * y % N] += 1
        F[q * y % N, q * x % N] -= 1
    return F


def g_vector(p: int, q: int, gamma) -> np.ndarray:
    return sum((f_vector(p, q, x) for x in gamma), np.zeros((p * q, p * q), dtype=np.int64))


@dataclass
class Witnesses:
    p: int
    q: int
    gamma0: list
    vectors: list  # N x N integer arrays g_N(Gamma), Gamma != Gamma_0
    in_lambda: bool
    in_kernel: bool
    projection_ok: bool
    independent: bool

    def __len__(self):
        return len(self.vectors)

    @property
    def ok(self) -> bool:
        return self.in_lambda and self.in_kernel and self.projection_ok and self.independent


def lower_bound_witnesses(p: int, q: int) -> Witnesses:
    """The vectors ``g_N(Gamma)`` for cosets ``Gamma != Gamma_0`` with all checks."""
    _check_pq(p, q)
    N = p * q
    cs = cosets(p, q)
    gamma0, others = cs[0], cs[1:]
    conds = lambda_conditions(p, q)
    A = np.zeros((len(conds), N), dtype=np.int64)
    for i, c in enumerate(conds):
        for k, v in c.items():
            A[i, k] = v
    H = len(subgroup_generated([q, -1], p))
    vecs, in_lam, in_ker, proj_ok = [], True, True, True
    for gamma in others:
        G = g_vector(p, q, gamma)
        vecs.append(G)
        in_lam &= not np.any(A @ G) and not np.any(G @ A.T)
        in_ker &= not np.any(beta_apply(G))
        pr = G[:, [q * y % N for y in gamma0]].sum(axis=1)
        expect = np.zeros(N, dtype=np.int64)
        for x in gamma:
            expect[q * x % N] += H
        proj_ok &= bool(np.array_equal(pr, expect))
    rows = [{int(i): int(v) for i, v in enumerate(G.ravel()) if v} for G in vecs]
    indep = rank(SparseMat.from_rows(rows, N * N)) == len(vecs) if vecs else True
    return Witnesses(p, q, gamma0, vecs, bool(in_lam), bool(in_ker), proj_ok, indep)


# --- conjectures --------------------------------------------------------------------


@dataclass
class ConjectureVerdict:
    N: int
    shape: Optional[str]
    predicted: Optional[int]
    computed: int
    note: str = ""

    @property
    def match(self) -> Optional[bool]:
        return None if self.predicted is None else self.predicted == self.computed


def _shape(N: int):
    fac = factorize(N) if N > 1 else ()
    primes = {p for p, _ in fac}
    if primes <= {2, 3}:
        return "2^a3^b", None
    if len(fac) == 1:
        p, e = fac[0]
        if p >= 5 and e == 2:
            return "p^2", p
        if p >= 5 and e == 3:
            return "p^3", p
    if len(fac) == 2 and all(e == 1 for _, e in fac):
        (a, _), (b, _) = fac
        if a in (2, 3) and b >= 5:
            return "qp", (b, a)
    return None, None


def conjecture_report(N: int, computed: Optional[int] = None) -> ConjectureVerdict:
    """Predicted vs computed ``kappa(N)`` for the conjecture matching ``N``'s shape.

    >>> v = conjecture_report(343, computed=1274)
    >>> v.shape, v.predicted, v.match
    ('p^3', 245, False)
    """
    k = kappa(N).kappa if computed is None else computed
    shape, par = _shape(N)
    if shape == "2^a3^b":
        return ConjectureVerdict(N, shape, 0, k)
    if shape == "p^2":
        p = par
        return ConjectureVerdict(N, shape, p * (p - 1) * (p - 2) * (p - 3) // 24, k)
    if shape == "p^3":
        p = par
        return ConjectureVerdict(N, shape, p * p * (p - 1) * (p - 2) * (p - 3) // 24, k)
    if shape == "qp":
        p, q = par
        return ConjectureVerdict(N, shape, n_q(p, q) - 1, k)
    return ConjectureVerdict(N, None, None, k, "no conjecture covers this N")


# --- embedded table ------------------------------------------------------------------

TABLE1_RESOURCE = "table1_v1.csv"


@lru_cache(maxsize=None)
def load_table1() -> dict[int, int]:
    """The published ``kappa(N)`` table for non-prime ``N`` as ``{N: kappa}``."""
    import csv
    from importlib.resources import files

    text = files("cyclokappa").joinpath("data", TABLE1_RESOURCE).read_text()
    return {int(r["N"]): int(r["kappa"]) for r in csv.DictReader(text.splitlines())}
